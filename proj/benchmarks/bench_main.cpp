#include <benchmark/benchmark.h>

#include "privfn/characterize.hpp"
#include "privfn/eavesdrop.hpp"
#include "privfn/privacy.hpp"
#include "privfn/simharness.hpp"

#include <random>

using namespace privfn;

namespace {

FunctionTriple random_triple(int xs, int ys, int values, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, values - 1);
    std::vector<std::string> xsym, ysym;
    for (int i = 0; i < xs; ++i) xsym.push_back("x" + std::to_string(i));
    for (int j = 0; j < ys; ++j) ysym.push_back("y" + std::to_string(j));
    auto table = [&]() {
        return ValueTable::from_fn(xs, ys, [&](int, int) { return std::to_string(pick(rng)); });
    };
    return FunctionTriple(Alphabet(xsym), Alphabet(ysym), table(), table(), table());
}

void BM_Decide(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto triple = random_triple(n, n, 3, 42);
    for (auto _ : state) {
        auto decision = decide(triple);
        benchmark::DoNotOptimize(decision.computable());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Decide)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_EquivalencePartition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto triple = random_triple(n, n, 3, 7);
    const SubRect full = SubRect::full(n, n);
    for (auto _ : state) {
        auto part = equivalence_partition(triple, full, Axis::Row);
        benchmark::DoNotOptimize(part.blocks.size());
    }
}
BENCHMARK(BM_EquivalencePartition)->RangeMultiplier(2)->Range(8, 64);

// random f with constant g, h: always computable, fully decomposed tree
FunctionTriple computable_triple(int xs, int ys, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 2);
    std::vector<std::string> xsym, ysym;
    for (int i = 0; i < xs; ++i) xsym.push_back("x" + std::to_string(i));
    for (int j = 0; j < ys; ++j) ysym.push_back("y" + std::to_string(j));
    return FunctionTriple(
        Alphabet(xsym), Alphabet(ysym),
        ValueTable::from_fn(xs, ys, [&](int, int) { return std::to_string(pick(rng)); }),
        ValueTable::filled(xs, ys, "c"), ValueTable::filled(xs, ys, "c"));
}

void BM_TranscriptPmf(benchmark::State& state) {
    const auto triple = computable_triple(16, 16, 11);
    const auto tree = decide(triple).protocol();
    for (auto _ : state) {
        auto pmf = transcript_pmf(tree, 5, 9);
        benchmark::DoNotOptimize(pmf.size());
    }
}
BENCHMARK(BM_TranscriptPmf);

void BM_Claim1Audit(benchmark::State& state) {
    const auto triple = computable_triple(8, 8, 3);
    const auto tree = decide(triple).protocol();
    const auto dist = JointDistribution::uniform(triple.x_alphabet, triple.y_alphabet);
    for (auto _ : state) {
        auto report = claim1_audit(tree, triple, dist);
        benchmark::DoNotOptimize(report.both_zero());
    }
}
BENCHMARK(BM_Claim1Audit);

void BM_BruteForceFrontier(benchmark::State& state) {
    const auto instance = example1_instance(1).first;
    for (auto _ : state) {
        auto report = brute_force_noninteractive(instance, 1, 2, 4);
        benchmark::DoNotOptimize(report.frontier.size());
    }
}
BENCHMARK(BM_BruteForceFrontier);

void BM_RunTrials(benchmark::State& state) {
    const auto [instance, tree] = example1_instance(1);
    const long long trials = state.range(0);
    for (auto _ : state) {
        auto stats = run_trials(tree, instance.dist, trials, 7);
        benchmark::DoNotOptimize(stats.trials);
    }
    state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_RunTrials)->Arg(1000)->Arg(10000);

} // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
