#include "privfn/sampling.hpp"

#include "privfn/errors.hpp"

#include <algorithm>
#include <limits>

namespace privfn {

namespace {

const BigInt& max_exact_denominator() {
    static const BigInt cap = BigInt(1) << 62;
    return cap;
}

template <typename Weight, typename ProbFn, typename IndexFn>
int sample_impl(const std::vector<Weight>& weights, std::mt19937_64& rng, ProbFn prob,
                IndexFn index) {
    if (weights.empty()) throw DomainError("sample: empty pmf");
    BigInt denom = 1;
    Rational total = 0;
    for (const auto& w : weights) {
        const Rational& p = prob(w);
        if (p < 0) throw DomainError("sample: negative weight");
        total += p;
        denom = lcm(denom, denominator(p));
    }
    if (total == 0) throw DomainError("sample: zero total weight");

    if (denom * numerator(total) <= max_exact_denominator()) {
        // Exact path: draw uniformly over the integer grid of the scaled masses.
        const BigInt scale = denom;
        const std::uint64_t range =
            BigInt(scale * numerator(total) / denominator(total)).convert_to<std::uint64_t>();
        std::uniform_int_distribution<std::uint64_t> pick(0, range - 1);
        std::uint64_t r = pick(rng);
        for (size_t i = 0; i < weights.size(); ++i) {
            const Rational& p = prob(weights[i]);
            const std::uint64_t mass =
                BigInt(numerator(p) * (scale / denominator(p))).convert_to<std::uint64_t>();
            if (r < mass) return index(weights[i], static_cast<int>(i));
            r -= mass;
        }
        return index(weights.back(), static_cast<int>(weights.size()) - 1);
    }

    // Fallback: long-double CDF walk.
    const long double t = total.convert_to<long double>();
    std::uniform_real_distribution<long double> pick(0.0L, 1.0L);
    long double r = pick(rng) * t;
    for (size_t i = 0; i < weights.size(); ++i) {
        r -= prob(weights[i]).template convert_to<long double>();
        if (r < 0) return index(weights[i], static_cast<int>(i));
    }
    return index(weights.back(), static_cast<int>(weights.size()) - 1);
}

} // namespace

int sample_rational_pmf(const std::vector<Rational>& weights, std::mt19937_64& rng) {
    return sample_impl(
        weights, rng, [](const Rational& w) -> const Rational& { return w; },
        [](const Rational&, int i) { return i; });
}

int sample_rational_pmf(const std::vector<std::pair<int, Rational>>& weights,
                        std::mt19937_64& rng) {
    return sample_impl(
        weights, rng,
        [](const std::pair<int, Rational>& w) -> const Rational& { return w.second; },
        [](const std::pair<int, Rational>& w, int) { return w.first; });
}

RationalSampler::RationalSampler(const std::vector<Rational>& weights) {
    if (weights.empty()) throw DomainError("sampler: empty pmf");
    BigInt denom = 1;
    Rational total = 0;
    for (const auto& p : weights) {
        if (p < 0) throw DomainError("sampler: negative weight");
        total += p;
        denom = lcm(denom, denominator(p));
    }
    if (total == 0) throw DomainError("sampler: zero total weight");

    if (denom * numerator(total) <= max_exact_denominator()) {
        exact_ = true;
        range_ = BigInt(denom * numerator(total) / denominator(total)).convert_to<std::uint64_t>();
        cumulative_.reserve(weights.size());
        std::uint64_t acc = 0;
        for (const auto& p : weights) {
            acc += BigInt(numerator(p) * (denom / denominator(p))).convert_to<std::uint64_t>();
            cumulative_.push_back(acc);
        }
    } else {
        const long double t = total.convert_to<long double>();
        long double acc = 0;
        cdf_.reserve(weights.size());
        for (const auto& p : weights) {
            acc += p.convert_to<long double>() / t;
            cdf_.push_back(acc);
        }
    }
}

int RationalSampler::operator()(std::mt19937_64& rng) const {
    if (exact_) {
        std::uniform_int_distribution<std::uint64_t> pick(0, range_ - 1);
        const std::uint64_t r = pick(rng);
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
        return static_cast<int>(it - cumulative_.begin());
    }
    std::uniform_real_distribution<long double> pick(0.0L, 1.0L);
    const long double r = pick(rng);
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), r);
    return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(),
                                                     static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace privfn
