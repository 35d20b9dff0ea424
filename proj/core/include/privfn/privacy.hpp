#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/information.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/protocol_tree.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace privfn {

enum class Side { Alice, Bob };

// Exact per-input error probabilities P(transcript output != f(x,y)).
struct CorrectnessReport {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<Rational> error; // row-major
    Rational max_error;

    const Rational& at(int x, int y) const;
    bool perfect() const { return max_error == 0; }
};

CorrectnessReport check_correct(const ProtocolTree& tree, const FunctionTriple& triple);

// A qualifying pair whose transcript distributions differ, together with a
// concrete distinguishing transcript.
struct PrivacyViolation {
    int fixed;                // x for the Alice side, y for the Bob side
    std::pair<int, int> pair; // (y1, y2) or (x1, x2)
    Transcript transcript;
    Rational p_first;
    Rational p_second;
};

struct PrivacyReport {
    Side side;
    std::optional<PrivacyViolation> violation;

    bool ok() const { return !violation.has_value(); }
};

// Transcript-equality privacy. Alice side: for every x and pair y1, y2 with
// g(x,y1) != g(x,y2) and f(x,y1) = f(x,y2), the transcript pmfs at (x,y1) and
// (x,y2) must be exactly equal. Bob side symmetric with h and (x1,y), (x2,y).
PrivacyReport check_transcript_privacy(const ProtocolTree& tree, const FunctionTriple& triple,
                                       Side side);

// I(M;G|F,X) and I(M;H|F,Y): exact zero flags and float values in bits.
struct Claim1Report {
    bool alice_exact_zero = false;
    bool bob_exact_zero = false;
    double alice_cmi_bits = 0.0;
    double bob_cmi_bits = 0.0;

    bool both_zero() const { return alice_exact_zero && bob_exact_zero; }
};

Claim1Report claim1_audit(const ProtocolTree& tree, const FunctionTriple& triple,
                          const JointDistribution& dist);

// Input pair meeting the privacy-relevant condition on one side.
struct QualifyingPair {
    Side side;
    int fixed;
    std::pair<int, int> pair;
};

std::vector<QualifyingPair> qualifying_pairs(const FunctionTriple& triple);

// Two-point distribution (mass 1/2 each) on the pair's two input cells.
JointDistribution two_point_distribution(const FunctionTriple& triple, const QualifyingPair& q);

// Full-support distribution with pseudo-random rational masses.
JointDistribution sample_full_support_distribution(const Alphabet& x, const Alphabet& y,
                                                   std::mt19937_64& rng);

// "For all input distributions", operationalized: the audit runs on the given
// base distribution, on the two-point distribution of every qualifying pair,
// and on `samples` seeded full-support random distributions.
struct Claim1SuiteReport {
    Claim1Report base;
    std::vector<std::pair<QualifyingPair, Claim1Report>> two_point;
    std::vector<Claim1Report> sampled;
    std::uint64_t seed = 0;
    bool all_exact_zero = false;
};

Claim1SuiteReport claim1_suite(const ProtocolTree& tree, const FunctionTriple& triple,
                               const JointDistribution& base_dist, int samples,
                               std::uint64_t seed);

} // namespace privfn
