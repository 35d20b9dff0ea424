#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/limits.hpp"
#include "privfn/protocol_tree.hpp"
#include "privfn/value_table.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace privfn {

// Both parties compute (f1, f2); g must stay hidden from an eavesdropper who
// sees the whole transcript.
struct EavesdropInstance {
    JointDistribution dist;
    ValueTable f1;
    ValueTable f2;
    ValueTable g;

    EavesdropInstance() = default;
    EavesdropInstance(JointDistribution d, ValueTable f1_, ValueTable f2_, ValueTable g_);
};

std::string serialize_instance(const EavesdropInstance& instance);
EavesdropInstance parse_instance(const std::string& document, const Limits& limits = {});

// n-fold block table: cell (x^n, y^n) carries the tuple of per-symbol values.
ValueTable block_table(const ValueTable& table, int x_size, int y_size, int n);

// I(M; G^n) of a block protocol, with the exact-independence flag, plus the
// exact probability that the tree's output differs from (F1^n, F2^n). The
// leaf output serves as both parties' outputs.
struct LeakageReport {
    int n = 1;
    double total_bits = 0.0;
    double per_symbol_bits = 0.0;
    bool exact_zero = false;
    Rational error_prob;
};

LeakageReport leakage(const ProtocolTree& tree, const EavesdropInstance& instance, int n,
                      const Limits& limits = {});

// The built-in separation instance: X uniform binary, Y = (Y0, Y1) uniform
// independent bits, f1 = f2 = y_x, g = y_{1-x}; plus the two-round interactive
// tree where Alice sends x^n and Bob replies with the selected bits y_x^n.
std::pair<EavesdropInstance, ProtocolTree> example1_instance(int n, const Limits& limits = {});

// Deterministic non-interactive protocol: encoders phi: X -> M1, psi: Y -> M2.
struct EncoderPair {
    std::vector<int> phi;
    std::vector<int> psi;
    int m1_size = 0;
    int m2_size = 0;
};

struct FrontierPoint {
    Rational error;
    double leakage_bits = 0.0;
    bool leak_exact_zero = false;
    EncoderPair encoders;
};

// Exact (error, leakage) of one encoder pair. Decoders are derived, not
// enumerated: per (own-input, m1, m2) maximum-a-posteriori outputs, ties
// broken by lowest label id. Leakage is I(M1,M2;G), independent of decoders.
FrontierPoint evaluate_encoders(const EavesdropInstance& instance, const EncoderPair& encoders);

struct FrontierReport {
    std::vector<FrontierPoint> frontier;           // sorted by increasing error
    std::optional<FrontierPoint> best_zero_error;  // minimum-leakage zero-error protocol
    long long pairs_examined = 0;
};

// Exhaustive search over all deterministic encoder pairs at n = 1. The Pareto
// frontier is over (exact error, leakage bits).
FrontierReport brute_force_noninteractive(const EavesdropInstance& instance, int n, int m1_size,
                                          int m2_size, const Limits& limits = {});

// Feasibility inequality for hiding g from the eavesdropper via omniscience:
// H(g(X,Y)) < I(X;Y), strict at 1e-9.
struct OmniscienceReport {
    bool feasible = false;
    double h_g = 0.0;
    double i_xy = 0.0;
};

OmniscienceReport omniscience_feasible(const JointDistribution& dist, const ValueTable& g);

} // namespace privfn
