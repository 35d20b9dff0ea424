#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/limits.hpp"
#include "privfn/protocol_tree.hpp"
#include "privfn/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace privfn {

// Stochastic matrix p(u|x). Parameterizing by x alone makes the Markov chain
// U - X - Y hold by construction.
struct Channel {
    Alphabet u_alphabet;
    std::vector<std::vector<Rational>> rows; // |X| rows, each a pmf over U

    Channel() = default;
    Channel(Alphabet u, std::vector<std::vector<Rational>> rows_);

    int u_size() const { return u_alphabet.size(); }
    int x_size() const { return static_cast<int>(rows.size()); }
};

std::string serialize_channel(const Channel& channel);
Channel parse_channel(const std::string& document);

// Channel that deterministically maps each x to the id of its block.
Channel deterministic_channel(const std::vector<std::vector<int>>& partition, int x_size);

// Exact verdicts on the one-shot perfect-security conditions. markov_ok is
// true by construction and reported for completeness.
struct PerfectSecurityReport {
    bool markov_ok = true;
    bool zero_cond_entropy_ok = false;                 // H(F|U,Y) = 0, checked structurally
    bool privacy_ok = false;                           // I(U;G|F,Y) = 0, exact
    std::optional<std::array<int, 2>> violating_uy;    // first (u,y) where f is not constant
    std::optional<std::array<int, 4>> violating_ugfy;  // first (u,g,f,y) breaking the factorization

    bool ok() const { return zero_cond_entropy_ok && privacy_ok; }
};

// Builds p(x,y,u,f,g) = p(x,y) p(u|x) and checks both conditions exactly. The
// triple's h table is ignored: this setting hides only g, from the receiver.
PerfectSecurityReport check_perfect(const Channel& channel, const JointDistribution& dist,
                                    const FunctionTriple& triple);

// All set partitions of {0..n-1} in canonical (restricted-growth-string) order.
std::vector<std::vector<std::vector<int>>> set_partitions(int n);

// Deterministic-witness search: enumerates set partitions of X in canonical
// order and returns the first whose induced channel passes check_perfect. A
// hit is a sound perfect-security witness; a miss does NOT rule out randomized
// channels, which the search does not cover.
struct PartitionSearchResult {
    std::optional<std::vector<std::vector<int>>> partition;
    PerfectSecurityReport report;     // report for the found partition
    int partitions_tried = 0;
    bool covers_randomized = false;   // always false: deterministic search only

    bool found() const { return partition.has_value(); }
};

PartitionSearchResult search_deterministic_u(const JointDistribution& dist,
                                             const FunctionTriple& triple,
                                             const Limits& limits = {});

// One-shot protocol induced by a channel: Alice samples U from her row and
// sends it; Bob replies with the decoded f value for (u, y). Zero-probability
// (u, y) cells decode to the first f value in table order.
ProtocolTree induced_protocol(const Channel& channel, const JointDistribution& dist,
                              const FunctionTriple& triple);

} // namespace privfn
