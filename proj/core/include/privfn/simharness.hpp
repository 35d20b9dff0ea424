#pragma once

#include "privfn/joint_distribution.hpp"
#include "privfn/protocol_tree.hpp"
#include "privfn/value_table.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace privfn {

// One party of the message-passing simulation. An endpoint is handed only its
// own input at construction and never sees the other party's; it advances its
// view of the tree from the public messages alone.
class PartyEndpoint {
public:
    PartyEndpoint(Speaker role, int own_input, const ProtocolTree::Node* root,
                  std::uint64_t seed);

    Speaker role() const { return role_; }
    bool at_leaf() const;
    bool my_turn() const;

    // Samples a message from this node's branch row for the own input.
    int emit_message();

    // Advances past a message (this party's own or the peer's).
    void observe(int message);

    const std::string& leaf_output() const;

private:
    Speaker role_;
    int input_;
    const ProtocolTree::Node* node_;
    std::mt19937_64 rng_;
};

// Read counters for the isolation test: each party's input must be fetched
// exactly once per trial, by its own endpoint.
struct InputAccessLog {
    long long alice_reads = 0;
    long long bob_reads = 0;
};

struct EmpiricalStats {
    // per input pair: transcript -> count
    std::map<std::pair<int, int>, std::map<Transcript, long long>> transcript_counts;
    std::map<std::string, long long> output_counts;
    long long trials = 0;
    std::uint64_t seed = 0;
};

// Runs `trials` independent executions: sample (x, y) from dist, instantiate
// two endpoints, deliver messages alternately per the tree, record the
// transcript at the eavesdropper tap. Per-trial sub-seeds are derived from
// (seed, trial index), so results are reproducible and schedule-independent.
EmpiricalStats run_trials(const ProtocolTree& tree, const JointDistribution& dist,
                          long long trials, std::uint64_t seed,
                          InputAccessLog* access_log = nullptr);

// Total-variation distance between the empirical (input, transcript) joint
// and the exact one.
double tv_distance(const EmpiricalStats& stats, const ProtocolTree& tree,
                   const JointDistribution& dist);

// Plug-in estimate of I(M; label) in bits, mapping each input pair through
// `table` (e.g. the protected function g).
double empirical_leakage(const EmpiricalStats& stats, const ValueTable& table);

std::string serialize_stats(const EmpiricalStats& stats);

} // namespace privfn
