#include "privfn/simharness.hpp"

#include "privfn/errors.hpp"
#include "privfn/sampling.hpp"

#include <json.hpp>

#include <cmath>

namespace privfn {

using json = nlohmann::ordered_json;

PartyEndpoint::PartyEndpoint(Speaker role, int own_input, const ProtocolTree::Node* root,
                             std::uint64_t seed)
    : role_(role), input_(own_input), node_(root), rng_(seed) {}

bool PartyEndpoint::at_leaf() const {
    return node_->is_leaf();
}

bool PartyEndpoint::my_turn() const {
    return !node_->is_leaf() && node_->speaker == role_;
}

int PartyEndpoint::emit_message() {
    if (!my_turn()) throw DomainError("emit_message called out of turn");
    auto it = node_->branch.find(input_);
    if (it == node_->branch.end()) {
        throw DomainError("own input outside the current node's rect");
    }
    const BranchPmf& row = it->second;
    if (row.size() == 1) return row.front().first;
    int positive = 0;
    int last = -1;
    for (const auto& [child, p] : row) {
        if (p > 0) {
            ++positive;
            last = child;
        }
    }
    if (positive == 1) return last;
    return sample_rational_pmf(row, rng_);
}

void PartyEndpoint::observe(int message) {
    if (node_->is_leaf()) throw DomainError("observe called at a leaf");
    if (message < 0 || message >= static_cast<int>(node_->children.size())) {
        throw DomainError("message outside the child range");
    }
    node_ = node_->children[static_cast<size_t>(message)].get();
}

const std::string& PartyEndpoint::leaf_output() const {
    if (!node_->is_leaf()) throw DomainError("leaf_output called at an internal node");
    return node_->output;
}

EmpiricalStats run_trials(const ProtocolTree& tree, const JointDistribution& dist,
                          long long trials, std::uint64_t seed, InputAccessLog* access_log) {
    if (trials < 1) throw DomainError("run_trials: trials must be >= 1");
    const ProtocolTree::Node* root = &tree.root();
    if (!root->is_leaf()) {
        for (int x = 0; x < dist.x_size(); ++x) {
            for (int y = 0; y < dist.y_size(); ++y) {
                if (dist.p(x, y) > 0 && !root->rect.contains(x, y)) {
                    throw DomainError("distribution support outside the protocol's root rect");
                }
            }
        }
    }

    EmpiricalStats stats;
    stats.trials = trials;
    stats.seed = seed;

    const RationalSampler input_sampler(dist.pmf());
    for (long long trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = derive_subseed(seed, static_cast<std::uint64_t>(trial));
        std::mt19937_64 input_rng(trial_seed);
        const int cell = input_sampler(input_rng);
        const int x = cell / dist.y_size();
        const int y = cell % dist.y_size();

        // Each endpoint is handed exactly its own input; the other's never
        // crosses the constructor boundary.
        if (access_log) {
            ++access_log->alice_reads;
            ++access_log->bob_reads;
        }
        PartyEndpoint alice(Speaker::Alice, x, root, derive_subseed(trial_seed, 1));
        PartyEndpoint bob(Speaker::Bob, y, root, derive_subseed(trial_seed, 2));

        // Eavesdropper tap: the public message sequence.
        Transcript transcript;
        while (!alice.at_leaf()) {
            const int message = alice.my_turn() ? alice.emit_message() : bob.emit_message();
            transcript.messages.push_back(message);
            alice.observe(message);
            bob.observe(message);
        }
        transcript.output = alice.leaf_output();

        ++stats.transcript_counts[{x, y}][transcript];
        ++stats.output_counts[transcript.output];
    }
    return stats;
}

double tv_distance(const EmpiricalStats& stats, const ProtocolTree& tree,
                   const JointDistribution& dist) {
    std::map<std::tuple<int, int, Transcript>, double> delta;
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            const Rational& pxy = dist.p(x, y);
            if (pxy == 0) continue;
            for (const auto& [t, q] : transcript_pmf(tree, x, y)) {
                if (q == 0) continue;
                delta[{x, y, t}] -= to_double(pxy * q);
            }
        }
    }
    const double inv_trials = 1.0 / static_cast<double>(stats.trials);
    for (const auto& [xy, counts] : stats.transcript_counts) {
        for (const auto& [t, c] : counts) {
            delta[{xy.first, xy.second, t}] += static_cast<double>(c) * inv_trials;
        }
    }
    double tv = 0.0;
    for (const auto& [k, d] : delta) tv += std::abs(d);
    return tv / 2.0;
}

double empirical_leakage(const EmpiricalStats& stats, const ValueTable& table) {
    std::map<std::pair<Transcript, int>, long long> n_mg;
    std::map<Transcript, long long> n_m;
    std::map<int, long long> n_g;
    for (const auto& [xy, counts] : stats.transcript_counts) {
        const int g = table.id_at(xy.first, xy.second);
        for (const auto& [t, c] : counts) {
            n_mg[{t, g}] += c;
            n_m[t] += c;
            n_g[g] += c;
        }
    }
    const double total = static_cast<double>(stats.trials);
    auto h = [&](const auto& counts) {
        double out = 0.0;
        for (const auto& [k, c] : counts) {
            if (c == 0) continue;
            const double p = static_cast<double>(c) / total;
            out -= p * std::log2(p);
        }
        return out;
    };
    double mi = h(n_m) + h(n_g) - h(n_mg);
    if (mi < 0.0 && mi > -1e-12) mi = 0.0;
    return mi;
}

std::string serialize_stats(const EmpiricalStats& stats) {
    json doc;
    doc["trials"] = stats.trials;
    doc["seed"] = stats.seed;
    json inputs = json::array();
    for (const auto& [xy, counts] : stats.transcript_counts) {
        json entry;
        entry["x"] = xy.first;
        entry["y"] = xy.second;
        json transcripts = json::array();
        for (const auto& [t, c] : counts) {
            transcripts.push_back(json{{"messages", t.messages}, {"output", t.output}, {"count", c}});
        }
        entry["transcripts"] = std::move(transcripts);
        inputs.push_back(std::move(entry));
    }
    doc["inputs"] = std::move(inputs);
    doc["outputs"] = stats.output_counts;
    return doc.dump();
}

} // namespace privfn
