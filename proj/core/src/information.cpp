#include "privfn/information.hpp"

#include "privfn/errors.hpp"

#include <cmath>
#include <map>

namespace privfn {

namespace {

using Key = std::vector<int>;

Key project(const AugmentedJoint::Entry& e, const VarGroup& group) {
    Key k;
    k.reserve(group.size());
    for (Var v : group) k.push_back(e.coord[static_cast<size_t>(static_cast<int>(v))]);
    return k;
}

std::map<Key, Rational> marginal(const AugmentedJoint& joint, const VarGroup& group) {
    std::map<Key, Rational> out;
    for (const auto& e : joint.entries) out[project(e, group)] += e.p;
    return out;
}

double entropy_of_marginal(const std::map<Key, Rational>& m) {
    double h = 0.0;
    for (const auto& [k, p] : m) {
        if (p == 0) continue;
        const double pd = to_double(p);
        h -= pd * std::log2(pd);
    }
    return h;
}

VarGroup concat(const VarGroup& a, const VarGroup& b) {
    VarGroup out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

double clamp_guard(double v) {
    return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

} // namespace

AugmentedJoint build_augmented_joint(const ProtocolTree& tree, const FunctionTriple& triple,
                                     const JointDistribution& dist) {
    if (dist.x_size() != triple.x_size() || dist.y_size() != triple.y_size()) {
        throw DomainError("distribution and triple alphabets do not match");
    }
    AugmentedJoint joint;
    std::map<Transcript, int> transcript_ids;
    for (int x = 0; x < triple.x_size(); ++x) {
        for (int y = 0; y < triple.y_size(); ++y) {
            const Rational& pxy = dist.p(x, y);
            if (pxy == 0) continue;
            for (const auto& [t, q] : transcript_pmf(tree, x, y)) {
                if (q == 0) continue;
                auto [it, inserted] =
                    transcript_ids.emplace(t, static_cast<int>(joint.transcripts.size()));
                if (inserted) joint.transcripts.push_back(t);
                joint.entries.push_back(AugmentedJoint::Entry{
                    {x, y, triple.f.id_at(x, y), triple.g.id_at(x, y), triple.h.id_at(x, y),
                     it->second},
                    pxy * q});
            }
        }
    }
    return joint;
}

bool exact_cond_independent(const AugmentedJoint& joint, const VarGroup& a_group,
                            const VarGroup& b_group, const VarGroup& c_group) {
    // Group atoms by the conditioning key, then check the factorization
    // p(a,b,c) p(c) == p(a,c) p(b,c) over the full conditional support grid.
    struct Slice {
        Rational pc;
        std::map<Key, Rational> pa, pb;
        std::map<std::pair<Key, Key>, Rational> pab;
    };
    std::map<Key, Slice> slices;
    for (const auto& e : joint.entries) {
        Slice& s = slices[project(e, c_group)];
        Key a = project(e, a_group);
        Key b = project(e, b_group);
        s.pc += e.p;
        s.pa[a] += e.p;
        s.pb[b] += e.p;
        s.pab[{std::move(a), std::move(b)}] += e.p;
    }
    for (const auto& [c, s] : slices) {
        if (s.pc == 0) continue;
        for (const auto& [a, pa] : s.pa) {
            for (const auto& [b, pb] : s.pb) {
                Rational pab = 0;
                auto it = s.pab.find({a, b});
                if (it != s.pab.end()) pab = it->second;
                if (pab * s.pc != pa * pb) return false;
            }
        }
    }
    return true;
}

double entropy_of(const AugmentedJoint& joint, const VarGroup& group) {
    return entropy_of_marginal(marginal(joint, group));
}

double conditional_entropy(const AugmentedJoint& joint, const VarGroup& a_group,
                           const VarGroup& given_group) {
    return entropy_of(joint, concat(a_group, given_group)) - entropy_of(joint, given_group);
}

double mutual_information(const AugmentedJoint& joint, const VarGroup& a_group,
                          const VarGroup& b_group) {
    return clamp_guard(entropy_of(joint, a_group) + entropy_of(joint, b_group) -
                       entropy_of(joint, concat(a_group, b_group)));
}

double conditional_mutual_information(const AugmentedJoint& joint, const VarGroup& a_group,
                                      const VarGroup& b_group, const VarGroup& c_group) {
    const double h_ac = entropy_of(joint, concat(a_group, c_group));
    const double h_bc = entropy_of(joint, concat(b_group, c_group));
    const double h_abc = entropy_of(joint, concat(concat(a_group, b_group), c_group));
    const double h_c = entropy_of(joint, c_group);
    return clamp_guard(h_ac + h_bc - h_abc - h_c);
}

double entropy(const std::vector<Rational>& pmf) {
    Rational sum = 0;
    for (const auto& p : pmf) {
        if (p < 0) throw DomainError("entropy: negative weight");
        sum += p;
    }
    if (sum == 0) throw DomainError("entropy: zero total weight");
    double h = 0.0;
    for (const auto& p : pmf) {
        if (p == 0) continue;
        const double pd = to_double(p / sum);
        h -= pd * std::log2(pd);
    }
    return h;
}

std::vector<Rational> value_distribution(const JointDistribution& dist, const ValueTable& table) {
    if (table.rows() != dist.x_size() || table.cols() != dist.y_size()) {
        throw DomainError("value table and distribution dimensions do not match");
    }
    std::vector<Rational> out(static_cast<size_t>(table.distinct_values()), Rational(0));
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            out[static_cast<size_t>(table.id_at(x, y))] += dist.p(x, y);
        }
    }
    return out;
}

namespace {

std::vector<Rational> x_marginal(const JointDistribution& dist) {
    std::vector<Rational> out(static_cast<size_t>(dist.x_size()), Rational(0));
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) out[static_cast<size_t>(x)] += dist.p(x, y);
    }
    return out;
}

std::vector<Rational> y_marginal(const JointDistribution& dist) {
    std::vector<Rational> out(static_cast<size_t>(dist.y_size()), Rational(0));
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) out[static_cast<size_t>(y)] += dist.p(x, y);
    }
    return out;
}

} // namespace

double entropy_x(const JointDistribution& dist) { return entropy(x_marginal(dist)); }

double entropy_y(const JointDistribution& dist) { return entropy(y_marginal(dist)); }

double entropy_xy(const JointDistribution& dist) { return entropy(dist.pmf()); }

double mutual_information_xy(const JointDistribution& dist) {
    return clamp_guard(entropy_x(dist) + entropy_y(dist) - entropy_xy(dist));
}

bool exact_independent_xy(const JointDistribution& dist) {
    const auto px = x_marginal(dist);
    const auto py = y_marginal(dist);
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            if (dist.p(x, y) != px[static_cast<size_t>(x)] * py[static_cast<size_t>(y)]) {
                return false;
            }
        }
    }
    return true;
}

} // namespace privfn
