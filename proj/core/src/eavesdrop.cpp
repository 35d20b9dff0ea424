#include "privfn/eavesdrop.hpp"

#include "privfn/errors.hpp"
#include "privfn/information.hpp"
#include "privfn/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace privfn {

using json = nlohmann::ordered_json;

EavesdropInstance::EavesdropInstance(JointDistribution d, ValueTable f1_, ValueTable f2_,
                                     ValueTable g_)
    : dist(std::move(d)), f1(std::move(f1_)), f2(std::move(f2_)), g(std::move(g_)) {
    for (const ValueTable* t : {&f1, &f2, &g}) {
        if (t->rows() != dist.x_size() || t->cols() != dist.y_size()) {
            throw DomainError("instance table dimensions do not match the distribution");
        }
    }
}

std::string serialize_instance(const EavesdropInstance& instance) {
    json doc = json::parse(serialize_distribution(instance.dist));
    doc["f1"] = instance.f1.to_cells();
    doc["f2"] = instance.f2.to_cells();
    doc["g"] = instance.g.to_cells();
    return doc.dump();
}

EavesdropInstance parse_instance(const std::string& document, const Limits& limits) {
    JointDistribution dist = parse_distribution(document, limits);
    json doc = json::parse(document, nullptr, false);
    auto table = [&](const char* name) {
        if (!doc.contains(name)) throw ParseError(std::string(name) + ": missing field");
        std::vector<std::vector<std::string>> cells;
        for (const auto& row : doc[name]) {
            std::vector<std::string> r;
            for (const auto& cell : row) r.push_back(cell.get<std::string>());
            cells.push_back(std::move(r));
        }
        try {
            return ValueTable(dist.x_size(), dist.y_size(), cells);
        } catch (const DomainError& e) {
            throw ParseError(std::string(name) + ": " + e.what());
        }
    };
    ValueTable f1 = table("f1");
    ValueTable f2 = table("f2");
    ValueTable g = table("g");
    return EavesdropInstance(std::move(dist), std::move(f1), std::move(f2), std::move(g));
}

ValueTable block_table(const ValueTable& table, int x_size, int y_size, int n) {
    if (table.rows() != x_size || table.cols() != y_size) {
        throw DomainError("block_table: dimensions do not match");
    }
    if (n == 1) return table;
    long long rows = 1, cols = 1;
    for (int i = 0; i < n; ++i) {
        rows *= x_size;
        cols *= y_size;
    }
    return ValueTable::from_fn(
        static_cast<int>(rows), static_cast<int>(cols), [&](int xi, int yi) {
            const auto xd = unrank_tuple(xi, x_size, n);
            const auto yd = unrank_tuple(yi, y_size, n);
            std::vector<std::string> parts;
            parts.reserve(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) {
                parts.push_back(table.label_at(xd[static_cast<size_t>(k)], yd[static_cast<size_t>(k)]));
            }
            return tuple_label(parts);
        });
}

LeakageReport leakage(const ProtocolTree& tree, const EavesdropInstance& instance, int n,
                      const Limits& limits) {
    const JointDistribution dist_n = iid_extend(instance.dist, n, limits);
    const ValueTable f1n = block_table(instance.f1, instance.dist.x_size(), instance.dist.y_size(), n);
    const ValueTable f2n = block_table(instance.f2, instance.dist.x_size(), instance.dist.y_size(), n);
    const ValueTable gn = block_table(instance.g, instance.dist.x_size(), instance.dist.y_size(), n);

    // Joint over (transcript, G^n); the decoded outputs ride along for the
    // exact error term.
    std::map<Transcript, int> transcript_ids;
    std::map<std::pair<int, int>, Rational> p_mg;
    std::map<int, Rational> p_m;
    std::map<int, Rational> p_g;
    Rational error = 0;

    for (int x = 0; x < dist_n.x_size(); ++x) {
        for (int y = 0; y < dist_n.y_size(); ++y) {
            const Rational& pxy = dist_n.p(x, y);
            if (pxy == 0) continue;
            const int g = gn.id_at(x, y);
            for (const auto& [t, q] : transcript_pmf(tree, x, y)) {
                if (q == 0) continue;
                const Rational p = pxy * q;
                auto [it, inserted] = transcript_ids.emplace(t, static_cast<int>(transcript_ids.size()));
                const int m = it->second;
                p_mg[{m, g}] += p;
                p_m[m] += p;
                p_g[g] += p;
                if (t.output != f1n.label_at(x, y) || t.output != f2n.label_at(x, y)) {
                    error += p;
                }
            }
        }
    }

    LeakageReport report;
    report.n = n;
    report.error_prob = error;

    report.exact_zero = true;
    for (const auto& [m, pm] : p_m) {
        for (const auto& [g, pg] : p_g) {
            Rational pmg = 0;
            auto it = p_mg.find({m, g});
            if (it != p_mg.end()) pmg = it->second;
            if (pmg != pm * pg) {
                report.exact_zero = false;
                break;
            }
        }
        if (!report.exact_zero) break;
    }

    auto h = [](const auto& m) {
        double out = 0.0;
        for (const auto& [k, p] : m) {
            if (p == 0) continue;
            const double pd = to_double(p);
            out -= pd * std::log2(pd);
        }
        return out;
    };
    double mi = h(p_m) + h(p_g) - h(p_mg);
    if (mi < 0.0 && mi > -1e-12) mi = 0.0;
    report.total_bits = mi;
    report.per_symbol_bits = mi / n;
    return report;
}

std::pair<EavesdropInstance, ProtocolTree> example1_instance(int n, const Limits& limits) {
    if (n < 1 || n > limits.max_example1_n) {
        throw CapError("example1_instance: n outside the configured cap");
    }

    const Alphabet x_base(std::vector<std::string>{"0", "1"});
    const Alphabet y_base(std::vector<std::string>{"00", "01", "10", "11"});
    // y = (y0, y1); f1 = f2 = y_x, g = y_{1-x}
    auto bit = [](int y, int which) { return which == 0 ? y >> 1 : y & 1; };
    const ValueTable f = ValueTable::from_fn(2, 4, [&](int x, int y) {
        return std::to_string(bit(y, x));
    });
    const ValueTable g = ValueTable::from_fn(2, 4, [&](int x, int y) {
        return std::to_string(bit(y, 1 - x));
    });
    const EavesdropInstance base(JointDistribution::uniform(x_base, y_base), f, f, g);

    const JointDistribution dist_n = iid_extend(base.dist, n, limits);
    const Alphabet out_n = power_alphabet(x_base, n); // selected-bit tuples
    const SubRect full = SubRect::full(dist_n.x_size(), dist_n.y_size());

    // Round 1: Alice sends x^n. Round 2: Bob replies with the selected bits
    // y_x^n, which is also the computed value.
    std::map<int, BranchPmf> root_branch;
    std::vector<ProtocolTree::NodePtr> children;
    for (int xi = 0; xi < dist_n.x_size(); ++xi) {
        root_branch[xi] = BranchPmf{{xi, Rational(1)}};
        const auto xd = unrank_tuple(xi, 2, n);

        std::map<int, BranchPmf> bob_branch;
        for (int yi = 0; yi < dist_n.y_size(); ++yi) {
            const auto yd = unrank_tuple(yi, 4, n);
            int selected = 0;
            for (int k = 0; k < n; ++k) {
                selected = selected * 2 + bit(yd[static_cast<size_t>(k)], xd[static_cast<size_t>(k)]);
            }
            bob_branch[yi] = BranchPmf{{selected, Rational(1)}};
        }
        std::vector<ProtocolTree::NodePtr> leaves;
        leaves.reserve(static_cast<size_t>(out_n.size()));
        for (int v = 0; v < out_n.size(); ++v) {
            leaves.push_back(ProtocolTree::make_leaf(out_n.label(v)));
        }
        children.push_back(ProtocolTree::make_internal(Speaker::Bob,
                                                       SubRect{{xi}, full.cols},
                                                       std::move(bob_branch), std::move(leaves)));
    }
    ProtocolTree tree(ProtocolTree::make_internal(Speaker::Alice, full, std::move(root_branch),
                                                  std::move(children)));

    // the returned instance is over the block alphabets
    EavesdropInstance block_instance(dist_n, block_table(base.f1, 2, 4, n),
                                     block_table(base.f2, 2, 4, n), block_table(base.g, 2, 4, n));
    return {std::move(block_instance), std::move(tree)};
}

FrontierPoint evaluate_encoders(const EavesdropInstance& instance, const EncoderPair& encoders) {
    const JointDistribution& dist = instance.dist;
    if (static_cast<int>(encoders.phi.size()) != dist.x_size() ||
        static_cast<int>(encoders.psi.size()) != dist.y_size()) {
        throw DomainError("encoder arity does not match the instance");
    }

    // MAP decoders per (own input, peer message); ties to the lowest label id.
    auto decode = [&](const ValueTable& table, bool alice_side) {
        // key: (own, msg) -> decoded label id
        std::map<std::pair<int, int>, int> out;
        const int own_count = alice_side ? dist.x_size() : dist.y_size();
        const int msg_count = alice_side ? encoders.m2_size : encoders.m1_size;
        for (int own = 0; own < own_count; ++own) {
            for (int msg = 0; msg < msg_count; ++msg) {
                std::map<int, Rational> weight;
                if (alice_side) {
                    for (int y = 0; y < dist.y_size(); ++y) {
                        if (encoders.psi[static_cast<size_t>(y)] != msg) continue;
                        weight[table.id_at(own, y)] += dist.p(own, y);
                    }
                } else {
                    for (int x = 0; x < dist.x_size(); ++x) {
                        if (encoders.phi[static_cast<size_t>(x)] != msg) continue;
                        weight[table.id_at(x, own)] += dist.p(x, own);
                    }
                }
                int best = 0;
                Rational best_w = -1;
                for (const auto& [v, w] : weight) {
                    if (w > best_w) {
                        best = v;
                        best_w = w;
                    }
                }
                out[{own, msg}] = best;
            }
        }
        return out;
    };
    const auto z1 = decode(instance.f1, true);
    const auto z2 = decode(instance.f2, false);

    Rational correct = 0;
    std::map<std::pair<int, int>, Rational> p_mg;
    std::map<int, Rational> p_m;
    std::map<int, Rational> p_g;
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            const Rational& p = dist.p(x, y);
            if (p == 0) continue;
            const int m1 = encoders.phi[static_cast<size_t>(x)];
            const int m2 = encoders.psi[static_cast<size_t>(y)];
            const int m = m1 * encoders.m2_size + m2;
            const int g = instance.g.id_at(x, y);
            p_mg[{m, g}] += p;
            p_m[m] += p;
            p_g[g] += p;
            if (z1.at({x, m2}) == instance.f1.id_at(x, y) &&
                z2.at({y, m1}) == instance.f2.id_at(x, y)) {
                correct += p;
            }
        }
    }

    FrontierPoint point;
    point.encoders = encoders;
    point.error = 1 - correct;

    point.leak_exact_zero = true;
    for (const auto& [m, pm] : p_m) {
        for (const auto& [g, pg] : p_g) {
            Rational pmg = 0;
            auto it = p_mg.find({m, g});
            if (it != p_mg.end()) pmg = it->second;
            if (pmg != pm * pg) {
                point.leak_exact_zero = false;
                break;
            }
        }
        if (!point.leak_exact_zero) break;
    }

    auto h = [](const auto& m) {
        double out = 0.0;
        for (const auto& [k, p] : m) {
            if (p == 0) continue;
            const double pd = to_double(p);
            out -= pd * std::log2(pd);
        }
        return out;
    };
    double mi = h(p_m) + h(p_g) - h(p_mg);
    if (mi < 0.0 && mi > -1e-12) mi = 0.0;
    point.leakage_bits = mi;
    return point;
}

FrontierReport brute_force_noninteractive(const EavesdropInstance& instance, int n, int m1_size,
                                          int m2_size, const Limits& limits) {
    if (n != 1) throw DomainError("brute_force_noninteractive: only n = 1 is enumerable");
    if (m1_size < 1 || m2_size < 1) throw DomainError("message alphabets must be nonempty");

    const int xs = instance.dist.x_size();
    const int ys = instance.dist.y_size();
    double budget = 1.0;
    for (int i = 0; i < xs; ++i) budget *= m1_size;
    for (int i = 0; i < ys; ++i) budget *= m2_size;
    if (budget > static_cast<double>(limits.max_encoder_pairs)) {
        throw CapError("brute_force_noninteractive: encoder pair count exceeds the cap");
    }

    FrontierReport report;
    std::vector<FrontierPoint> points;

    EncoderPair enc;
    enc.m1_size = m1_size;
    enc.m2_size = m2_size;
    enc.phi.assign(static_cast<size_t>(xs), 0);
    enc.psi.assign(static_cast<size_t>(ys), 0);

    auto advance = [](std::vector<int>& digits, int base) {
        for (size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < base) return true;
            digits[i] = 0;
        }
        return false;
    };

    bool more_phi = true;
    while (more_phi) {
        std::fill(enc.psi.begin(), enc.psi.end(), 0);
        bool more_psi = true;
        while (more_psi) {
            ++report.pairs_examined;
            points.push_back(evaluate_encoders(instance, enc));
            more_psi = advance(enc.psi, m2_size);
        }
        more_phi = advance(enc.phi, m1_size);
    }

    // Pareto frontier over (exact error, leakage bits): sweep by increasing
    // error and keep strict leakage improvements.
    std::sort(points.begin(), points.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.error != b.error) return a.error < b.error;
        return a.leakage_bits < b.leakage_bits;
    });
    constexpr double kLeakEps = 1e-12;
    double best_leak = std::numeric_limits<double>::infinity();
    for (auto& p : points) {
        if (p.leakage_bits < best_leak - kLeakEps) {
            best_leak = p.leakage_bits;
            report.frontier.push_back(std::move(p));
        }
    }
    if (!report.frontier.empty() && report.frontier.front().error == 0) {
        report.best_zero_error = report.frontier.front();
    }
    return report;
}

OmniscienceReport omniscience_feasible(const JointDistribution& dist, const ValueTable& g) {
    OmniscienceReport report;
    report.h_g = entropy(value_distribution(dist, g));
    report.i_xy = mutual_information_xy(dist);
    report.feasible = (report.i_xy - report.h_g) > 1e-9;
    return report;
}

} // namespace privfn
