#include "privfn/noninteractive.hpp"

#include "privfn/errors.hpp"

#include <json.hpp>

#include <map>
#include <tuple>

namespace privfn {

using json = nlohmann::ordered_json;

Channel::Channel(Alphabet u, std::vector<std::vector<Rational>> rows_)
    : u_alphabet(std::move(u)), rows(std::move(rows_)) {
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != u_alphabet.size()) {
            throw DomainError("channel row width does not match the U alphabet");
        }
        Rational sum = 0;
        for (const auto& p : row) {
            if (p < 0) throw DomainError("channel probability is negative");
            sum += p;
        }
        if (sum != 1) throw DomainError("channel row sums to " + format_rational(sum));
    }
}

std::string serialize_channel(const Channel& channel) {
    json doc;
    doc["u_alphabet"] = channel.u_alphabet.symbols();
    json rows = json::array();
    for (const auto& row : channel.rows) {
        json r = json::array();
        for (const auto& p : row) r.push_back(format_rational(p));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump();
}

Channel parse_channel(const std::string& document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw ParseError("channel document is not valid JSON");
    if (!doc.contains("u_alphabet") || !doc.contains("rows")) {
        throw ParseError("channel: expected fields \"u_alphabet\" and \"rows\"");
    }
    std::vector<std::string> symbols;
    for (const auto& s : doc["u_alphabet"]) symbols.push_back(s.get<std::string>());
    std::vector<std::vector<Rational>> rows;
    for (size_t x = 0; x < doc["rows"].size(); ++x) {
        std::vector<Rational> row;
        for (const auto& cell : doc["rows"][x]) {
            try {
                row.push_back(parse_rational(cell.get<std::string>()));
            } catch (const ParseError& e) {
                throw ParseError("rows[" + std::to_string(x) + "]: " + e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    try {
        return Channel(Alphabet(std::move(symbols)), std::move(rows));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

Channel deterministic_channel(const std::vector<std::vector<int>>& partition, int x_size) {
    std::vector<int> block_of(static_cast<size_t>(x_size), -1);
    for (size_t b = 0; b < partition.size(); ++b) {
        for (int x : partition[b]) {
            if (x < 0 || x >= x_size || block_of[static_cast<size_t>(x)] != -1) {
                throw DomainError("partition is not a partition of the X indices");
            }
            block_of[static_cast<size_t>(x)] = static_cast<int>(b);
        }
    }
    for (int b : block_of) {
        if (b == -1) throw DomainError("partition does not cover all X indices");
    }
    std::vector<std::string> u_symbols;
    u_symbols.reserve(partition.size());
    for (size_t b = 0; b < partition.size(); ++b) u_symbols.push_back("u" + std::to_string(b));
    std::vector<std::vector<Rational>> rows(static_cast<size_t>(x_size),
                                            std::vector<Rational>(partition.size(), Rational(0)));
    for (int x = 0; x < x_size; ++x) {
        rows[static_cast<size_t>(x)][static_cast<size_t>(block_of[static_cast<size_t>(x)])] = 1;
    }
    return Channel(Alphabet(std::move(u_symbols)), std::move(rows));
}

PerfectSecurityReport check_perfect(const Channel& channel, const JointDistribution& dist,
                                    const FunctionTriple& triple) {
    if (channel.x_size() != dist.x_size() || dist.x_size() != triple.x_size() ||
        dist.y_size() != triple.y_size()) {
        throw DomainError("channel, distribution and triple dimensions do not match");
    }

    PerfectSecurityReport report;

    // H(F|U,Y) = 0, structurally: f constant on every positive-probability
    // (u, y) slice.
    report.zero_cond_entropy_ok = true;
    for (int u = 0; u < channel.u_size() && report.zero_cond_entropy_ok; ++u) {
        for (int y = 0; y < dist.y_size() && report.zero_cond_entropy_ok; ++y) {
            int f_seen = -1;
            for (int x = 0; x < dist.x_size(); ++x) {
                if (dist.p(x, y) == 0 || channel.rows[static_cast<size_t>(x)][static_cast<size_t>(u)] == 0) {
                    continue;
                }
                const int f = triple.f.id_at(x, y);
                if (f_seen == -1) {
                    f_seen = f;
                } else if (f_seen != f) {
                    report.zero_cond_entropy_ok = false;
                    report.violating_uy = std::array<int, 2>{u, y};
                    break;
                }
            }
        }
    }

    // I(U;G|F,Y) = 0, exact: factorization over every (f, y) slice of the
    // joint p(x,y,u) = p(x,y) p(u|x).
    struct Slice {
        Rational total;
        std::map<int, Rational> pu, pg;
        std::map<std::pair<int, int>, Rational> pug;
    };
    std::map<std::pair<int, int>, Slice> slices; // keyed by (f, y)
    for (int x = 0; x < dist.x_size(); ++x) {
        for (int y = 0; y < dist.y_size(); ++y) {
            const Rational& pxy = dist.p(x, y);
            if (pxy == 0) continue;
            for (int u = 0; u < channel.u_size(); ++u) {
                const Rational& pu = channel.rows[static_cast<size_t>(x)][static_cast<size_t>(u)];
                if (pu == 0) continue;
                const Rational p = pxy * pu;
                Slice& s = slices[{triple.f.id_at(x, y), y}];
                const int g = triple.g.id_at(x, y);
                s.total += p;
                s.pu[u] += p;
                s.pg[g] += p;
                s.pug[{u, g}] += p;
            }
        }
    }
    report.privacy_ok = true;
    for (const auto& [fy, s] : slices) {
        for (const auto& [u, pu] : s.pu) {
            for (const auto& [g, pg] : s.pg) {
                Rational pug = 0;
                auto it = s.pug.find({u, g});
                if (it != s.pug.end()) pug = it->second;
                if (pug * s.total != pu * pg) {
                    report.privacy_ok = false;
                    report.violating_ugfy = std::array<int, 4>{u, g, fy.first, fy.second};
                    return report;
                }
            }
        }
    }
    return report;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
    // Restricted growth strings in lexicographic order.
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<int> rgs(static_cast<size_t>(n), 0);
    auto emit = [&]() {
        int blocks = 0;
        for (int v : rgs) blocks = std::max(blocks, v + 1);
        std::vector<std::vector<int>> part(static_cast<size_t>(blocks));
        for (int i = 0; i < n; ++i) part[static_cast<size_t>(rgs[static_cast<size_t>(i)])].push_back(i);
        out.push_back(std::move(part));
    };
    // Iterative successor walk over RGSs: rgs[i] <= max(rgs[0..i-1]) + 1.
    while (true) {
        emit();
        int i = n - 1;
        for (; i > 0; --i) {
            int prefix_max = 0;
            for (int k = 0; k < i; ++k) prefix_max = std::max(prefix_max, rgs[static_cast<size_t>(k)]);
            if (rgs[static_cast<size_t>(i)] <= prefix_max) break;
        }
        if (i == 0) break;
        ++rgs[static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k) rgs[static_cast<size_t>(k)] = 0;
    }
    return out;
}

PartitionSearchResult search_deterministic_u(const JointDistribution& dist,
                                             const FunctionTriple& triple, const Limits& limits) {
    if (dist.x_size() > limits.max_partition_ground) {
        throw CapError("search_deterministic_u: |X| exceeds the partition enumeration cap");
    }
    PartitionSearchResult result;
    for (const auto& partition : set_partitions(dist.x_size())) {
        ++result.partitions_tried;
        const Channel channel = deterministic_channel(partition, dist.x_size());
        PerfectSecurityReport report = check_perfect(channel, dist, triple);
        if (report.ok()) {
            result.partition = partition;
            result.report = report;
            return result;
        }
    }
    return result;
}

ProtocolTree induced_protocol(const Channel& channel, const JointDistribution& dist,
                              const FunctionTriple& triple) {
    const SubRect full = SubRect::full(dist.x_size(), dist.y_size());

    std::map<int, BranchPmf> root_branch;
    for (int x = 0; x < dist.x_size(); ++x) {
        BranchPmf pmf;
        for (int u = 0; u < channel.u_size(); ++u) {
            const Rational& p = channel.rows[static_cast<size_t>(x)][static_cast<size_t>(u)];
            if (p > 0) pmf.emplace_back(u, p);
        }
        root_branch[x] = std::move(pmf);
    }

    std::vector<ProtocolTree::NodePtr> u_children;
    for (int u = 0; u < channel.u_size(); ++u) {
        std::vector<int> support_rows;
        for (int x = 0; x < dist.x_size(); ++x) {
            if (channel.rows[static_cast<size_t>(x)][static_cast<size_t>(u)] > 0) {
                support_rows.push_back(x);
            }
        }
        if (support_rows.empty()) {
            // unreachable message symbol
            u_children.push_back(ProtocolTree::make_leaf(triple.f.label_at(0, 0)));
            continue;
        }
        // Bob decodes: the unique f value on the (u, y) support, falling back
        // to the first supported row off the distribution's support.
        std::map<int, BranchPmf> bob_branch;
        std::vector<ProtocolTree::NodePtr> leaves;
        std::map<std::string, int> leaf_ids;
        for (int y = 0; y < dist.y_size(); ++y) {
            std::string decoded;
            bool found = false;
            for (int x : support_rows) {
                if (dist.p(x, y) > 0) {
                    decoded = triple.f.label_at(x, y);
                    found = true;
                    break;
                }
            }
            if (!found) decoded = triple.f.label_at(support_rows.front(), y);
            auto [it, inserted] = leaf_ids.emplace(decoded, static_cast<int>(leaves.size()));
            if (inserted) leaves.push_back(ProtocolTree::make_leaf(decoded));
            bob_branch[y] = BranchPmf{{it->second, Rational(1)}};
        }
        u_children.push_back(ProtocolTree::make_internal(
            Speaker::Bob, SubRect{support_rows, full.cols}, std::move(bob_branch),
            std::move(leaves)));
    }

    return ProtocolTree(ProtocolTree::make_internal(Speaker::Alice, full, std::move(root_branch),
                                                    std::move(u_children)));
}

} // namespace privfn
