#include "privfn/characterize.hpp"

#include "privfn/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace privfn {

namespace {

using json = nlohmann::ordered_json;

// Union-find over local indices, by size with path compression.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int a) {
        int root = a;
        while (parent_[static_cast<size_t>(root)] != root) root = parent_[static_cast<size_t>(root)];
        while (parent_[static_cast<size_t>(a)] != root) {
            int next = parent_[static_cast<size_t>(a)];
            parent_[static_cast<size_t>(a)] = root;
            a = next;
        }
        return root;
    }

    bool merge(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size_[static_cast<size_t>(ra)] < size_[static_cast<size_t>(rb)]) std::swap(ra, rb);
        parent_[static_cast<size_t>(rb)] = ra;
        size_[static_cast<size_t>(ra)] += size_[static_cast<size_t>(rb)];
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

void check_on_axis(const SubRect& rect, Axis axis, int i, int j) {
    const auto& idx = axis == Axis::Row ? rect.rows : rect.cols;
    auto on = [&](int v) { return std::binary_search(idx.begin(), idx.end(), v); };
    if (!on(i) || !on(j)) throw DomainError("index outside the rect's axis");
    if (i == j) throw DomainError("relation requires two distinct indices");
}

} // namespace

std::optional<int> relation_witness(const FunctionTriple& triple, const SubRect& rect, Axis axis,
                                    int i, int j) {
    check_on_axis(rect, axis, i, j);
    if (axis == Axis::Row) {
        for (int y : rect.cols) {
            if (triple.h.id_at(i, y) != triple.h.id_at(j, y) &&
                triple.f.id_at(i, y) == triple.f.id_at(j, y)) {
                return y;
            }
        }
    } else {
        for (int x : rect.rows) {
            if (triple.g.id_at(x, i) != triple.g.id_at(x, j) &&
                triple.f.id_at(x, i) == triple.f.id_at(x, j)) {
                return x;
            }
        }
    }
    return std::nullopt;
}

bool related(const FunctionTriple& triple, const SubRect& rect, Axis axis, int i, int j) {
    return relation_witness(triple, rect, axis, i, j).has_value();
}

int Partition::block_of(int index) const {
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), index)) {
            return static_cast<int>(b);
        }
    }
    return -1;
}

Partition equivalence_partition(const FunctionTriple& triple, const SubRect& rect, Axis axis) {
    const auto& axis_indices = axis == Axis::Row ? rect.rows : rect.cols;
    const int n = static_cast<int>(axis_indices.size());
    UnionFind uf(n);
    std::vector<WitnessEdge> spanning;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const int i = axis_indices[static_cast<size_t>(a)];
            const int j = axis_indices[static_cast<size_t>(b)];
            const auto w = relation_witness(triple, rect, axis, i, j);
            if (w && uf.merge(a, b)) {
                spanning.push_back(WitnessEdge{i, j, *w});
            }
        }
    }

    // Blocks keyed by smallest member: local indices are already sorted, so
    // grouping by root and ordering by first element is deterministic.
    std::map<int, std::vector<int>> by_root;
    for (int a = 0; a < n; ++a) {
        by_root[uf.find(a)].push_back(axis_indices[static_cast<size_t>(a)]);
    }
    std::vector<std::vector<int>> blocks;
    blocks.reserve(by_root.size());
    for (auto& [root, members] : by_root) blocks.push_back(std::move(members));
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.front() < rhs.front(); });

    Partition part;
    part.blocks = std::move(blocks);
    part.edges.resize(part.blocks.size());
    for (const auto& edge : spanning) {
        const int b = part.block_of(edge.a);
        part.edges[static_cast<size_t>(b)].push_back(edge);
    }
    return part;
}

bool is_monochromatic(const FunctionTriple& triple, const SubRect& rect) {
    const int first = triple.f.id_at(rect.rows.front(), rect.cols.front());
    for (int x : rect.rows) {
        for (int y : rect.cols) {
            if (triple.f.id_at(x, y) != first) return false;
        }
    }
    return true;
}

namespace {

// Orders one single-block partition's members so each element after the first
// is linked to an earlier one by a witnessed relation (breadth-first over the
// spanning edges).
std::vector<ChainLink> build_chain(const std::vector<int>& members,
                                   const std::vector<WitnessEdge>& edges) {
    std::map<int, std::vector<std::pair<int, int>>> adj; // node -> (peer, witness)
    for (const auto& e : edges) {
        adj[e.a].emplace_back(e.b, e.witness);
        adj[e.b].emplace_back(e.a, e.witness);
    }
    std::vector<ChainLink> chain;
    std::map<int, bool> seen;
    std::queue<int> frontier;
    const int seed = members.front();
    chain.push_back(ChainLink{seed, -1, -1});
    seen[seed] = true;
    frontier.push(seed);
    while (!frontier.empty()) {
        const int cur = frontier.front();
        frontier.pop();
        for (const auto& [peer, witness] : adj[cur]) {
            if (seen[peer]) continue;
            seen[peer] = true;
            chain.push_back(ChainLink{peer, cur, witness});
            frontier.push(peer);
        }
    }
    return chain;
}

ForbiddenWitness build_witness(const FunctionTriple& triple, const SubRect& rect,
                               const Partition& row_part, const Partition& col_part) {
    ForbiddenWitness w;
    w.rect = rect;
    w.row_chain = build_chain(row_part.blocks.front(), row_part.edges.front());
    w.col_chain = build_chain(col_part.blocks.front(), col_part.edges.front());
    const int first = triple.f.id_at(rect.rows.front(), rect.cols.front());
    w.cell_a = {rect.rows.front(), rect.cols.front()};
    for (int x : rect.rows) {
        for (int y : rect.cols) {
            if (triple.f.id_at(x, y) != first) {
                w.cell_b = {x, y};
                return w;
            }
        }
    }
    throw DomainError("build_witness called on a monochromatic rect");
}

struct Stuck {
    SubRect rect;
    Partition row_part;
    Partition col_part;
};

// Core recursion of the synthesis protocol. Returns the subtree for `rect` or
// the first stuck rect.
std::variant<ProtocolTree::NodePtr, Stuck> synthesize(const FunctionTriple& triple,
                                                      const SubRect& rect) {
    if (is_monochromatic(triple, rect)) {
        return ProtocolTree::make_leaf(triple.f.label_at(rect.rows.front(), rect.cols.front()));
    }

    Partition row_part = equivalence_partition(triple, rect, Axis::Row);
    if (row_part.blocks.size() >= 2) {
        std::map<int, BranchPmf> branch;
        std::vector<ProtocolTree::NodePtr> children;
        for (size_t b = 0; b < row_part.blocks.size(); ++b) {
            SubRect child_rect{row_part.blocks[b], rect.cols};
            for (int x : child_rect.rows) {
                branch[x] = BranchPmf{{static_cast<int>(b), Rational(1)}};
            }
            auto child = synthesize(triple, child_rect);
            if (std::holds_alternative<Stuck>(child)) return std::get<Stuck>(std::move(child));
            children.push_back(std::get<ProtocolTree::NodePtr>(std::move(child)));
        }
        return ProtocolTree::make_internal(Speaker::Alice, rect, std::move(branch),
                                           std::move(children));
    }

    Partition col_part = equivalence_partition(triple, rect, Axis::Col);
    if (col_part.blocks.size() >= 2) {
        std::map<int, BranchPmf> branch;
        std::vector<ProtocolTree::NodePtr> children;
        for (size_t b = 0; b < col_part.blocks.size(); ++b) {
            SubRect child_rect{rect.rows, col_part.blocks[b]};
            for (int y : child_rect.cols) {
                branch[y] = BranchPmf{{static_cast<int>(b), Rational(1)}};
            }
            auto child = synthesize(triple, child_rect);
            if (std::holds_alternative<Stuck>(child)) return std::get<Stuck>(std::move(child));
            children.push_back(std::get<ProtocolTree::NodePtr>(std::move(child)));
        }
        return ProtocolTree::make_internal(Speaker::Bob, rect, std::move(branch),
                                           std::move(children));
    }

    return Stuck{rect, std::move(row_part), std::move(col_part)};
}

} // namespace

Decision decide(const FunctionTriple& triple) {
    const SubRect full = SubRect::full(triple.x_size(), triple.y_size());
    auto result = synthesize(triple, full);
    if (std::holds_alternative<Stuck>(result)) {
        auto& stuck = std::get<Stuck>(result);
        return Decision(build_witness(triple, stuck.rect, stuck.row_part, stuck.col_part));
    }
    return Decision(ProtocolTree(std::get<ProtocolTree::NodePtr>(std::move(result))));
}

bool verify_witness(const FunctionTriple& triple, const SubRect& rect) {
    validate_subrect(rect, triple.x_size(), triple.y_size());
    if (is_monochromatic(triple, rect)) return false;
    if (equivalence_partition(triple, rect, Axis::Row).blocks.size() != 1) return false;
    return equivalence_partition(triple, rect, Axis::Col).blocks.size() == 1;
}

namespace {

json chain_to_json(const std::vector<ChainLink>& chain) {
    json out = json::array();
    for (const auto& link : chain) {
        json entry;
        entry["index"] = link.index;
        if (link.linked_to >= 0) {
            entry["linked_to"] = link.linked_to;
            entry["witness"] = link.witness;
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace

std::string serialize_decision(const Decision& decision) {
    json doc;
    if (decision.computable()) {
        doc["verdict"] = "computable";
        doc["protocol"] = json::parse(serialize_protocol(decision.protocol()));
    } else {
        const auto& w = decision.witness();
        doc["verdict"] = "forbidden";
        doc["rect"] = json{{"rows", w.rect.rows}, {"cols", w.rect.cols}};
        doc["chains"] = json{{"row", chain_to_json(w.row_chain)}, {"col", chain_to_json(w.col_chain)}};
        doc["distinct_cells"] =
            json::array({json::array({w.cell_a.first, w.cell_a.second}),
                         json::array({w.cell_b.first, w.cell_b.second})});
    }
    return doc.dump();
}

} // namespace privfn
