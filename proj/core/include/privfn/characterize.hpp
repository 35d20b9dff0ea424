#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/protocol_tree.hpp"
#include "privfn/subrect.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace privfn {

enum class Axis { Row, Col };

// The single-step relation, restricted to rect. Rows are related through an
// h-difference, columns through a g-difference, both at equal f:
//   Row: x1 ~ x2  iff  exists y in rect.cols with h(x1,y) != h(x2,y) and f(x1,y) = f(x2,y)
//   Col: y1 ~ y2  iff  exists x in rect.rows with g(x,y1) != g(x,y2) and f(x,y1) = f(x,y2)
// Symmetric in (i, j).
bool related(const FunctionTriple& triple, const SubRect& rect, Axis axis, int i, int j);

// First opposite-axis index witnessing the relation, if any.
std::optional<int> relation_witness(const FunctionTriple& triple, const SubRect& rect,
                                    Axis axis, int i, int j);

// One union-find edge: related(a, b) witnessed by opposite-axis index
// `witness`.
struct WitnessEdge {
    int a;
    int b;
    int witness;
};

// Connected components of ~ on one axis of rect (the optimal decomposition:
// maximal block count). Blocks are ordered by smallest member; each
// non-singleton block carries a spanning set of witness edges.
struct Partition {
    std::vector<std::vector<int>> blocks;
    std::vector<std::vector<WitnessEdge>> edges; // parallel to blocks

    int block_of(int index) const; // -1 if absent
};

Partition equivalence_partition(const FunctionTriple& triple, const SubRect& rect, Axis axis);

// True iff f is constant on rect.
bool is_monochromatic(const FunctionTriple& triple, const SubRect& rect);

// Ordering certificate: element `index` enters the chain linked to an earlier
// element via `witness`. The seed element has linked_to = witness = -1.
struct ChainLink {
    int index;
    int linked_to;
    int witness;
};

// A sub-rectangle certified non-monochromatic with single row- and
// column-equivalence classes. verify_witness(triple, rect) holds.
struct ForbiddenWitness {
    SubRect rect;
    std::pair<int, int> cell_a; // two cells of rect ...
    std::pair<int, int> cell_b; // ... with different f values
    std::vector<ChainLink> row_chain;
    std::vector<ChainLink> col_chain;
};

// Either a synthesized protocol tree or a forbidden-submatrix witness.
class Decision {
public:
    explicit Decision(ProtocolTree tree) : result_(std::move(tree)) {}
    explicit Decision(ForbiddenWitness witness) : result_(std::move(witness)) {}

    bool computable() const { return std::holds_alternative<ProtocolTree>(result_); }
    const ProtocolTree& protocol() const { return std::get<ProtocolTree>(result_); }
    const ForbiddenWitness& witness() const { return std::get<ForbiddenWitness>(result_); }

private:
    std::variant<ProtocolTree, ForbiddenWitness> result_;
};

// The decision procedure. Recurses on the full rect: a monochromatic rect
// becomes a leaf carrying the constant f value; otherwise the row partition is
// attempted first (Alice speaks), then the column partition (Bob speaks);
// single-block partitions are skipped as zero-information messages. A
// non-monochromatic rect with both partitions single-block is forbidden by
// definition and is returned as the witness, unminimized.
Decision decide(const FunctionTriple& triple);

// True iff rect is non-monochromatic and both axis partitions, restricted to
// rect, have exactly one block.
bool verify_witness(const FunctionTriple& triple, const SubRect& rect);

// {"verdict":"computable","protocol":...} |
// {"verdict":"forbidden","rect":{...},"chains":...,"distinct_cells":...}
std::string serialize_decision(const Decision& decision);

} // namespace privfn
