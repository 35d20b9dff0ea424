#pragma once

#include "privfn/rational.hpp"
#include "privfn/subrect.hpp"

#include <compare>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace privfn {

enum class Speaker { Alice, Bob };

Speaker other(Speaker s);
char speaker_tag(Speaker s); // 'A' / 'B'

// One protocol execution: the child indices chosen along a root-to-leaf path,
// plus the leaf's output. The output counts as the final message, so the
// transcript contains the function computed.
struct Transcript {
    std::vector<int> messages;
    std::string output;

    auto operator<=>(const Transcript&) const = default;
};

std::string to_string(const Transcript& t);

using TranscriptPmf = std::map<Transcript, Rational>;

// Branch row: pmf over child indices for one speaker-axis input.
using BranchPmf = std::vector<std::pair<int, Rational>>;

// Rooted alternating-speaker tree. An internal node names the speaker, the
// sub-rectangle of inputs that can reach it, and for each of the speaker's
// inputs in that rect a (possibly randomized) pmf over children. Leaves carry
// the output label. Consecutive same-speaker nodes are allowed: constant
// messages are elided, not modeled.
class ProtocolTree {
public:
    struct Node;
    using NodePtr = std::unique_ptr<Node>;

    struct Node {
        // leaf payload (children empty)
        std::string output;

        // internal payload
        Speaker speaker = Speaker::Alice;
        SubRect rect;
        std::map<int, BranchPmf> branch; // speaker-axis index -> pmf over children
        std::vector<NodePtr> children;

        bool is_leaf() const { return children.empty(); }
    };

    ProtocolTree() = default;
    explicit ProtocolTree(NodePtr root) : root_(std::move(root)) {}
    ProtocolTree(ProtocolTree&&) = default;
    ProtocolTree& operator=(ProtocolTree&&) = default;
    ProtocolTree(const ProtocolTree& other) : root_(clone(other.root_)) {}
    ProtocolTree& operator=(const ProtocolTree& other);

    bool empty() const { return root_ == nullptr; }
    const Node& root() const;

    static NodePtr make_leaf(std::string output);
    static NodePtr make_internal(Speaker speaker, SubRect rect,
                                 std::map<int, BranchPmf> branch,
                                 std::vector<NodePtr> children);

private:
    static NodePtr clone(const NodePtr& node);
    NodePtr root_;
};

// Structural checks: branch rows cover every speaker-axis index of the rect,
// pmfs sum to exactly 1 with nonnegative entries, child indices in range,
// child rects nest inside the parent. Throws DomainError on violation.
void validate_tree(const ProtocolTree& tree, int n_rows, int n_cols);

// True when every branch row is a point mass.
bool deterministic(const ProtocolTree& tree);

// Root-to-leaf walk; at each internal node the speaker draws a child from its
// own branch row. The deterministic overload throws on a randomized node.
Transcript evaluate(const ProtocolTree& tree, int x, int y);
Transcript evaluate(const ProtocolTree& tree, int x, int y, std::mt19937_64& rng);

// Exact transcript distribution for one input pair: the product of branch
// probabilities along each root-to-leaf path. Sums to exactly 1.
TranscriptPmf transcript_pmf(const ProtocolTree& tree, int x, int y);

// JSON: nested {"speaker":"A","rect":...,"branch":{"<idx>":[[child,"p/q"],...]},
// "children":[...]} with {"leaf":"<value>"} at the leaves.
std::string serialize_protocol(const ProtocolTree& tree);
ProtocolTree parse_protocol(const std::string& document);

// Graphviz export: one graph node per tree node, edges labeled with the
// message index.
std::string to_dot(const ProtocolTree& tree);

} // namespace privfn
