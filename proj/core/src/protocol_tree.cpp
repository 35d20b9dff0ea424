#include "privfn/protocol_tree.hpp"

#include "privfn/errors.hpp"
#include "privfn/sampling.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace privfn {

using json = nlohmann::ordered_json;

Speaker other(Speaker s) {
    return s == Speaker::Alice ? Speaker::Bob : Speaker::Alice;
}

char speaker_tag(Speaker s) {
    return s == Speaker::Alice ? 'A' : 'B';
}

std::string to_string(const Transcript& t) {
    std::ostringstream ss;
    ss << '[';
    for (size_t i = 0; i < t.messages.size(); ++i) {
        if (i) ss << ',';
        ss << t.messages[i];
    }
    ss << "]->" << t.output;
    return ss.str();
}

ProtocolTree& ProtocolTree::operator=(const ProtocolTree& other) {
    if (this != &other) root_ = clone(other.root_);
    return *this;
}

const ProtocolTree::Node& ProtocolTree::root() const {
    if (!root_) throw DomainError("empty protocol tree");
    return *root_;
}

ProtocolTree::NodePtr ProtocolTree::make_leaf(std::string output) {
    auto node = std::make_unique<Node>();
    node->output = std::move(output);
    return node;
}

ProtocolTree::NodePtr ProtocolTree::make_internal(Speaker speaker, SubRect rect,
                                                  std::map<int, BranchPmf> branch,
                                                  std::vector<NodePtr> children) {
    auto node = std::make_unique<Node>();
    node->speaker = speaker;
    node->rect = std::move(rect);
    node->branch = std::move(branch);
    node->children = std::move(children);
    if (node->children.empty()) throw DomainError("internal node needs children");
    return node;
}

ProtocolTree::NodePtr ProtocolTree::clone(const NodePtr& node) {
    if (!node) return nullptr;
    auto copy = std::make_unique<Node>();
    copy->output = node->output;
    copy->speaker = node->speaker;
    copy->rect = node->rect;
    copy->branch = node->branch;
    copy->children.reserve(node->children.size());
    for (const auto& child : node->children) copy->children.push_back(clone(child));
    return copy;
}

namespace {

void validate_node(const ProtocolTree::Node& node, int n_rows, int n_cols) {
    if (node.is_leaf()) return;
    validate_subrect(node.rect, n_rows, n_cols);
    const auto& speaker_axis = node.speaker == Speaker::Alice ? node.rect.rows : node.rect.cols;
    for (int idx : speaker_axis) {
        auto it = node.branch.find(idx);
        if (it == node.branch.end()) {
            throw DomainError("branch row missing for speaker index " + std::to_string(idx));
        }
        Rational sum = 0;
        for (const auto& [child, p] : it->second) {
            if (child < 0 || child >= static_cast<int>(node.children.size())) {
                throw DomainError("branch child index out of range");
            }
            if (p < 0) throw DomainError("branch probability is negative");
            sum += p;
        }
        if (sum != 1) {
            throw DomainError("branch pmf for index " + std::to_string(idx) + " sums to " +
                              format_rational(sum));
        }
    }
    for (const auto& [idx, pmf] : node.branch) {
        if (std::find(speaker_axis.begin(), speaker_axis.end(), idx) == speaker_axis.end()) {
            throw DomainError("branch row for index outside the rect: " + std::to_string(idx));
        }
        (void)pmf;
    }
    for (const auto& child : node.children) {
        if (!child) throw DomainError("null child node");
        if (!child->is_leaf()) {
            // child rect must nest inside the parent
            for (int r : child->rect.rows) {
                if (!node.rect.contains_row(r)) throw DomainError("child rect escapes parent rows");
            }
            for (int c : child->rect.cols) {
                if (!node.rect.contains_col(c)) throw DomainError("child rect escapes parent cols");
            }
        }
        validate_node(*child, n_rows, n_cols);
    }
}

const BranchPmf& branch_row(const ProtocolTree::Node& node, int x, int y) {
    const int own = node.speaker == Speaker::Alice ? x : y;
    auto it = node.branch.find(own);
    if (it == node.branch.end()) {
        throw DomainError("input outside the node's rect (speaker index " + std::to_string(own) + ")");
    }
    return it->second;
}

} // namespace

void validate_tree(const ProtocolTree& tree, int n_rows, int n_cols) {
    validate_node(tree.root(), n_rows, n_cols);
}

bool deterministic(const ProtocolTree& tree) {
    bool det = true;
    std::function<void(const ProtocolTree::Node&)> walk = [&](const ProtocolTree::Node& node) {
        if (node.is_leaf()) return;
        for (const auto& [idx, pmf] : node.branch) {
            int positive = 0;
            for (const auto& [child, p] : pmf) {
                if (p > 0) ++positive;
            }
            if (positive != 1) det = false;
            (void)idx;
        }
        for (const auto& child : node.children) walk(*child);
    };
    walk(tree.root());
    return det;
}

namespace {

Transcript evaluate_impl(const ProtocolTree& tree, int x, int y, std::mt19937_64* rng) {
    const ProtocolTree::Node* node = &tree.root();
    if (!node->is_leaf() && !node->rect.contains(x, y)) {
        throw DomainError("input outside the protocol's root rect");
    }
    Transcript t;
    while (!node->is_leaf()) {
        const BranchPmf& pmf = branch_row(*node, x, y);
        int choice;
        if (pmf.size() == 1) {
            choice = pmf.front().first;
        } else {
            // collapse point masses written with explicit zeros
            int positive = 0;
            int last = -1;
            for (const auto& [child, p] : pmf) {
                if (p > 0) {
                    ++positive;
                    last = child;
                }
            }
            if (positive == 1) {
                choice = last;
            } else if (rng == nullptr) {
                throw DomainError("randomized node reached without a sampler");
            } else {
                choice = sample_rational_pmf(pmf, *rng);
            }
        }
        t.messages.push_back(choice);
        node = node->children.at(static_cast<size_t>(choice)).get();
    }
    t.output = node->output;
    return t;
}

} // namespace

Transcript evaluate(const ProtocolTree& tree, int x, int y) {
    return evaluate_impl(tree, x, y, nullptr);
}

Transcript evaluate(const ProtocolTree& tree, int x, int y, std::mt19937_64& rng) {
    return evaluate_impl(tree, x, y, &rng);
}

TranscriptPmf transcript_pmf(const ProtocolTree& tree, int x, int y) {
    const ProtocolTree::Node& root = tree.root();
    if (!root.is_leaf() && !root.rect.contains(x, y)) {
        throw DomainError("input outside the protocol's root rect");
    }
    TranscriptPmf out;
    std::vector<int> path;
    std::function<void(const ProtocolTree::Node&, Rational)> walk =
        [&](const ProtocolTree::Node& node, Rational prob) {
            if (node.is_leaf()) {
                out[Transcript{path, node.output}] += prob;
                return;
            }
            for (const auto& [child, p] : branch_row(node, x, y)) {
                if (p == 0) continue;
                path.push_back(child);
                walk(*node.children.at(static_cast<size_t>(child)), prob * p);
                path.pop_back();
            }
        };
    walk(root, Rational(1));
    return out;
}

// ---------------------------------------------------------------------------
// JSON + DOT
// ---------------------------------------------------------------------------

namespace {

json rect_to_json(const SubRect& rect) {
    return json{{"rows", rect.rows}, {"cols", rect.cols}};
}

SubRect rect_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols")) {
        throw ParseError("rect: expected {\"rows\":[...],\"cols\":[...]}");
    }
    SubRect rect;
    for (const auto& r : doc["rows"]) rect.rows.push_back(r.get<int>());
    for (const auto& c : doc["cols"]) rect.cols.push_back(c.get<int>());
    return rect;
}

json node_to_json(const ProtocolTree::Node& node) {
    if (node.is_leaf()) {
        return json{{"leaf", node.output}};
    }
    json branch = json::object();
    for (const auto& [idx, pmf] : node.branch) {
        json entries = json::array();
        for (const auto& [child, p] : pmf) {
            entries.push_back(json::array({child, format_rational(p)}));
        }
        branch[std::to_string(idx)] = std::move(entries);
    }
    json children = json::array();
    for (const auto& child : node.children) children.push_back(node_to_json(*child));
    return json{{"speaker", std::string(1, speaker_tag(node.speaker))},
                {"rect", rect_to_json(node.rect)},
                {"branch", std::move(branch)},
                {"children", std::move(children)}};
}

ProtocolTree::NodePtr node_from_json(const json& doc, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path + ": expected an object");
    if (doc.contains("leaf")) {
        if (!doc["leaf"].is_string()) throw ParseError(path + ".leaf: expected a string");
        return ProtocolTree::make_leaf(doc["leaf"].get<std::string>());
    }
    for (const char* field : {"speaker", "rect", "branch", "children"}) {
        if (!doc.contains(field)) throw ParseError(path + ": missing field \"" + field + "\"");
    }
    const std::string spk = doc["speaker"].get<std::string>();
    if (spk != "A" && spk != "B") throw ParseError(path + ".speaker: expected \"A\" or \"B\"");
    SubRect rect;
    try {
        rect = rect_from_json(doc["rect"]);
    } catch (const ParseError& e) {
        throw ParseError(path + ".rect: " + e.what());
    }
    std::map<int, BranchPmf> branch;
    for (const auto& [key, entries] : doc["branch"].items()) {
        int idx;
        try {
            idx = std::stoi(key);
        } catch (...) {
            throw ParseError(path + ".branch: non-integer key \"" + key + "\"");
        }
        BranchPmf pmf;
        if (!entries.is_array()) throw ParseError(path + ".branch[" + key + "]: expected an array");
        for (const auto& entry : entries) {
            if (!entry.is_array() || entry.size() != 2) {
                throw ParseError(path + ".branch[" + key + "]: expected [child,\"p/q\"] pairs");
            }
            pmf.emplace_back(entry[0].get<int>(), parse_rational(entry[1].get<std::string>()));
        }
        branch.emplace(idx, std::move(pmf));
    }
    std::vector<ProtocolTree::NodePtr> children;
    const json& kids = doc["children"];
    if (!kids.is_array() || kids.empty()) throw ParseError(path + ".children: expected a nonempty array");
    for (size_t i = 0; i < kids.size(); ++i) {
        children.push_back(node_from_json(kids[i], path + ".children[" + std::to_string(i) + "]"));
    }
    return ProtocolTree::make_internal(spk == "A" ? Speaker::Alice : Speaker::Bob, std::move(rect),
                                       std::move(branch), std::move(children));
}

std::string rect_label(const SubRect& rect) {
    std::ostringstream ss;
    ss << "rows{";
    for (size_t i = 0; i < rect.rows.size(); ++i) ss << (i ? "," : "") << rect.rows[i];
    ss << "} cols{";
    for (size_t i = 0; i < rect.cols.size(); ++i) ss << (i ? "," : "") << rect.cols[i];
    ss << "}";
    return ss.str();
}

} // namespace

std::string serialize_protocol(const ProtocolTree& tree) {
    return node_to_json(tree.root()).dump();
}

ProtocolTree parse_protocol(const std::string& document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw ParseError("protocol document is not valid JSON");
    return ProtocolTree(node_from_json(doc, "$"));
}

std::string to_dot(const ProtocolTree& tree) {
    std::ostringstream ss;
    ss << "digraph protocol {\n";
    int counter = 0;
    std::function<int(const ProtocolTree::Node&)> emit = [&](const ProtocolTree::Node& node) -> int {
        const int id = counter++;
        if (node.is_leaf()) {
            ss << "  n" << id << " [shape=box,label=\"out=" << node.output << "\"];\n";
            return id;
        }
        ss << "  n" << id << " [label=\"" << speaker_tag(node.speaker) << ": "
           << rect_label(node.rect) << "\"];\n";
        for (size_t c = 0; c < node.children.size(); ++c) {
            const int child_id = emit(*node.children[c]);
            ss << "  n" << id << " -> n" << child_id << " [label=\"" << c << "\"];\n";
        }
        return id;
    };
    emit(tree.root());
    ss << "}\n";
    return ss.str();
}

} // namespace privfn
