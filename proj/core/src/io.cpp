#include "privfn/io.hpp"

#include "privfn/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace privfn {

namespace {

using json = nlohmann::ordered_json;

json parse_document(const std::string& document) {
    json doc = json::parse(document, nullptr, false);
    if (doc.is_discarded()) throw ParseError("document is not valid JSON");
    return doc;
}

std::vector<std::string> string_array(const json& doc, const std::string& path) {
    const json* node = &doc;
    if (!node->contains(path)) throw ParseError(path + ": missing field");
    node = &(*node)[path];
    if (!node->is_array() || node->empty()) throw ParseError(path + ": expected a nonempty array");
    std::vector<std::string> out;
    out.reserve(node->size());
    for (size_t i = 0; i < node->size(); ++i) {
        const json& item = (*node)[i];
        if (!item.is_string()) {
            throw ParseError(path + "[" + std::to_string(i) + "]: expected a string");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::vector<std::vector<std::string>> table_field(const json& doc, const std::string& path,
                                                  int rows, int cols) {
    if (!doc.contains(path)) throw ParseError(path + ": missing field");
    const json& node = doc[path];
    if (!node.is_array() || static_cast<int>(node.size()) != rows) {
        throw ParseError(path + ": expected " + std::to_string(rows) + " rows");
    }
    std::vector<std::vector<std::string>> out;
    out.reserve(node.size());
    for (size_t x = 0; x < node.size(); ++x) {
        const json& row = node[x];
        const std::string row_path = path + "[" + std::to_string(x) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            throw ParseError(row_path + ": expected " + std::to_string(cols) + " entries, got " +
                             std::to_string(row.is_array() ? row.size() : 0));
        }
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (size_t y = 0; y < row.size(); ++y) {
            const json& cell = row[y];
            if (!cell.is_string()) {
                throw ParseError(row_path + "[" + std::to_string(y) + "]: expected a string");
            }
            cells.push_back(cell.get<std::string>());
        }
        out.push_back(std::move(cells));
    }
    return out;
}

Alphabet alphabet_field(const json& doc, const std::string& path, const Limits& limits) {
    auto symbols = string_array(doc, path);
    if (static_cast<int>(symbols.size()) > limits.max_alphabet) {
        throw CapError(path + ": alphabet size exceeds the configured cap");
    }
    try {
        return Alphabet(std::move(symbols));
    } catch (const DomainError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace

FunctionTriple parse_triple(const std::string& document, const Limits& limits) {
    const json doc = parse_document(document);
    Alphabet x = alphabet_field(doc, "x_alphabet", limits);
    Alphabet y = alphabet_field(doc, "y_alphabet", limits);
    const int rows = x.size();
    const int cols = y.size();
    ValueTable f(rows, cols, table_field(doc, "f", rows, cols));
    ValueTable g(rows, cols, table_field(doc, "g", rows, cols));
    ValueTable h(rows, cols, table_field(doc, "h", rows, cols));
    return FunctionTriple(std::move(x), std::move(y), std::move(f), std::move(g), std::move(h));
}

std::string serialize_triple(const FunctionTriple& triple) {
    json doc;
    doc["x_alphabet"] = triple.x_alphabet.symbols();
    doc["y_alphabet"] = triple.y_alphabet.symbols();
    doc["f"] = triple.f.to_cells();
    doc["g"] = triple.g.to_cells();
    doc["h"] = triple.h.to_cells();
    return doc.dump();
}

JointDistribution parse_distribution(const std::string& document, const Limits& limits) {
    const json doc = parse_document(document);
    Alphabet x = alphabet_field(doc, "x_alphabet", limits);
    Alphabet y = alphabet_field(doc, "y_alphabet", limits);
    const auto cells = table_field(doc, "pmf", x.size(), y.size());
    std::vector<Rational> pmf;
    pmf.reserve(static_cast<size_t>(x.size()) * static_cast<size_t>(y.size()));
    Rational sum = 0;
    for (size_t xi = 0; xi < cells.size(); ++xi) {
        for (size_t yi = 0; yi < cells[xi].size(); ++yi) {
            const std::string path = "pmf[" + std::to_string(xi) + "][" + std::to_string(yi) + "]";
            Rational p;
            try {
                p = parse_rational(cells[xi][yi]);
            } catch (const ParseError& e) {
                throw ParseError(path + ": " + e.what());
            }
            if (p < 0) throw ParseError(path + ": negative probability");
            sum += p;
            pmf.push_back(std::move(p));
        }
    }
    if (sum != 1) {
        throw ParseError("pmf: entries sum to " + format_rational(sum) + ", expected 1");
    }
    return JointDistribution(std::move(x), std::move(y), std::move(pmf));
}

std::string serialize_distribution(const JointDistribution& dist) {
    json doc;
    doc["x_alphabet"] = dist.x_alphabet().symbols();
    doc["y_alphabet"] = dist.y_alphabet().symbols();
    json rows = json::array();
    for (int x = 0; x < dist.x_size(); ++x) {
        json row = json::array();
        for (int y = 0; y < dist.y_size(); ++y) {
            row.push_back(format_rational(dist.p(x, y)));
        }
        rows.push_back(std::move(row));
    }
    doc["pmf"] = std::move(rows);
    return doc.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace privfn
