#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/io.hpp"
#include "privfn/joint_distribution.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) {
    return std::string(PRIVFN_FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& name) {
    return privfn::read_file(path(name));
}

inline privfn::FunctionTriple triple(const std::string& name) {
    return privfn::parse_triple(slurp(name));
}

inline privfn::JointDistribution distribution(const std::string& name) {
    return privfn::parse_distribution(slurp(name));
}

// Triple built from per-cell lambdas over small index alphabets "0","1",...
template <typename F, typename G, typename H>
privfn::FunctionTriple make_triple(int xs, int ys, F f, G g, H h) {
    std::vector<std::string> xsym, ysym;
    for (int i = 0; i < xs; ++i) xsym.push_back(std::to_string(i));
    for (int j = 0; j < ys; ++j) ysym.push_back(std::to_string(j));
    return privfn::FunctionTriple(
        privfn::Alphabet(xsym), privfn::Alphabet(ysym),
        privfn::ValueTable::from_fn(xs, ys, [&](int x, int y) { return std::to_string(f(x, y)); }),
        privfn::ValueTable::from_fn(xs, ys, [&](int x, int y) { return std::to_string(g(x, y)); }),
        privfn::ValueTable::from_fn(xs, ys, [&](int x, int y) { return std::to_string(h(x, y)); }));
}

} // namespace fixtures
