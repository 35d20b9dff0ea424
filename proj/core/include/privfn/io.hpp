#pragma once

#include "privfn/function_triple.hpp"
#include "privfn/joint_distribution.hpp"
#include "privfn/limits.hpp"

#include <string>

namespace privfn {

// Triple document:
//   {"x_alphabet":[...], "y_alphabet":[...], "f":[[...]], "g":[[...]], "h":[[...]]}
// with row-major tables (row = x). Errors carry the offending path.
FunctionTriple parse_triple(const std::string& document, const Limits& limits = {});
std::string serialize_triple(const FunctionTriple& triple);

// Distribution document:
//   {"x_alphabet":[...], "y_alphabet":[...], "pmf":[["1/4", ...], ...]}
// Entries are "a/b" or integer strings; the sum must be exactly 1.
JointDistribution parse_distribution(const std::string& document, const Limits& limits = {});
std::string serialize_distribution(const JointDistribution& dist);

std::string read_file(const std::string& path);

} // namespace privfn
