#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace privfn::cli {

// Runs one subcommand. args excludes the program name. Returns the process
// exit code: 0 = affirmative verdict (computable / secure / feasible),
// 1 = negative verdict, 2 = usage or input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace privfn::cli
