#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matchlab {

/// Entry point of the matchlab tool. Exit codes: 0 success, 1 a checked
/// property failed (analyze, oracle), 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace matchlab
