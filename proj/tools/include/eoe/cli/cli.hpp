#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eoe::cli {

/// Exit codes: 0 success, 1 failed verification or runtime error, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eoe::cli
