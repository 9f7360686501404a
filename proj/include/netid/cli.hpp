#ifndef NETID_CLI_HPP
#define NETID_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace netid::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kAssertionFailed = 3;
inline constexpr int kPreconditionFailed = 4;

/// Runs one command line (without the program name). Reports go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace netid::cli

#endif
