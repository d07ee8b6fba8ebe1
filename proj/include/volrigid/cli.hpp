#ifndef VOLRIGID_CLI_HPP
#define VOLRIGID_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace volrigid::cli {

constexpr int exit_ok = 0;
constexpr int exit_domain_error = 1;
constexpr int exit_usage_error = 2;

/// Runs one command line. `args` excludes the program name. Results go to
/// `out`; diagnostics, warnings and usage text go to `err`. `in` is read
/// when a command is given `--input -`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace volrigid::cli

#endif
