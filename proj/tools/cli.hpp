#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fhardy/test_function.hpp"

namespace fhardy::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kNonConvergence = 2, kUsage = 64 };

/// Malformed flag value or u_spec.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// `bump:c=<center>,w=<width>[,order=<k>]` | `hat:<n1>,<n2>,...` | `gsn:n=<n>`;
/// the truncated ground state takes its exponent from `alpha`.
TestFunction parse_u_spec(const std::string& spec, double alpha);

/// Runs one subcommand. `args` excludes the program name. The JSON report goes
/// to `out`, diagnostics and help to `err`; the return value is the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fhardy::cli
