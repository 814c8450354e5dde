#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace powex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Raised for malformed flag values found after parsing (bad grid, unknown
/// order name, ...); mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "start:stop:step", endpoints inclusive within half a step; a bare number
/// is a one-point grid.
std::vector<double> parse_grid(std::string_view spec);

/// Comma-separated numbers, e.g. "1e3,1e6".
std::vector<double> parse_number_list(std::string_view spec);

std::vector<std::string> split_list(std::string_view spec);

/// Runs one `powex` invocation; args excludes the program name.
/// Exit codes: 0 success, 1 domain/computation error, 2 usage error.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace powex::cli
