#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expthresh::cli {

/// Exit codes.
inline constexpr int ok = 0;
inline constexpr int error = 1;
inline constexpr int chain_violation = 2;
inline constexpr int invalid_certificate = 3;

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; errors are JSON objects on `out` as well.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace expthresh::cli
