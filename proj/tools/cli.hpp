#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transvecta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInvariant = 3;

/// Runs the command line `args` (without the program name). Records go to
/// `out` unless --out names a file; diagnostics go to `err` as single lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transvecta::cli
