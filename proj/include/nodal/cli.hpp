#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nodal::cli {

/// Exit codes: 0 success / factorial / no violations, 2 input error,
/// 10 non-factorial or not separable, 20 fuzz violations, 1 internal
/// failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNegative = 10;
inline constexpr int kExitViolations = 20;

/// Runs one command line (without argv[0]); JSON report on `out`, human
/// summary on `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int main(int argc, char** argv);

}  // namespace nodal::cli
