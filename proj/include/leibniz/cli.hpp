#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "leibniz/io.hpp"

namespace leibniz::cli {

struct GlobalOptions {
  double tol = kCriticalityTol;
  bool json = false;
  int max_denominator = kMaxDenominator;
};

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInputError = 2;

/// Identity flags and residuals of mu (a zero bracket satisfies every identity).
io::Json check_report(const Bracket& mu);

/// Moment report, critical type, structure profile and, at critical symmetric
/// Leibniz points, the structure verdict.
io::Json analyze_report(const Bracket& mu, const GlobalOptions& opts, const std::string& name = {});

/// "2", "-0.5", "i", "1+i", "0.25-3i".
Complex parse_param(const std::string& text);

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leibniz::cli
