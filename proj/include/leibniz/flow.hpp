#pragma once

#include <string>
#include <vector>

#include "leibniz/moment.hpp"

namespace leibniz {

struct FlowParams {
  /// Initial trial step, divided by |M| at every iteration.
  double step0 = 0.1;
  double armijo_c = 1e-4;
  double shrink = 0.5;
  std::size_t max_iter = 50'000;
  double tol = kCriticalityTol;
  unsigned long long seed = 0;
  /// Each line search starts from min(step0, growth * last accepted step).
  double growth = 2.0;
  /// Trial steps below this multiple of step0/|M| count as a line-search failure.
  double min_step_ratio = 1e-14;
};

struct FlowTrace {
  Bracket final_bracket;  // unit norm
  std::vector<double> F_history;
  std::vector<double> residual_history;
  std::size_t iterations = 0;
  bool converged = false;
  MomentReport final_report;
  /// Condition number of the accumulated change of basis from the start.
  double accumulated_condition = 1.0;
  /// The start bracket was not critical and the change of basis degenerated,
  /// so the limit may lie outside the orbit.
  bool limit_may_leave_orbit = false;
  std::string diagnostics;
};

/// Descent of F within GL(n).mu0: mu <- exp(-h M_mu).mu / |.|, whose
/// tangent at h = 0 is minus the sphere-tangential part of M_mu.mu, with
/// Armijo backtracking on h.
FlowTrace descend(const Bracket& mu0, const FlowParams& params = {});

/// exp(A).mu for a seeded random complex A with Frobenius norm `magnitude`.
Bracket perturb_in_orbit(const Bracket& mu, double magnitude, unsigned long long seed);

/// Seeded complex Gaussian matrix and Haar-distributed unitary, for tests and tools.
Matrix random_matrix(std::size_t n, unsigned long long seed);
Matrix random_unitary(std::size_t n, unsigned long long seed);

}  // namespace leibniz
