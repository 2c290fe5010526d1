#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leibniz/moment.hpp"

namespace leibniz {

struct StructureProfile {
  std::vector<std::size_t> derived_dims;        // l^(0), l^(1), ...
  std::vector<std::size_t> lower_central_dims;  // ^1 l, ^2 l, ...
  std::size_t center_dim = 0;
  Subspace center;
  bool is_solvable = false;
  bool is_nilpotent = false;
};

/// Derived and lower central series, stopped at rank 0 or at the first
/// repeated rank (the repeated rank is listed once more).
StructureProfile structure_profile(const Bracket& mu, double tol = kRankTol);

/// {x : L_x = R_x = 0}.
Subspace center(const Bracket& mu, double tol = kRankTol);

struct Eigenspace {
  double eigenvalue = 0.0;
  Subspace space;
};

struct GradingDecomposition {
  Subspace zero_part;
  Subspace positive_part;
  Subspace negative_part;
  std::vector<Eigenspace> eigenspaces;  // ascending eigenvalues
};

/// Eigenspace splitting of a derivation D of mu. Throws NotDerivation when
/// |D.mu| > tol |D| |mu|. Eigenvalues closer than cluster_tol * max(1, |D|)
/// are merged.
GradingDecomposition grading_decomposition(const Bracket& mu, const HermitianMap& d,
                                           double tol = kCriticalityTol,
                                           double cluster_tol = kTypeTol);

struct ClauseResult {
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

struct NilradicalCheck {
  ClauseResult clause;
  double ideal_residual = 0.0;
  bool nilpotent = false;
  /// The restriction of mu to l_+ vanishes; no projective class exists.
  bool degenerate_abelian = false;
  std::optional<CriticalType> restricted_type;
  std::optional<CriticalType> expected_type;
};

struct StructureVerdict {
  GradingDecomposition grading;
  ClauseResult adjoint_closed;  // (L_A)*, (R_A)* derivations for A in l_0
  ClauseResult l0_reductive;
  ClauseResult center_normal;   // L_Z, R_Z normal for Z in z(l_0)
  NilradicalCheck nilradical;
  std::size_t l0_center_dim = 0;
  std::size_t l0_semisimple_dim = 0;
  double killing_min_singular = 0.0;
  /// min over sampled unit X in l_- of |[R_X, R_X*]|; empty when l_- = 0.
  std::optional<double> negative_part_min_commutator;
  bool all_pass() const {
    return adjoint_closed.pass && l0_reductive.pass && center_normal.pass &&
           nilradical.clause.pass;
  }
};

struct StructureOptions {
  double tol = kCriticalityTol;
  double type_tol = kTypeTol;
  int max_denominator = kMaxDenominator;
  std::size_t negative_samples = 50;
  unsigned long long seed = 2024;
};

/// Numerical check of the four structural clauses at a critical symmetric
/// Leibniz point. Throws PreconditionViolation when report is not critical or
/// mu is not symmetric Leibniz.
StructureVerdict verify_structure_theorem(const Bracket& mu, const MomentReport& report,
                                          StructureOptions opts = {});

/// Largest |mu(V_a, V_b) - proj_{V_{a+b}} mu(V_a, V_b)| over eigenspace pairs;
/// mu(V_a, V_b) must vanish when a + b is not an eigenvalue.
double grading_product_residual(const Bracket& mu, const GradingDecomposition& grading,
                                double cluster_tol = kTypeTol);

/// Residual of span(basis) being a two-sided ideal.
double ideal_residual(const Bracket& mu, const Subspace& space);

}  // namespace leibniz
