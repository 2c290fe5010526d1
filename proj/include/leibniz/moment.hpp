#pragma once

#include <string>
#include <vector>

#include "leibniz/linear.hpp"

namespace leibniz {

/// Moment data of a nonzero bracket together with the criticality test
/// M = c I + D, D a derivation.
struct MomentReport {
  HermitianMap M;
  double norm_sq = 0.0;
  double F = 0.0;
  /// tr(M^2) / tr(M).
  double c = 0.0;
  /// M - c I.
  HermitianMap D;
  /// Distance from M to span{I} + (Der(mu) cap Hermitian), relative to |M|.
  double residual_decomp = 0.0;
  /// Component of M.mu orthogonal to mu, relative to |M| |mu|.
  double residual_tangent = 0.0;
  /// |D.mu| / (|D| |mu|), 0 when D vanishes.
  double derivation_defect = 0.0;
  bool is_critical = false;
};

/// Eigenvalue type (k_1 < ... < k_r; d_1, ..., d_r) of a critical point.
struct CriticalType {
  std::vector<long long> ks;
  std::vector<int> ds;
  /// Positive c with c * eig(D) ~ ks.
  double scale = 1.0;

  std::size_t dim() const;
  bool is_zero() const { return ks.size() == 1 && ks[0] == 0; }

  /// "(k1<k2<...;d1,d2,...)".
  std::string to_string() const;

  /// Same ks and ds; the scale is ignored.
  bool same_type(const CriticalType& other) const { return ks == other.ks && ds == other.ds; }
};

/// Builds a type from unreduced data: drops zero multiplicities, merges equal
/// entries, sorts and divides by the gcd.
CriticalType make_type(std::vector<long long> ks, std::vector<int> ds);

/// M = 2 sum L L* - 2 sum L* L - 2 sum R* R over an orthonormal basis.
HermitianMap moment_matrix(const Bracket& mu);

/// F = tr(M^2) / |mu|^4. Throws ZeroBracket.
double functional_value(const Bracket& mu);

MomentReport criticality_decompose(const Bracket& mu, double tol = kCriticalityTol);

/// Integer eigenvalue type of D. Throws IrrationalType when no admissible
/// scale exists with denominators up to max_denominator.
CriticalType critical_type(const HermitianMap& d, double tol = kTypeTol,
                           int max_denominator = kMaxDenominator);

/// 4 / (n - (sum k d)^2 / sum k^2 d), or 4/n for (0;n).
/// Throws DegenerateType when the denominator vanishes.
double critical_value_formula(const CriticalType& type, std::size_t n);

/// Best rational approximation p/q of x with 1 <= q <= max_denominator,
/// from continued-fraction convergents and semiconvergents.
struct Rational {
  long long num = 0;
  long long den = 1;
};
Rational best_rational(double x, long long max_denominator);

}  // namespace leibniz
