#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leibniz/moment.hpp"

namespace leibniz {

class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string clause, double residual);
  const std::string& clause() const { return clause_; }
  double residual() const { return residual_; }

 private:
  std::string clause_;
  double residual_;
};

class NotSymmetricLeibniz : public Error {
 public:
  NotSymmetricLeibniz(double left_defect, double right_defect);
  double left_defect;
  double right_defect;
};

class GramNotPositive : public Error {
 public:
  explicit GramNotPositive(double min_eigenvalue);
  double min_eigenvalue;
};

class NotLie : public Error {
 public:
  using Error::Error;
};

/// The assembled bracket built fine but failed the a posteriori check.
class CertificationFailure : public Error {
 public:
  using Error::Error;
};

/// Lie bracket on the extending space C^{d1}. The first semisimple_dim
/// generators span the semisimple ideal h, the remaining ones the center z.
struct ReductivePart {
  Bracket bracket;
  std::size_t semisimple_dim = 0;
};

/// Degenerate core lambda = 0 on C^m, where the theorems do not apply as
/// stated. The caller fixes c_lambda < 0 and D_lambda = d_lambda * I and the
/// result is only trusted after the a posteriori certification.
struct AbelianCore {
  std::size_t dim = 0;
  double c_lambda = -4.0;
  double d_lambda = 4.0;
};

/// Identity required of the assembled bracket. The relaxed form accepts a
/// left Leibniz bracket whose right multiplications by generators are
/// derivations of it.
enum class ExtensionIdentity { SymmetricLeibniz, LeftWithRightDerivations };

struct ExtensionSpec {
  /// Nilpotent critical core on C^m (ignored when abelian_core is set).
  Bracket lambda;
  std::optional<AbelianCore> abelian_core;
  /// L^rho_A and R^rho_A for each abstract generator A, as m x m matrices.
  std::vector<Matrix> left_maps;
  std::vector<Matrix> right_maps;
  /// Present for the general extension only.
  std::optional<ReductivePart> reductive;
  ExtensionIdentity identity = ExtensionIdentity::SymmetricLeibniz;
};

struct ExtensionResult {
  Bracket bracket;  // generators first, then the core
  MomentReport report;
  CriticalType type;
  CriticalType expected_type;
  double c_lambda = 0.0;
  /// Gram matrix of the abstract generators and T with T^T G conj(T) = I;
  /// column a of T gives the a-th orthonormal generator.
  Matrix gram;
  Matrix generator_transform;
};

ExtensionResult build_solvable_extension(const ExtensionSpec& spec,
                                         double tol = kCriticalityTol);

ExtensionResult build_general_extension(const ExtensionSpec& spec,
                                        double tol = kCriticalityTol);

}  // namespace leibniz
