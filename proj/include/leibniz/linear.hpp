#pragma once

#include <vector>

#include "leibniz/bracket.hpp"

namespace leibniz {

/// A square complex matrix certified Hermitian: |A - A*| < rel_tol |A|.
class HermitianMap {
 public:
  HermitianMap() = default;

  /// Throws NotHermitian when the defect exceeds rel_tol (Frobenius norms).
  static HermitianMap certify(const Matrix& a, double rel_tol = 1e-12);

  /// (A + A*) / 2, for matrices that are Hermitian up to rounding by construction.
  static HermitianMap symmetrized(const Matrix& a);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  double trace() const { return m_.trace().real(); }
  double norm() const { return m_.norm(); }

 private:
  explicit HermitianMap(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Orthonormal-column basis of a subspace of C^n.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);

  /// Orthonormal basis of the column span, keeping singular values above
  /// rel_tol * (largest singular value, or 1 when every value is tiny).
  static Subspace span(const Matrix& columns, double rel_tol = kRankTol);

  /// Wraps columns that are already orthonormal (checked to 1e-10).
  static Subspace from_orthonormal(const Matrix& columns);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return static_cast<std::size_t>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const { return basis_ * basis_.adjoint(); }

  /// Largest norm of (I - P) w over unit columns w of other's basis.
  double containment_residual(const Subspace& other) const;

  /// Orthogonal complement in C^n.
  Subspace complement() const;

 private:
  Subspace(std::size_t ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {}
  std::size_t ambient_ = 0;
  Matrix basis_;
};

/// L_x(y) = mu(x, y).
Matrix left_op(const Bracket& mu, const Vector& x);
/// R_x(y) = mu(y, x).
Matrix right_op(const Bracket& mu, const Vector& x);

/// Matrix of A -> A.mu, columns indexed by vec(A) (column-major), rows by
/// the n^3 structure-constant layout.
Matrix infinitesimal_action_matrix(const Bracket& mu);

/// Orthonormal basis (Frobenius / trace pairing) of Der(mu) over C.
/// A singular direction is null when sigma <= tol * |mu|.
std::vector<Matrix> derivation_space(const Bracket& mu, double tol = kRankTol);

/// Real basis, orthonormal under Re tr(A B*), of the Hermitian derivations of mu.
/// A direction is null when sigma <= tol * (largest singular value).
std::vector<Matrix> hermitian_derivations(const Bracket& mu, double tol = kRankTol);

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary, columns match eigenvalues
};

EigenDecomposition hermitian_eigen(const HermitianMap& h);

/// Span of mu(u, w) over basis vectors u of first and w of second.
Subspace subspace_product(const Bracket& mu, const Subspace& first, const Subspace& second,
                          double rel_tol = kRankTol);

/// exp(t H) for Hermitian H via its eigendecomposition.
Matrix hermitian_exp(const HermitianMap& h, double t);

/// Joint null space of the given linear conditions, as an orthonormal subspace:
/// rows of `conditions` define linear functionals on C^n.
Subspace null_space(const Matrix& conditions, double rel_tol = kRankTol);

/// Spectral norm.
double operator_norm(const Matrix& a);

}  // namespace leibniz
