#pragma once

#include <span>
#include <vector>

#include "leibniz/core.hpp"

namespace leibniz {

/// A complex bilinear product on C^n stored as dense structure constants
/// c_{ij}^k, mu(e_i, e_j) = sum_k c_{ij}^k e_k, with {e_i} orthonormal.
/// Indices are 0-based.
class Bracket {
 public:
  Bracket() = default;
  explicit Bracket(std::size_t dim);

  /// Takes ownership of n^3 coefficients laid out as ((i * n) + j) * n + k.
  /// Throws InvalidBracket on a size mismatch or non-finite values.
  Bracket(std::size_t dim, std::vector<Complex> coeffs);

  std::size_t dim() const { return dim_; }

  Complex operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return coeffs_[index(i, j, k)];
  }
  Complex& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return coeffs_[index(i, j, k)];
  }

  std::span<const Complex> coeffs() const { return coeffs_; }

  /// mu(e_i, e_j) as a coordinate vector.
  Vector product(std::size_t i, std::size_t j) const;

  double norm_sq() const;
  double norm() const;
  bool is_zero() const;

  /// mu / |mu|; throws ZeroBracket.
  Bracket normalized() const;

  Bracket& operator+=(const Bracket& other);
  Bracket& operator-=(const Bracket& other);
  Bracket& operator*=(Complex s);

  friend Bracket operator+(Bracket a, const Bracket& b) { return a += b; }
  friend Bracket operator-(Bracket a, const Bracket& b) { return a -= b; }
  friend Bracket operator*(Complex s, Bracket a) { return a *= s; }
  friend bool operator==(const Bracket&, const Bracket&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dim_ + j) * dim_ + k;
  }

  std::size_t dim_ = 0;
  std::vector<Complex> coeffs_;
};

/// Sparse entry with 1-based indices, matching the printed multiplication
/// tables (e_i e_j = ... e_k).
struct Entry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Complex value;
};

Bracket make_bracket(std::size_t dim, std::span<const Entry> entries);
Bracket make_bracket(std::size_t dim, std::initializer_list<Entry> entries);

struct IdentityReport {
  double left_residual = 0.0;
  double right_residual = 0.0;
  double anticommutativity_residual = 0.0;
  double jacobi_residual = 0.0;
  bool is_left_leibniz = true;
  bool is_right_leibniz = true;
  bool is_symmetric_leibniz = true;
  bool is_lie = true;
};

Vector evaluate(const Bracket& mu, const Vector& x, const Vector& y);

struct ActionOptions {
  /// Largest accepted 2-norm condition number of g.
  double max_condition = 1e12;
};

/// g.mu(X, Y) = g mu(g^{-1} X, g^{-1} Y).
Bracket gl_act(const Matrix& g, const Bracket& mu, ActionOptions opts = {});

/// A.mu(X, Y) = A mu(X, Y) - mu(AX, Y) - mu(X, AY).
Bracket inf_act(const Matrix& a, const Bracket& mu);

/// <mu, lambda> = sum c^mu conj(c^lambda).
Complex inner_product(const Bracket& mu, const Bracket& lambda);

/// Residuals of the raw bracket (no normalization), maxima over basis triples.
IdentityReport identity_residuals(const Bracket& mu);

/// Residuals of mu / |mu| compared against tol.
IdentityReport check_identities(const Bracket& mu, double tol = kIdentityTol);

Bracket direct_sum(const Bracket& first, const Bracket& second);

/// Bracket induced on span(basis) by projecting products back onto it:
/// c'_{ab}^c = <mu(u_a, u_b), u_c> for orthonormal columns u.
Bracket restrict_to(const Bracket& mu, const Matrix& orthonormal_basis);

}  // namespace leibniz
