#include "leibniz/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace leibniz {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                            " vs " + std::to_string(b));
  }
}

// Column m of the k-th operator is mu(e_k, e_m) (left) or mu(e_m, e_k) (right).
std::vector<Matrix> basis_operators(const Bracket& mu, bool left) {
  const std::size_t n = mu.dim();
  std::vector<Matrix> ops(n, Matrix::Zero(n, n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) {
        ops[a](k, m) = left ? mu(a, m, k) : mu(m, a, k);
      }
    }
  }
  return ops;
}

}  // namespace

Bracket::Bracket(std::size_t dim) : dim_(dim), coeffs_(dim * dim * dim, Complex{}) {}

Bracket::Bracket(std::size_t dim, std::vector<Complex> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != dim * dim * dim) {
    throw InvalidBracket("expected " + std::to_string(dim * dim * dim) +
                         " structure constants, got " + std::to_string(coeffs_.size()));
  }
  for (const Complex& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidBracket("structure constants must be finite");
    }
  }
}

Vector Bracket::product(std::size_t i, std::size_t j) const {
  Vector v(dim_);
  for (std::size_t k = 0; k < dim_; ++k) v(k) = (*this)(i, j, k);
  return v;
}

double Bracket::norm_sq() const {
  double s = 0.0;
  for (const Complex& c : coeffs_) s += std::norm(c);
  return s;
}

double Bracket::norm() const { return std::sqrt(norm_sq()); }

bool Bracket::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return c == Complex{}; });
}

Bracket Bracket::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw ZeroBracket();
  Bracket out = *this;
  out *= Complex(1.0 / nrm);
  return out;
}

Bracket& Bracket::operator+=(const Bracket& other) {
  require_same_dim(dim_, other.dim_, "bracket sum");
  for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] += other.coeffs_[t];
  return *this;
}

Bracket& Bracket::operator-=(const Bracket& other) {
  require_same_dim(dim_, other.dim_, "bracket difference");
  for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] -= other.coeffs_[t];
  return *this;
}

Bracket& Bracket::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

Bracket make_bracket(std::size_t dim, std::span<const Entry> entries) {
  Bracket mu(dim);
  for (const Entry& e : entries) {
    if (e.i < 1 || e.j < 1 || e.k < 1 || e.i > dim || e.j > dim || e.k > dim) {
      throw InvalidBracket("entry index out of range [1, " + std::to_string(dim) + "]");
    }
    mu(e.i - 1, e.j - 1, e.k - 1) += e.value;
  }
  return mu;
}

Bracket make_bracket(std::size_t dim, std::initializer_list<Entry> entries) {
  return make_bracket(dim, std::span<const Entry>(entries.begin(), entries.size()));
}

Vector evaluate(const Bracket& mu, const Vector& x, const Vector& y) {
  const std::size_t n = mu.dim();
  require_same_dim(n, static_cast<std::size_t>(x.size()), "evaluate(x)");
  require_same_dim(n, static_cast<std::size_t>(y.size()), "evaluate(y)");
  Vector out = Vector::Zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i) == Complex{}) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w = x(i) * y(j);
      if (w == Complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) out(k) += w * mu(i, j, k);
    }
  }
  return out;
}

Bracket gl_act(const Matrix& g, const Bracket& mu, ActionOptions opts) {
  const std::size_t n = mu.dim();
  if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(g.cols()) != n) {
    throw DimensionMismatch("gl_act: g must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (n == 0) return mu;
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || smax / smin > opts.max_condition) {
    throw IllConditioned("gl_act: g is singular or ill-conditioned (cond = " +
                         std::to_string(smin > 0.0 ? smax / smin : INFINITY) + ")");
  }
  const Matrix h = g.partialPivLu().inverse();

  // Contract one index at a time: first slot with h, second with h, output with g.
  std::vector<Complex> t1(n * n * n, Complex{});
  auto at = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      const Complex w = h(i, a);
      if (w == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) t1[at(a, j, k)] += w * mu(i, j, k);
    }
  std::vector<Complex> t2(n * n * n, Complex{});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t j = 0; j < n; ++j) {
        const Complex w = h(j, b);
        if (w == Complex{}) continue;
        for (std::size_t k = 0; k < n; ++k) t2[at(a, b, k)] += w * t1[at(a, j, k)];
      }
  Bracket out(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t l = 0; l < n; ++l) {
        Complex s{};
        for (std::size_t k = 0; k < n; ++k) s += g(l, k) * t2[at(a, b, k)];
        out(a, b, l) = s;
      }
  return out;
}

Bracket inf_act(const Matrix& a, const Bracket& mu) {
  const std::size_t n = mu.dim();
  if (static_cast<std::size_t>(a.rows()) != n || static_cast<std::size_t>(a.cols()) != n) {
    throw DimensionMismatch("inf_act: A must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  Bracket out(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t l = 0; l < n; ++l) {
        Complex s{};
        for (std::size_t k = 0; k < n; ++k) s += a(l, k) * mu(p, q, k);
        for (std::size_t i = 0; i < n; ++i) s -= a(i, p) * mu(i, q, l);
        for (std::size_t j = 0; j < n; ++j) s -= a(j, q) * mu(p, j, l);
        out(p, q, l) = s;
      }
  return out;
}

Complex inner_product(const Bracket& mu, const Bracket& lambda) {
  require_same_dim(mu.dim(), lambda.dim(), "inner_product");
  Complex s{};
  const auto a = mu.coeffs();
  const auto b = lambda.coeffs();
  for (std::size_t t = 0; t < a.size(); ++t) s += a[t] * std::conj(b[t]);
  return s;
}

IdentityReport identity_residuals(const Bracket& mu) {
  const std::size_t n = mu.dim();
  const auto left = basis_operators(mu, true);
  const auto right = basis_operators(mu, false);
  std::vector<Vector> prod(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) prod[a * n + b] = mu.product(a, b);
  auto p = [&](std::size_t a, std::size_t b) -> const Vector& { return prod[a * n + b]; };

  IdentityReport r;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      r.anticommutativity_residual =
          std::max(r.anticommutativity_residual, (p(a, b) + p(b, a)).norm());
      for (std::size_t c = 0; c < n; ++c) {
        const Vector a_bc = left[a] * p(b, c);  // a(bc)
        const Vector ab_c = right[c] * p(a, b);  // (ab)c
        const Vector b_ac = left[b] * p(a, c);  // b(ac)
        const Vector ac_b = right[b] * p(a, c);  // (ac)b
        r.left_residual = std::max(r.left_residual, (a_bc - ab_c - b_ac).norm());
        r.right_residual = std::max(r.right_residual, (ab_c - ac_b - a_bc).norm());
        const Vector b_ca = left[b] * p(c, a);
        const Vector c_ab = left[c] * p(a, b);
        r.jacobi_residual = std::max(r.jacobi_residual, (a_bc + b_ca + c_ab).norm());
      }
    }
  }
  return r;
}

IdentityReport check_identities(const Bracket& mu, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("check_identities: tol must be positive");
  IdentityReport r = mu.is_zero() ? identity_residuals(mu) : identity_residuals(mu.normalized());
  r.is_left_leibniz = r.left_residual < tol;
  r.is_right_leibniz = r.right_residual < tol;
  r.is_symmetric_leibniz = r.is_left_leibniz && r.is_right_leibniz;
  r.is_lie = r.anticommutativity_residual < tol && r.jacobi_residual < tol &&
             r.is_symmetric_leibniz;
  return r;
}

Bracket direct_sum(const Bracket& first, const Bracket& second) {
  const std::size_t n1 = first.dim();
  const std::size_t n2 = second.dim();
  Bracket out(n1 + n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = 0; k < n1; ++k) out(i, j, k) = first(i, j, k);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n2; ++k) out(n1 + i, n1 + j, n1 + k) = second(i, j, k);
  return out;
}

Bracket restrict_to(const Bracket& mu, const Matrix& basis) {
  const std::size_t n = mu.dim();
  require_same_dim(n, static_cast<std::size_t>(basis.rows()), "restrict_to");
  const std::size_t m = static_cast<std::size_t>(basis.cols());
  Bracket out(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const Vector v = evaluate(mu, basis.col(a), basis.col(b));
      const Vector coords = basis.adjoint() * v;
      for (std::size_t c = 0; c < m; ++c) out(a, b, c) = coords(c);
    }
  return out;
}

}  // namespace leibniz
