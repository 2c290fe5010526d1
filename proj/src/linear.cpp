#include "leibniz/linear.hpp"

#include <cmath>
#include <string>

namespace leibniz {

namespace {

double rank_threshold(double sigma_max, double rel_tol) {
  return rel_tol * (sigma_max > rel_tol ? sigma_max : 1.0);
}

}  // namespace

HermitianMap HermitianMap::certify(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) throw NotHermitian("matrix is not square");
  const double defect = (a - a.adjoint()).norm();
  if (defect > rel_tol * a.norm()) {
    throw NotHermitian("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  return HermitianMap(a);
}

HermitianMap HermitianMap::symmetrized(const Matrix& a) {
  if (a.rows() != a.cols()) throw NotHermitian("matrix is not square");
  return HermitianMap(0.5 * (a + a.adjoint()));
}

Subspace Subspace::zero(std::size_t ambient) {
  return Subspace(ambient, Matrix(static_cast<Eigen::Index>(ambient), 0));
}

Subspace Subspace::full(std::size_t ambient) {
  return Subspace(ambient, Matrix::Identity(static_cast<Eigen::Index>(ambient),
                                            static_cast<Eigen::Index>(ambient)));
}

Subspace Subspace::span(const Matrix& columns, double rel_tol) {
  const auto n = static_cast<std::size_t>(columns.rows());
  if (columns.cols() == 0 || n == 0) return zero(n);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double thr = rank_threshold(sv(0), rel_tol);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  return Subspace(n, svd.matrixU().leftCols(r));
}

Subspace Subspace::from_orthonormal(const Matrix& columns) {
  const Eigen::Index r = columns.cols();
  const Matrix gram = columns.adjoint() * columns;
  if ((gram - Matrix::Identity(r, r)).norm() > 1e-10) {
    throw InvalidParameter("subspace basis columns are not orthonormal");
  }
  return Subspace(static_cast<std::size_t>(columns.rows()), columns);
}

double Subspace::containment_residual(const Subspace& other) const {
  if (other.rank() == 0) return 0.0;
  const Matrix outside = other.basis() - basis_ * (basis_.adjoint() * other.basis());
  return outside.colwise().norm().maxCoeff();
}

Subspace Subspace::complement() const {
  if (rank() == 0) return full(ambient_);
  return null_space(basis_.adjoint());
}

Matrix left_op(const Bracket& mu, const Vector& x) {
  const std::size_t n = mu.dim();
  if (static_cast<std::size_t>(x.size()) != n) throw DimensionMismatch("left_op: length mismatch");
  Matrix l = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x(i) == Complex{}) continue;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) l(k, j) += x(i) * mu(i, j, k);
  }
  return l;
}

Matrix right_op(const Bracket& mu, const Vector& x) {
  const std::size_t n = mu.dim();
  if (static_cast<std::size_t>(x.size()) != n) throw DimensionMismatch("right_op: length mismatch");
  Matrix r = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x(j) == Complex{}) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) r(k, i) += x(j) * mu(i, j, k);
  }
  return r;
}

Matrix infinitesimal_action_matrix(const Bracket& mu) {
  const std::size_t n = mu.dim();
  const auto row = [n](std::size_t a, std::size_t b, std::size_t l) {
    return static_cast<Eigen::Index>((a * n + b) * n + l);
  };
  Matrix k = Matrix::Zero(static_cast<Eigen::Index>(n * n * n), static_cast<Eigen::Index>(n * n));
  // Column for E_pq (column-major vec index q*n + p):
  //   (E_pq.mu)_{ab}^l = d_{lp} c_{ab}^q - d_{aq} c_{pb}^l - d_{bq} c_{ap}^l.
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p) {
      const auto col = static_cast<Eigen::Index>(q * n + p);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) k(row(a, b, p), col) += mu(a, b, q);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t l = 0; l < n; ++l) k(row(q, b, l), col) -= mu(p, b, l);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t l = 0; l < n; ++l) k(row(a, q, l), col) -= mu(a, p, l);
    }
  return k;
}

std::vector<Matrix> derivation_space(const Bracket& mu, double tol) {
  const std::size_t n = mu.dim();
  const auto nn = static_cast<Eigen::Index>(n * n);
  std::vector<Matrix> out;
  if (n == 0) return out;
  const Matrix k = infinitesimal_action_matrix(mu);
  Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = tol * mu.norm();
  for (Eigen::Index c = 0; c < nn; ++c) {
    const bool null = c >= sv.size() || sv(c) <= thr;
    if (!null) continue;
    const Vector v = svd.matrixV().col(c);
    out.emplace_back(Eigen::Map<const Matrix>(v.data(), static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n)));
  }
  return out;
}

std::vector<Matrix> hermitian_derivations(const Bracket& mu, double tol) {
  const std::size_t n = mu.dim();
  std::vector<Matrix> out;
  if (n == 0) return out;
  const auto ni = static_cast<Eigen::Index>(n);

  // Orthonormal real basis of the Hermitian matrices under Re tr(A B*).
  std::vector<Matrix> herm;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index p = 0; p < ni; ++p) {
    Matrix e = Matrix::Zero(ni, ni);
    e(p, p) = 1.0;
    herm.push_back(e);
  }
  for (Eigen::Index p = 0; p < ni; ++p)
    for (Eigen::Index q = p + 1; q < ni; ++q) {
      Matrix re = Matrix::Zero(ni, ni);
      re(p, q) = s;
      re(q, p) = s;
      herm.push_back(re);
      Matrix im = Matrix::Zero(ni, ni);
      im(p, q) = Complex(0.0, s);
      im(q, p) = Complex(0.0, -s);
      herm.push_back(im);
    }

  const Matrix k = infinitesimal_action_matrix(mu);
  const Eigen::Index rows = k.rows();
  RealMatrix real_k(2 * rows, static_cast<Eigen::Index>(herm.size()));
  for (std::size_t t = 0; t < herm.size(); ++t) {
    const Vector image = k * Eigen::Map<const Vector>(herm[t].data(), herm[t].size());
    real_k.col(static_cast<Eigen::Index>(t)) << image.real(), image.imag();
  }
  Eigen::JacobiSVD<RealMatrix> svd(real_k, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = tol * mu.norm();
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(herm.size()); ++c) {
    const bool null = c >= sv.size() || sv(c) <= thr;
    if (!null) continue;
    Matrix h = Matrix::Zero(ni, ni);
    for (std::size_t t = 0; t < herm.size(); ++t) h += svd.matrixV()(static_cast<Eigen::Index>(t), c) * herm[t];
    out.push_back(std::move(h));
  }
  return out;
}

EigenDecomposition hermitian_eigen(const HermitianMap& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw Error("Hermitian eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Subspace subspace_product(const Bracket& mu, const Subspace& first, const Subspace& second,
                          double rel_tol) {
  const std::size_t n = mu.dim();
  if (first.ambient_dim() != n || second.ambient_dim() != n) {
    throw DimensionMismatch("subspace_product: ambient dimension mismatch");
  }
  if (first.rank() == 0 || second.rank() == 0) return Subspace::zero(n);
  Matrix images(static_cast<Eigen::Index>(n),
                static_cast<Eigen::Index>(first.rank() * second.rank()));
  Eigen::Index c = 0;
  for (Eigen::Index u = 0; u < first.basis().cols(); ++u)
    for (Eigen::Index w = 0; w < second.basis().cols(); ++w)
      images.col(c++) = evaluate(mu, first.basis().col(u), second.basis().col(w));
  return Subspace::span(images, rel_tol);
}

Matrix hermitian_exp(const HermitianMap& h, double t) {
  const EigenDecomposition ed = hermitian_eigen(h);
  const RealVector e = (t * ed.eigenvalues.array()).exp().matrix();
  return ed.eigenvectors * e.cast<Complex>().asDiagonal() * ed.eigenvectors.adjoint();
}

Subspace null_space(const Matrix& conditions, double rel_tol) {
  const auto n = static_cast<std::size_t>(conditions.cols());
  if (conditions.rows() == 0) return Subspace::full(n);
  if (n == 0) return Subspace::zero(0);
  Eigen::JacobiSVD<Matrix> svd(conditions, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thr = rank_threshold(sv(0), rel_tol);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > thr) ++r;
  const Eigen::Index ni = static_cast<Eigen::Index>(n);
  return Subspace::from_orthonormal(svd.matrixV().rightCols(ni - r));
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace leibniz
