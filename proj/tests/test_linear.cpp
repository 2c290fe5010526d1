#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "leibniz/catalog.hpp"
#include "oracles.hpp"

using namespace leibniz;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  return Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
}

// Distance from a to the complex span of orthonormal (under tr(A B*)) maps.
double span_distance(const Matrix& a, const std::vector<Matrix>& basis) {
  Matrix r = a;
  for (const Matrix& b : basis) r -= (r.cwiseProduct(b.conjugate())).sum() * b;
  return r.norm();
}

// Random bracket with few nonzero entries, so derivation spaces are nontrivial.
Bracket sparse_bracket(std::size_t n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> val(-2, 2);
  Bracket mu(n);
  for (int t = 0; t < 3; ++t) mu(idx(rng), idx(rng), idx(rng)) = static_cast<double>(val(rng));
  return mu;
}

}  // namespace

TEST_CASE("left and right multiplication operators") {
  const Bracket lie2 = catalog::get("lie2").bracket;
  Matrix expect_l = Matrix::Zero(2, 2);
  expect_l(1, 1) = 1.0;
  CHECK((left_op(lie2, unit(2, 0)) - expect_l).norm() == 0.0);
  const Matrix r = right_op(lie2, unit(2, 0));
  CHECK(r(1, 1) == Complex(-1.0));
  CHECK(r.norm() == doctest::Approx(1.0));
  CHECK(left_op(lie2, Vector::Zero(2)).norm() == 0.0);

  const Matrix l3 = left_op(catalog::get("S1").bracket, unit(3, 2));
  CHECK(l3(0, 2) == Complex(1.0));
  CHECK(l3.norm() == doctest::Approx(1.0));

  const Bracket mu = oracle::random_bracket(4, 3);
  const Vector x = Vector::Random(4), y = Vector::Random(4), z = Vector::Random(4);
  CHECK((left_op(mu, x) * y - evaluate(mu, x, y)).norm() < 1e-12);
  CHECK((right_op(mu, x) * y - evaluate(mu, y, x)).norm() < 1e-12);
  CHECK((left_op(mu, x + 2.0 * z) - left_op(mu, x) - 2.0 * left_op(mu, z)).norm() < 1e-12);
  CHECK_THROWS_AS(left_op(mu, Vector::Zero(3)), DimensionMismatch);
  CHECK_THROWS_AS(right_op(mu, Vector::Zero(5)), DimensionMismatch);
}

TEST_CASE("derivation space examples") {
  CHECK(derivation_space(Bracket(2)).size() == 4);

  const auto nl = derivation_space(catalog::get("nonlie2").bracket);
  CHECK(nl.size() == 2);
  Matrix diag12 = Matrix::Zero(2, 2);
  diag12(0, 0) = 1.0;
  diag12(1, 1) = 2.0;
  Matrix nil = Matrix::Zero(2, 2);
  nil(1, 0) = 1.0;
  CHECK(span_distance(diag12, nl) < 1e-10);
  CHECK(span_distance(nil, nl) < 1e-10);

  CHECK(derivation_space(catalog::get("L1").bracket).size() == 6);
  // sl2 has only inner derivations.
  CHECK(derivation_space(catalog::get("so3").bracket).size() == 3);
}

TEST_CASE("derivation space agrees with the brute-force system") {
  std::vector<Bracket> cases;
  for (const auto& info : catalog::known_entries()) {
    cases.push_back(
        catalog::get(info.name, info.param_count ? std::vector<Complex>{Complex(1.0, 1.0)}
                                                 : std::vector<Complex>{})
            .bracket);
  }
  for (unsigned long long seed = 0; seed < 15; ++seed) cases.push_back(sparse_bracket(3, seed));
  for (const Bracket& mu : cases) {
    const auto der = derivation_space(mu);
    CHECK(der.size() == oracle::derivation_dim(mu));
    for (const Matrix& d : der) {
      CHECK(inf_act(d, mu).norm() <= 1e-9 * std::max(mu.norm(), 1.0));
      CHECK(oracle::inf(d, mu).norm() < 1e-8);
    }
    // Orthonormal under tr(A B*).
    for (std::size_t a = 0; a < der.size(); ++a)
      for (std::size_t b = 0; b < der.size(); ++b) {
        const Complex ip = (der[a] * der[b].adjoint()).trace();
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("derivation dimension is unitarily invariant") {
  for (const char* name : {"L1", "S1", "S2", "L4", "S8", "L5"}) {
    const Bracket mu = catalog::get(name).bracket;
    for (unsigned long long seed = 0; seed < 3; ++seed) {
      const Matrix k = random_unitary(mu.dim(), seed);
      CHECK(derivation_space(gl_act(k, mu)).size() == derivation_space(mu).size());
    }
  }
}

TEST_CASE("Hermitian derivations") {
  for (const char* name : {"L2", "S4", "lie2", "nonlie2", "so3", "L1"}) {
    const Bracket mu = catalog::get(name).bracket;
    const auto herm = hermitian_derivations(mu);
    for (const Matrix& h : herm) {
      CHECK((h - h.adjoint()).norm() < 1e-10);
      CHECK(inf_act(h, mu).norm() < 1e-8);
    }
  }
  // diag(1, 2) is the only Hermitian derivation direction of e1e1 = e2.
  CHECK(hermitian_derivations(catalog::get("nonlie2").bracket).size() == 1);
  // i ad_x for the compact basis.
  CHECK(hermitian_derivations(catalog::get("so3").bracket).size() == 3);
}

TEST_CASE("Hermitian eigendecomposition") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = -4.0;
  const auto e = hermitian_eigen(HermitianMap::certify(d));
  CHECK(e.eigenvalues(0) == doctest::Approx(-4.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(0.0));

  const auto m = hermitian_eigen(HermitianMap::certify(oracle::moment(catalog::get("nonlie2").bracket)));
  CHECK(m.eigenvalues(0) == doctest::Approx(-4.0));
  CHECK(m.eigenvalues(1) == doctest::Approx(2.0));

  for (unsigned long long seed = 0; seed < 10; ++seed) {
    const Matrix h = oracle::random_hermitian(5, seed);
    const auto r = hermitian_eigen(HermitianMap::certify(h));
    const Matrix back = r.eigenvectors * r.eigenvalues.cast<Complex>().asDiagonal() *
                        r.eigenvectors.adjoint();
    CHECK((back - h).norm() < 1e-10 * h.norm());
    for (Eigen::Index i = 1; i < r.eigenvalues.size(); ++i)
      CHECK(r.eigenvalues(i - 1) <= r.eigenvalues(i));
    CHECK(std::abs(r.eigenvalues.sum() - h.trace().real()) < 1e-10 * h.norm());
  }

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMap::certify(bad), NotHermitian);
  CHECK_THROWS_AS(HermitianMap::certify(Matrix::Zero(2, 3)), NotHermitian);
}

TEST_CASE("subspace products") {
  const Bracket lie2 = catalog::get("lie2").bracket;
  const Subspace img = subspace_product(lie2, Subspace::full(2), Subspace::full(2));
  CHECK(img.rank() == 1);
  CHECK(std::abs(std::abs(img.basis()(1, 0)) - 1.0) < 1e-12);

  CHECK(subspace_product(lie2, Subspace::zero(2), Subspace::full(2)).rank() == 0);
  CHECK(subspace_product(lie2, Subspace::full(2), Subspace::zero(2)).rank() == 0);

  const Subspace s1 = subspace_product(catalog::get("S1").bracket, Subspace::full(3), Subspace::full(3));
  CHECK(s1.rank() == 1);
  CHECK(std::abs(std::abs(s1.basis()(0, 0)) - 1.0) < 1e-12);

  CHECK_THROWS_AS(subspace_product(lie2, Subspace::full(3), Subspace::full(2)), DimensionMismatch);
}

TEST_CASE("subspace products are monotone") {
  for (unsigned long long seed = 0; seed < 20; ++seed) {
    const Bracket mu = sparse_bracket(4, seed);
    const Matrix big_u = oracle::random_matrix(4, 100 + seed).leftCols(3);
    const Matrix big_w = oracle::random_matrix(4, 200 + seed).leftCols(2);
    const Subspace u_big = Subspace::span(big_u), w_big = Subspace::span(big_w);
    const Subspace u = Subspace::span(big_u.leftCols(1)), w = Subspace::span(big_w.leftCols(1));
    const Subspace small = subspace_product(mu, u, w);
    const Subspace large = subspace_product(mu, u_big, w_big);
    CHECK(large.containment_residual(small) < 1e-10);
  }
}

TEST_CASE("subspace utilities") {
  Matrix cols(3, 3);
  cols << 1, 0, 1, 0, 1, 1, 0, 0, 0;
  const Subspace s = Subspace::span(cols);
  CHECK(s.rank() == 2);
  CHECK((s.basis().adjoint() * s.basis() - Matrix::Identity(2, 2)).norm() < 1e-12);
  const Subspace c = s.complement();
  CHECK(c.rank() == 1);
  CHECK((s.basis().adjoint() * c.basis()).norm() < 1e-12);
  CHECK(s.containment_residual(Subspace::span(cols.col(2))) < 1e-12);
  CHECK(s.containment_residual(c) == doctest::Approx(1.0));
  CHECK(Subspace::span(Matrix::Zero(3, 2)).rank() == 0);
  CHECK(Subspace::zero(3).complement().rank() == 3);
  CHECK_THROWS_AS(Subspace::from_orthonormal(cols), InvalidParameter);
  CHECK((s.projector() * s.projector() - s.projector()).norm() < 1e-12);
}

TEST_CASE("null space of linear conditions") {
  Matrix cond(1, 3);
  cond << 1, 1, 0;
  const Subspace ns = null_space(cond);
  CHECK(ns.rank() == 2);
  CHECK((cond * ns.basis()).norm() < 1e-12);
  CHECK(null_space(Matrix::Identity(3, 3)).rank() == 0);
}

TEST_CASE("Hermitian exponential") {
  for (unsigned long long seed = 0; seed < 5; ++seed) {
    const Matrix h = oracle::random_hermitian(4, seed);
    const Matrix e = hermitian_exp(HermitianMap::certify(h), 0.3);
    const Matrix ref = (Complex(0.3) * h).exp();
    CHECK((e - ref).norm() < 1e-10 * ref.norm());
  }
  CHECK(operator_norm(2.0 * Matrix::Identity(3, 3)) == doctest::Approx(2.0));
}
