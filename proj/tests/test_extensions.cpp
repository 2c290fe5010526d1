#include <doctest.h>

#include "leibniz/catalog.hpp"
#include "leibniz/extensions.hpp"
#include "oracles.hpp"

using namespace leibniz;

namespace {

Matrix diag(std::initializer_list<Complex> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (Complex v : values) m(i, i) = v, ++i;
  return m;
}

Matrix zeros(Eigen::Index n) { return Matrix::Zero(n, n); }

ExtensionSpec s1_spec(const Matrix& left, const Matrix& right) {
  ExtensionSpec spec;
  spec.lambda = catalog::get("S1").bracket;
  spec.left_maps = {left};
  spec.right_maps = {right};
  return spec;
}

ExtensionSpec so3_spec() {
  ExtensionSpec spec;
  spec.lambda = catalog::get("S1").bracket;
  spec.left_maps.assign(3, zeros(3));
  spec.right_maps.assign(3, zeros(3));
  spec.reductive = ReductivePart{catalog::get("so3").bracket, 3};
  return spec;
}

// Certificates recomputed from scratch on the output bracket.
void check_certificate(const ExtensionResult& r, std::size_t d1) {
  const Bracket& mu = r.bracket;
  const MomentReport rep = criticality_decompose(mu);
  CHECK(rep.is_critical);
  CHECK(rep.residual_tangent < 1e-8);
  CHECK(std::abs(rep.M.trace() + 2.0 * mu.norm_sq()) < 1e-10 * mu.norm_sq());
  CHECK((rep.M.matrix() - oracle::moment(mu)).norm() < 1e-10 * mu.norm_sq());
  CHECK(std::abs(rep.c - r.c_lambda) < 1e-8 * std::abs(r.c_lambda));
  CHECK(r.type.same_type(r.expected_type));
  CHECK(r.type.ks.front() == 0);
  CHECK(r.type.ds.front() == static_cast<int>(d1));
  CHECK(std::abs(critical_value_formula(r.type, mu.dim()) - rep.F) < 1e-8 * rep.F);
  CHECK(std::abs(oracle::type_value(r.type.ks, r.type.ds, mu.dim()) - rep.F) < 1e-8 * rep.F);
  // T^T G conj(T) = I.
  const Matrix& t = r.generator_transform;
  const auto d = static_cast<Eigen::Index>(d1);
  CHECK((t.transpose() * r.gram * t.conjugate() - Matrix::Identity(d, d)).norm() < 1e-10);
}

}  // namespace

TEST_CASE("solvable extension of S1 with a left action") {
  ExtensionSpec spec = s1_spec(diag({0, 1, 0}), zeros(3));
  // Only left Leibniz: the strict form rejects it on (A, A, e2).
  CHECK_THROWS_AS(build_solvable_extension(spec), NotSymmetricLeibniz);

  spec.identity = ExtensionIdentity::LeftWithRightDerivations;
  const ExtensionResult r = build_solvable_extension(spec);
  CHECK(r.type.to_string() == "(0<3<5<6;1,1,1,1)");
  CHECK(std::abs(r.report.F - 10.0 / 3.0) < 1e-8);
  CHECK(r.c_lambda == doctest::Approx(-10.0));
  CHECK(r.gram(0, 0).real() == doctest::Approx(0.2));
  // Orthonormal generator acts by sqrt(5) diag(0, 1, 0).
  const Matrix l = left_op(r.bracket, Vector::Unit(4, 0)).bottomRightCorner(3, 3);
  CHECK((l - std::sqrt(5.0) * diag({0, 1, 0})).norm() < 1e-12);
  // M = diag(-10, 2, 0, -4), D = diag(0, 12, 10, 6).
  Matrix expect_m = diag({-10, 2, 0, -4});
  CHECK((oracle::moment(r.bracket) - expect_m * r.bracket.norm_sq() / 6.0).norm() < 1e-10);
  CHECK((r.report.D.matrix() - diag({0, 12, 10, 6}) * r.report.norm_sq / 6.0).norm() < 1e-10);
  const oracle::Defects d = oracle::identity_defects(r.bracket);
  CHECK(d.left < 1e-12);
  CHECK(d.right > 1.0);
  check_certificate(r, 1);
}

TEST_CASE("solvable extension of S1 with symmetric actions") {
  const ExtensionResult r = build_solvable_extension(s1_spec(diag({0, 1, 0}), diag({0, -1, 0})));
  CHECK(check_identities(r.bracket).is_symmetric_leibniz);
  CHECK(r.type.to_string() == "(0<3<5<6;1,1,1,1)");
  CHECK(r.gram(0, 0).real() == doctest::Approx(0.4));
  CHECK(std::abs(r.report.F - 10.0 / 3.0) < 1e-8);
  check_certificate(r, 1);
}

TEST_CASE("solvable extension hypotheses") {
  SUBCASE("zero action on the non-Lie plane") {
    ExtensionSpec spec;
    spec.lambda = catalog::get("nonlie2").bracket;
    spec.left_maps = {zeros(2)};
    spec.right_maps = {zeros(2)};
    try {
      build_solvable_extension(spec);
      FAIL("expected HypothesisViolation");
    } catch (const HypothesisViolation& e) {
      CHECK(e.clause().find("(ii)") != std::string::npos);
      CHECK(e.clause().find("nonzero") != std::string::npos);
    }
  }
  SUBCASE("derivation that breaks the right identity") {
    ExtensionSpec spec = s1_spec(diag({2, 0, 1}), zeros(3));
    try {
      build_solvable_extension(spec);
      FAIL("expected NotSymmetricLeibniz");
    } catch (const NotSymmetricLeibniz& e) {
      CHECK(e.right_defect > 1e-3);
    }
    spec.identity = ExtensionIdentity::LeftWithRightDerivations;
    CHECK_THROWS_AS(build_solvable_extension(spec), Error);
  }
  SUBCASE("map that does not commute with D") {
    Matrix l = zeros(3);
    l(0, 1) = 1.0;
    try {
      build_solvable_extension(s1_spec(l, zeros(3)));
      FAIL("expected HypothesisViolation");
    } catch (const HypothesisViolation& e) {
      CHECK(e.clause().find("(i)") != std::string::npos);
      CHECK(e.residual() > 0.0);
    }
  }
  SUBCASE("non-derivation") {
    CHECK_THROWS_AS(build_solvable_extension(s1_spec(diag({1, 0, 0}), zeros(3))),
                    HypothesisViolation);
  }
  SUBCASE("dependent generators") {
    ExtensionSpec spec = s1_spec(diag({0, 1, 0}), diag({0, -1, 0}));
    spec.left_maps.push_back(2.0 * diag({0, 1, 0}));
    spec.right_maps.push_back(2.0 * diag({0, -1, 0}));
    CHECK_THROWS_AS(build_solvable_extension(spec), HypothesisViolation);
  }
  SUBCASE("shape errors") {
    ExtensionSpec spec = s1_spec(diag({0, 1}), zeros(2));
    CHECK_THROWS_AS(build_solvable_extension(spec), DimensionMismatch);
    spec = s1_spec(diag({0, 1, 0}), zeros(3));
    spec.right_maps.clear();
    CHECK_THROWS_AS(build_solvable_extension(spec), DimensionMismatch);
    spec = so3_spec();
    CHECK_THROWS_AS(build_solvable_extension(spec), PreconditionViolation);
    CHECK_THROWS_AS(build_general_extension(s1_spec(diag({0, 1, 0}), diag({0, -1, 0}))),
                    PreconditionViolation);
  }
  SUBCASE("non-critical core") {
    ExtensionSpec spec;
    spec.lambda = catalog::get("L5").bracket;
    spec.left_maps = {zeros(3)};
    spec.right_maps = {zeros(3)};
    CHECK_THROWS_AS(build_solvable_extension(spec), HypothesisViolation);
  }
}

TEST_CASE("general extension so3 over S1") {
  const ExtensionResult r = build_general_extension(so3_spec());
  CHECK(r.type.to_string() == "(0<3<5<6;3,1,1,1)");
  CHECK(std::abs(r.report.F - 1.25) < 1e-8);
  CHECK(r.c_lambda == doctest::Approx(-10.0));
  check_certificate(r, 3);
  CHECK(check_identities(r.bracket).is_symmetric_leibniz);
  // The so3 part stays a Lie subalgebra.
  const Matrix basis = Matrix::Identity(6, 6).leftCols(3);
  CHECK(check_identities(restrict_to(r.bracket, basis)).is_lie);
}

TEST_CASE("general extension with an abelian one-dimensional part") {
  ExtensionSpec general = s1_spec(diag({0, 1, 0}), diag({0, -1, 0}));
  general.reductive = ReductivePart{Bracket(1), 0};
  const ExtensionResult g = build_general_extension(general);
  ExtensionSpec solvable = s1_spec(diag({0, 1, 0}), diag({0, -1, 0}));
  const ExtensionResult s = build_solvable_extension(solvable);
  CHECK((g.bracket - s.bracket).norm() < 1e-14);
  CHECK(g.report.F == s.report.F);
  CHECK((g.gram - s.gram).norm() < 1e-14);
}

TEST_CASE("general extension hypotheses") {
  SUBCASE("skewness") {
    ExtensionSpec spec = so3_spec();
    spec.left_maps[0] = diag({1, 0, 0});
    try {
      build_general_extension(spec);
      FAIL("expected HypothesisViolation");
    } catch (const HypothesisViolation& e) {
      CHECK(e.clause().find("skew") != std::string::npos);
    }
  }
  SUBCASE("non-Lie reductive part") {
    ExtensionSpec spec = so3_spec();
    spec.reductive->bracket = catalog::get("S1").bracket;
    CHECK_THROWS_AS(build_general_extension(spec), NotLie);
  }
  SUBCASE("ad not skew in the given basis") {
    ExtensionSpec spec = so3_spec();
    spec.reductive->bracket = catalog::get("L5").bracket;
    CHECK_THROWS_AS(build_general_extension(spec), HypothesisViolation);
  }
  SUBCASE("central generator with nonzero ad") {
    ExtensionSpec spec = so3_spec();
    spec.reductive->semisimple_dim = 2;
    CHECK_THROWS_AS(build_general_extension(spec), HypothesisViolation);
  }
}

TEST_CASE("abelian core rebuilds L2 and S4") {
  auto spectrum = [](const Bracket& mu) {
    return hermitian_eigen(moment_matrix(mu.normalized())).eigenvalues;
  };
  SUBCASE("L2") {
    ExtensionSpec spec;
    spec.abelian_core = AbelianCore{2, -4.0, 4.0};
    spec.left_maps = {diag({1, 0})};
    spec.right_maps = {diag({-1, 0})};
    const ExtensionResult r = build_solvable_extension(spec);
    const Bracket l2 = catalog::get("L2").bracket;
    CHECK(r.type.to_string() == "(0<1;1,2)");
    CHECK(std::abs(r.report.F - functional_value(l2)) < 1e-8);
    CHECK((spectrum(r.bracket) - spectrum(l2)).norm() < 1e-8);
    CHECK(check_identities(r.bracket).is_lie);
    check_certificate(r, 1);
  }
  SUBCASE("S4 through its opposite algebra") {
    // The opposite bracket has the same moment matrix.
    ExtensionSpec spec;
    spec.abelian_core = AbelianCore{2, -4.0, 4.0};
    spec.left_maps = {diag({1, 0})};
    spec.right_maps = {zeros(2)};
    CHECK_THROWS_AS(build_solvable_extension(spec), NotSymmetricLeibniz);
    spec.identity = ExtensionIdentity::LeftWithRightDerivations;
    const ExtensionResult r = build_solvable_extension(spec);
    const Bracket s4 = catalog::get("S4").bracket;
    CHECK(r.type.to_string() == "(0<1;1,2)");
    CHECK(std::abs(r.report.F - functional_value(s4)) < 1e-8);
    CHECK((spectrum(r.bracket) - spectrum(s4)).norm() < 1e-8);
    CHECK(oracle::identity_defects(r.bracket).left < 1e-12);
    check_certificate(r, 1);
  }
  SUBCASE("bad abelian core data") {
    ExtensionSpec spec;
    spec.abelian_core = AbelianCore{2, 4.0, 4.0};
    spec.left_maps = {diag({1, 0})};
    spec.right_maps = {diag({-1, 0})};
    CHECK_THROWS_AS(build_solvable_extension(spec), InvalidParameter);
  }
}

TEST_CASE("extensions over random admissible diagonal actions") {
  // On S1 the symmetric family is L = diag(0, s, 0), R = -L; the Gram entry is 2|s|^2/5.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex s(u(rng), trial % 2 ? u(rng) : 0.0);
    if (std::abs(s) < 0.1) continue;
    CAPTURE(trial);
    const ExtensionResult r = build_solvable_extension(s1_spec(diag({0, s, 0}), diag({0, -s, 0})));
    CHECK(check_identities(r.bracket).is_symmetric_leibniz);
    CHECK(r.type.to_string() == "(0<3<5<6;1,1,1,1)");
    CHECK(r.gram(0, 0).real() == doctest::Approx(0.4 * std::norm(s)));
    check_certificate(r, 1);
  }
}
