#include "leibniz/extensions.hpp"

#include <cmath>
#include <sstream>

namespace leibniz {

namespace {

constexpr double kGramRatio = 1e-10;
constexpr double kKillingTol = 1e-6;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// |A B - B A| / (|A| |B|), 0 when either factor vanishes.
double commutator_residual(const Matrix& a, const Matrix& b) {
  const double s = a.norm() * b.norm();
  return s > 0.0 ? (a * b - b * a).norm() / s : 0.0;
}

double normality_residual(const Matrix& a) {
  const double s = a.squaredNorm();
  return s > 0.0 ? (a * a.adjoint() - a.adjoint() * a).norm() / s : 0.0;
}

double skew_residual(const Matrix& a) {
  const double s = a.norm();
  return s > 0.0 ? (a + a.adjoint()).norm() / s : 0.0;
}

double derivation_residual(const Matrix& a, const Bracket& lambda) {
  const double s = a.norm() * lambda.norm();
  return s > 0.0 ? inf_act(a, lambda).norm() / s : 0.0;
}

void require(double residual, double tol, const std::string& clause) {
  if (!(residual <= tol)) throw HypothesisViolation(clause, residual);
}

// ad_a(e_b) = f(e_a, e_b).
Matrix ad_matrix(const Bracket& f, std::size_t a) {
  const std::size_t d = f.dim();
  const auto di = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(di, di);
  for (std::size_t b = 0; b < d; ++b)
    for (std::size_t k = 0; k < d; ++k)
      m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b)) = f(a, b, k);
  return m;
}

struct Core {
  Bracket lambda;
  double c = 0.0;
  Matrix d;
  CriticalType type;
};

Core resolve_core(const ExtensionSpec& spec, double tol) {
  Core core;
  if (spec.abelian_core) {
    const AbelianCore& ab = *spec.abelian_core;
    if (ab.dim == 0) throw InvalidParameter("abelian core needs dim >= 1");
    if (!(ab.c_lambda < 0.0)) throw InvalidParameter("abelian core needs c_lambda < 0");
    if (!(ab.d_lambda > 0.0)) throw InvalidParameter("abelian core needs d_lambda > 0");
    const auto mi = static_cast<Eigen::Index>(ab.dim);
    core.lambda = Bracket(ab.dim);
    core.c = ab.c_lambda;
    core.d = ab.d_lambda * Matrix::Identity(mi, mi);
    core.type = make_type({1}, {static_cast<int>(ab.dim)});
    return core;
  }
  if (spec.lambda.dim() == 0) throw InvalidParameter("extension core must have dim >= 1");
  if (spec.lambda.is_zero()) {
    throw HypothesisViolation("core is zero; use the abelian-core mode", 0.0);
  }
  const MomentReport rep = criticality_decompose(spec.lambda, tol);
  require(rep.residual_tangent, tol, "core is a critical point");
  core.lambda = spec.lambda;
  core.c = rep.c;
  core.d = rep.D.matrix();
  core.type = critical_type(rep.D);
  if (core.type.ks.front() <= 0) {
    throw HypothesisViolation("core type has k_2 > 0", static_cast<double>(core.type.ks.front()));
  }
  return core;
}

// A -> (L_A, R_A) must be injective on the given generators.
void require_nonvanishing(const std::vector<Matrix>& left, const std::vector<Matrix>& right,
                          std::size_t first, std::size_t last, double tol,
                          const std::string& clause) {
  if (first >= last) return;
  const Eigen::Index m2 = left[0].size();
  Matrix stacked(2 * m2, static_cast<Eigen::Index>(last - first));
  for (std::size_t a = first; a < last; ++a) {
    const auto col = static_cast<Eigen::Index>(a - first);
    stacked.col(col).head(m2) = left[a].reshaped();
    stacked.col(col).tail(m2) = right[a].reshaped();
  }
  const Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > tol * smax)) throw HypothesisViolation(clause, smin);
}

ExtensionResult build(const ExtensionSpec& spec, double tol, bool general) {
  if (!(tol > 0.0)) throw InvalidParameter("extension: tol must be positive");
  const std::size_t d1 = spec.left_maps.size();
  if (d1 == 0) throw InvalidParameter("extension needs at least one generator");
  if (spec.right_maps.size() != d1) {
    throw DimensionMismatch("extension: left and right map counts differ");
  }
  const Core core = resolve_core(spec, tol);
  const std::size_t m = core.lambda.dim();
  const auto mi = static_cast<Eigen::Index>(m);
  for (std::size_t a = 0; a < d1; ++a) {
    if (spec.left_maps[a].rows() != mi || spec.left_maps[a].cols() != mi ||
        spec.right_maps[a].rows() != mi || spec.right_maps[a].cols() != mi) {
      throw DimensionMismatch("extension: action maps must be " + std::to_string(m) + "x" +
                              std::to_string(m));
    }
  }

  // Generators [0, h) are semisimple, [h, d1) central.
  std::size_t h = 0;
  std::vector<Matrix> ads(d1, Matrix::Zero(static_cast<Eigen::Index>(d1),
                                           static_cast<Eigen::Index>(d1)));
  if (general) {
    if (!spec.reductive) throw PreconditionViolation("general extension needs a reductive part");
    const ReductivePart& red = *spec.reductive;
    const Bracket& f = red.bracket;
    if (f.dim() != d1) throw DimensionMismatch("reductive part dimension differs from map count");
    h = red.semisimple_dim;
    if (h > d1) throw InvalidParameter("semisimple_dim exceeds the reductive dimension");
    if (!f.is_zero()) {
      const IdentityReport ir = check_identities(f);
      if (!ir.is_lie) {
        std::ostringstream os;
        os << "reductive part is not a Lie algebra (anticommutativity "
           << ir.anticommutativity_residual << ", Jacobi " << ir.jacobi_residual << ")";
        throw NotLie(os.str());
      }
    }
    for (std::size_t a = 0; a < d1; ++a) ads[a] = ad_matrix(f, a);
    const double f_norm = std::max(f.norm(), 1.0);
    for (std::size_t a = h; a < d1; ++a) {
      require(ads[a].norm() / f_norm, tol, "generator " + std::to_string(a + 1) + " is central");
    }
    if (h > 0) {
      const auto hi = static_cast<Eigen::Index>(h);
      const auto zi = static_cast<Eigen::Index>(d1 - h);
      double leak = 0.0;
      Matrix killing(hi, hi);
      for (std::size_t a = 0; a < h; ++a) {
        leak = std::max(leak, ads[a].block(hi, 0, zi, hi).norm() / f_norm);
        for (std::size_t b = 0; b < h; ++b) {
          killing(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              (ads[a].topLeftCorner(hi, hi) * ads[b].topLeftCorner(hi, hi)).trace();
        }
      }
      require(leak, tol, "semisimple generators span an ideal");
      const Eigen::JacobiSVD<Matrix> svd(killing);
      const auto& sv = svd.singularValues();
      const double kmin = sv(sv.size() - 1);
      if (!(kmin > kKillingTol * std::max(sv(0), 1.0))) {
        throw HypothesisViolation("semisimple part has nondegenerate Killing form", kmin);
      }
      for (std::size_t a = 0; a < h; ++a) {
        const std::string g = " (generator " + std::to_string(a + 1) + ")";
        require(skew_residual(ads[a]), tol, "ad_f H is skew-Hermitian" + g);
        require(skew_residual(spec.left_maps[a]), tol, "L_H is skew-Hermitian" + g);
        require(skew_residual(spec.right_maps[a]), tol, "R_H is skew-Hermitian" + g);
      }
    }
  } else if (spec.reductive) {
    throw PreconditionViolation("solvable extension takes no reductive part");
  }

  for (std::size_t a = 0; a < d1; ++a) {
    const std::string g = " (generator " + std::to_string(a + 1) + ")";
    const Matrix& l = spec.left_maps[a];
    const Matrix& r = spec.right_maps[a];
    require(commutator_residual(core.d, l), tol, "(i) [D_lambda, L_A] = 0" + g);
    require(commutator_residual(core.d, r), tol, "(i) [D_lambda, R_A] = 0" + g);
    require(derivation_residual(l, core.lambda), tol, "L_A is a derivation of lambda" + g);
    require(derivation_residual(r, core.lambda), tol, "R_A is a derivation of lambda" + g);
    if (a >= h) {
      require(normality_residual(l), tol, "(ii) L_A is normal" + g);
      require(normality_residual(r), tol, "(ii) R_A is normal" + g);
    }
  }
  require_nonvanishing(spec.left_maps, spec.right_maps, h, d1, tol,
                       "(ii) L_A or R_A is nonzero for every A != 0");

  const auto di = static_cast<Eigen::Index>(d1);
  Matrix gram(di, di);
  for (std::size_t a = 0; a < d1; ++a) {
    for (std::size_t b = 0; b < d1; ++b) {
      const Complex t = (ads[a] * ads[b].adjoint()).trace() +
                        (spec.left_maps[a] * spec.left_maps[b].adjoint()).trace() +
                        (spec.right_maps[a] * spec.right_maps[b].adjoint()).trace();
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = -2.0 / core.c * t;
    }
  }
  gram = (gram + gram.adjoint()) / 2.0;
  const Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  const double gmin = es.eigenvalues()(0);
  const double gmax = es.eigenvalues()(di - 1);
  if (!(gmax > 0.0 && gmin > kGramRatio * gmax)) throw GramNotPositive(gmin);
  const Eigen::LLT<Matrix> llt(gram);
  const Matrix chol = llt.matrixL();

  // Bracket in the basis {A_a} + {X_i}; then move to the orthonormal one.
  const std::size_t n = d1 + m;
  Bracket raw(n);
  const Bracket* f = general ? &spec.reductive->bracket : nullptr;
  for (std::size_t a = 0; a < d1; ++a) {
    if (f) {
      for (std::size_t b = 0; b < d1; ++b)
        for (std::size_t k = 0; k < d1; ++k) raw(a, b, k) = (*f)(a, b, k);
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        const auto ii = static_cast<Eigen::Index>(i);
        raw(a, d1 + i, d1 + k) = spec.left_maps[a](ki, ii);
        raw(d1 + i, a, d1 + k) = spec.right_maps[a](ki, ii);
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) raw(d1 + i, d1 + j, d1 + k) = core.lambda(i, j, k);

  const auto ni = static_cast<Eigen::Index>(n);
  Matrix p_inv = Matrix::Identity(ni, ni);
  p_inv.topLeftCorner(di, di) = chol.transpose();
  const Bracket mu = gl_act(p_inv, raw);

  const IdentityReport ids = check_identities(mu);
  if (spec.identity == ExtensionIdentity::SymmetricLeibniz) {
    if (!ids.is_symmetric_leibniz) throw NotSymmetricLeibniz(ids.left_residual, ids.right_residual);
  } else {
    if (!ids.is_left_leibniz) throw NotSymmetricLeibniz(ids.left_residual, ids.right_residual);
    for (std::size_t a = 0; a < d1; ++a) {
      const Matrix r = right_op(mu, Vector::Unit(ni, static_cast<Eigen::Index>(a)));
      require(derivation_residual(r, mu), tol,
              "R_A is a derivation of the extension (generator " + std::to_string(a + 1) + ")");
    }
  }

  ExtensionResult res;
  res.bracket = mu;
  res.report = criticality_decompose(mu, tol);
  res.c_lambda = core.c;
  res.gram = gram;
  res.generator_transform = chol.transpose().inverse();
  std::vector<long long> ks{0};
  std::vector<int> ds{static_cast<int>(d1)};
  ks.insert(ks.end(), core.type.ks.begin(), core.type.ks.end());
  ds.insert(ds.end(), core.type.ds.begin(), core.type.ds.end());
  res.expected_type = make_type(ks, ds);

  if (!res.report.is_critical) {
    throw CertificationFailure("assembled bracket is not critical (residual " +
                               fmt(res.report.residual_tangent) + ")");
  }
  res.type = critical_type(res.report.D);
  if (!res.type.same_type(res.expected_type)) {
    throw CertificationFailure("assembled type " + res.type.to_string() + " differs from " +
                               res.expected_type.to_string());
  }
  if (std::fabs(res.report.c - core.c) > 1e-8 * std::fabs(core.c)) {
    throw CertificationFailure("c of the assembled bracket is " + fmt(res.report.c) +
                               ", expected " + fmt(core.c));
  }
  return res;
}

}  // namespace

HypothesisViolation::HypothesisViolation(std::string clause, double residual)
    : Error("hypothesis violated: " + clause + " (residual " + fmt(residual) + ")"),
      clause_(std::move(clause)),
      residual_(residual) {}

NotSymmetricLeibniz::NotSymmetricLeibniz(double left, double right)
    : Error("assembled bracket is not symmetric Leibniz (left defect " + fmt(left) +
            ", right defect " + fmt(right) + ")"),
      left_defect(left),
      right_defect(right) {}

GramNotPositive::GramNotPositive(double min_eig)
    : Error("Gram matrix is not positive definite (smallest eigenvalue " + fmt(min_eig) + ")"),
      min_eigenvalue(min_eig) {}

ExtensionResult build_solvable_extension(const ExtensionSpec& spec, double tol) {
  return build(spec, tol, false);
}

ExtensionResult build_general_extension(const ExtensionSpec& spec, double tol) {
  return build(spec, tol, true);
}

}  // namespace leibniz
