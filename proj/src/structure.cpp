#include "leibniz/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace leibniz {

namespace {

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Vector random_unit_in(const Subspace& s, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector coeffs(static_cast<Eigen::Index>(s.rank()));
  for (Eigen::Index t = 0; t < coeffs.size(); ++t) coeffs(t) = Complex(gauss(rng), gauss(rng));
  Vector v = s.basis() * coeffs;
  return v / v.norm();
}

double normality_defect(const Matrix& a) {
  return (a * a.adjoint() - a.adjoint() * a).norm();
}

std::string vacuous(const char* what) { return std::string("vacuous: ") + what + " = 0"; }

}  // namespace

Subspace center(const Bracket& mu, double tol) {
  const std::size_t n = mu.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  // L_x = 0: sum_i x_i c_{ij}^k = 0 for all (j, k); R_x = 0: sum_j x_j c_{ij}^k = 0.
  Matrix conditions(2 * ni * ni, ni);
  Eigen::Index row = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k, ++row)
      for (std::size_t i = 0; i < n; ++i) conditions(row, static_cast<Eigen::Index>(i)) = mu(i, j, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k, ++row)
      for (std::size_t j = 0; j < n; ++j) conditions(row, static_cast<Eigen::Index>(j)) = mu(i, j, k);
  return null_space(conditions, tol);
}

StructureProfile structure_profile(const Bracket& mu, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("structure_profile: tol must be positive");
  const std::size_t n = mu.dim();
  StructureProfile p;
  const Subspace whole = Subspace::full(n);

  auto run_series = [&](bool derived) {
    std::vector<std::size_t> dims{n};
    Subspace cur = whole;
    for (std::size_t step = 0; step <= n + 1 && cur.rank() > 0; ++step) {
      Subspace next =
          derived ? subspace_product(mu, cur, cur, tol) : subspace_product(mu, whole, cur, tol);
      dims.push_back(next.rank());
      if (next.rank() == cur.rank()) break;
      cur = std::move(next);
    }
    return dims;
  };
  p.derived_dims = run_series(true);
  p.lower_central_dims = run_series(false);
  p.center = center(mu, tol);
  p.center_dim = p.center.rank();
  p.is_solvable = p.derived_dims.back() == 0;
  p.is_nilpotent = p.lower_central_dims.back() == 0;
  return p;
}

GradingDecomposition grading_decomposition(const Bracket& mu, const HermitianMap& d, double tol,
                                           double cluster_tol) {
  const std::size_t n = mu.dim();
  if (d.dim() != n) throw DimensionMismatch("grading_decomposition: D has wrong size");
  const double ns = mu.norm_sq();
  if (ns > 0.0) {
    const double scale = std::max(d.norm(), ns) * std::sqrt(ns);
    const double defect = inf_act(d.matrix(), mu).norm() / scale;
    if (defect > tol) {
      std::ostringstream os;
      os << "grading_decomposition: D is not a derivation (defect " << defect << ")";
      throw NotDerivation(os.str());
    }
  }
  const EigenDecomposition ed = hermitian_eigen(d);
  const double gap = cluster_tol * std::max(1.0, ed.eigenvalues.cwiseAbs().maxCoeff());

  GradingDecomposition g;
  Matrix zero(static_cast<Eigen::Index>(n), 0);
  Matrix pos(static_cast<Eigen::Index>(n), 0);
  Matrix neg(static_cast<Eigen::Index>(n), 0);
  Eigen::Index start = 0;
  const Eigen::Index total = ed.eigenvalues.size();
  while (start < total) {
    Eigen::Index end = start + 1;
    while (end < total && ed.eigenvalues(end) - ed.eigenvalues(end - 1) <= gap) ++end;
    const double value = ed.eigenvalues.segment(start, end - start).mean();
    const Matrix cols = ed.eigenvectors.middleCols(start, end - start);
    g.eigenspaces.push_back({value, Subspace::from_orthonormal(cols)});
    if (std::fabs(value) <= gap) {
      zero = hstack(zero, cols);
    } else if (value > 0.0) {
      pos = hstack(pos, cols);
    } else {
      neg = hstack(neg, cols);
    }
    start = end;
  }
  g.zero_part = Subspace::from_orthonormal(zero);
  g.positive_part = Subspace::from_orthonormal(pos);
  g.negative_part = Subspace::from_orthonormal(neg);
  return g;
}

double ideal_residual(const Bracket& mu, const Subspace& space) {
  const std::size_t n = mu.dim();
  const double nrm = mu.norm();
  if (nrm == 0.0 || space.rank() == 0) return 0.0;
  const Matrix outside = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
                         space.projector();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
    for (Eigen::Index s = 0; s < space.basis().cols(); ++s) {
      const Vector v = space.basis().col(s);
      worst = std::max(worst, (outside * evaluate(mu, e, v)).norm());
      worst = std::max(worst, (outside * evaluate(mu, v, e)).norm());
    }
  }
  return worst / nrm;
}

double grading_product_residual(const Bracket& mu, const GradingDecomposition& grading,
                                double cluster_tol) {
  const double nrm = mu.norm();
  if (nrm == 0.0) return 0.0;
  double spread = 1.0;
  for (const auto& es : grading.eigenspaces) spread = std::max(spread, std::fabs(es.eigenvalue));
  const double gap = cluster_tol * spread * 2.0;
  double worst = 0.0;
  for (const auto& a : grading.eigenspaces)
    for (const auto& b : grading.eigenspaces) {
      const Eigenspace* target = nullptr;
      for (const auto& c : grading.eigenspaces)
        if (std::fabs(c.eigenvalue - (a.eigenvalue + b.eigenvalue)) <= gap) target = &c;
      for (Eigen::Index u = 0; u < a.space.basis().cols(); ++u)
        for (Eigen::Index w = 0; w < b.space.basis().cols(); ++w) {
          const Vector p = evaluate(mu, a.space.basis().col(u), b.space.basis().col(w));
          const Vector off = target ? Vector(p - target->space.projector() * p) : p;
          worst = std::max(worst, off.norm());
        }
    }
  return worst / nrm;
}

StructureVerdict verify_structure_theorem(const Bracket& mu, const MomentReport& report,
                                          StructureOptions opts) {
  if (!report.is_critical) {
    throw PreconditionViolation("verify_structure_theorem: bracket is not critical");
  }
  if (!check_identities(mu).is_symmetric_leibniz) {
    throw PreconditionViolation("verify_structure_theorem: bracket is not symmetric Leibniz");
  }
  const std::size_t n = mu.dim();
  const auto ni = static_cast<Eigen::Index>(n);
  const Bracket unit = mu.normalized();
  const double tol = opts.tol;

  StructureVerdict v;
  v.grading = grading_decomposition(mu, report.D, tol, opts.type_tol);
  const Subspace& l0 = v.grading.zero_part;
  const Subspace& lplus = v.grading.positive_part;

  // (i) adjoints of L_A, R_A are derivations for A in l_0.
  if (l0.rank() == 0) {
    v.adjoint_closed = {true, 0.0, vacuous("l_0")};
  } else {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < l0.basis().cols(); ++c) {
      const Vector a = l0.basis().col(c);
      worst = std::max(worst, inf_act(left_op(unit, a).adjoint(), unit).norm());
      worst = std::max(worst, inf_act(right_op(unit, a).adjoint(), unit).norm());
    }
    v.adjoint_closed = {worst < tol, worst, ""};
  }

  // (ii) l_0 is a reductive Lie subalgebra.
  Subspace l0_center_ambient = Subspace::zero(n);
  if (l0.rank() == 0) {
    v.l0_reductive = {true, 0.0, vacuous("l_0")};
  } else {
    const Matrix outside = Matrix::Identity(ni, ni) - l0.projector();
    double closure = 0.0;
    for (Eigen::Index a = 0; a < l0.basis().cols(); ++a)
      for (Eigen::Index b = 0; b < l0.basis().cols(); ++b)
        closure = std::max(closure,
                           (outside * evaluate(unit, l0.basis().col(a), l0.basis().col(b))).norm());
    const Bracket f = restrict_to(unit, l0.basis());
    const IdentityReport ids = identity_residuals(f);
    const std::size_t p = f.dim();
    const Subspace z = center(f);
    const Subspace h = subspace_product(f, Subspace::full(p), Subspace::full(p));
    v.l0_center_dim = z.rank();
    v.l0_semisimple_dim = h.rank();
    const bool split = z.rank() + h.rank() == p &&
                       Subspace::span(hstack(z.basis(), h.basis())).rank() == p;
    bool killing_ok = true;
    if (h.rank() > 0) {
      const Bracket fh = restrict_to(f, h.basis());
      if (fh.is_zero()) {
        killing_ok = false;
      } else {
        const Bracket fhn = fh.normalized();
        const auto q = static_cast<Eigen::Index>(fhn.dim());
        std::vector<Matrix> ad;
        for (Eigen::Index t = 0; t < q; ++t) ad.push_back(left_op(fhn, Vector::Unit(q, t)));
        Matrix killing(q, q);
        for (Eigen::Index s = 0; s < q; ++s)
          for (Eigen::Index t = 0; t < q; ++t) killing(s, t) = (ad[s] * ad[t]).trace();
        Eigen::JacobiSVD<Matrix> svd(killing);
        v.killing_min_singular = svd.singularValues()(q - 1);
        killing_ok = v.killing_min_singular > 1e-6;
      }
    }
    const double residual =
        std::max({closure, ids.anticommutativity_residual, ids.jacobi_residual});
    std::ostringstream detail;
    detail << "center " << z.rank() << ", derived " << h.rank();
    if (!split) detail << "; l_0 is not center (+) derived";
    if (!killing_ok) detail << "; Killing form of derived part degenerate";
    v.l0_reductive = {residual < tol && split && killing_ok, residual, detail.str()};
    if (z.rank() > 0) l0_center_ambient = Subspace::span(l0.basis() * z.basis());
  }

  // (iii) L_Z, R_Z normal for Z in the center of l_0; normality is not linear,
  // so basis vectors, pairwise sums and random combinations are sampled.
  if (l0_center_ambient.rank() == 0) {
    v.center_normal = {true, 0.0, vacuous("z(l_0)")};
  } else {
    std::vector<Vector> samples;
    const Matrix& zb = l0_center_ambient.basis();
    for (Eigen::Index s = 0; s < zb.cols(); ++s) samples.push_back(zb.col(s));
    for (Eigen::Index s = 0; s < zb.cols(); ++s)
      for (Eigen::Index t = s + 1; t < zb.cols(); ++t) {
        samples.push_back((zb.col(s) + zb.col(t)) / std::sqrt(2.0));
        samples.push_back((zb.col(s) + Complex(0, 1) * zb.col(t)) / std::sqrt(2.0));
      }
    std::mt19937_64 rng(opts.seed);
    for (int r = 0; r < 10; ++r) samples.push_back(random_unit_in(l0_center_ambient, rng));
    double worst = 0.0;
    for (const Vector& z : samples) {
      worst = std::max(worst, normality_defect(left_op(unit, z)));
      worst = std::max(worst, normality_defect(right_op(unit, z)));
    }
    v.center_normal = {worst < tol, worst, ""};
  }

  // (iv) l_+ is a nilpotent two-sided ideal carrying a critical point of the
  // parent type with the zero eigenvalue removed.
  NilradicalCheck& nil = v.nilradical;
  if (lplus.rank() == 0) {
    nil.nilpotent = true;
    nil.clause = {true, 0.0, vacuous("l_+")};
  } else {
    nil.ideal_residual = ideal_residual(unit, lplus);
    const Bracket restricted = restrict_to(unit, lplus.basis());
    nil.nilpotent = structure_profile(restricted).is_nilpotent;
    const bool ideal_ok = nil.ideal_residual < tol;
    if (restricted.norm() <= 1e-12) {
      nil.degenerate_abelian = true;
      nil.clause = {ideal_ok && nil.nilpotent, nil.ideal_residual,
                    "degenerate: abelian nilradical"};
    } else {
      try {
        const CriticalType parent = critical_type(report.D, opts.type_tol, opts.max_denominator);
        std::vector<long long> ks;
        std::vector<int> ds;
        for (std::size_t t = 0; t < parent.ks.size(); ++t) {
          if (parent.ks[t] == 0) continue;
          ks.push_back(parent.ks[t]);
          ds.push_back(parent.ds[t]);
        }
        nil.expected_type = make_type(ks, ds);
        const MomentReport sub = criticality_decompose(restricted, tol);
        const double residual = std::max(nil.ideal_residual, sub.residual_tangent);
        if (!sub.is_critical) {
          nil.clause = {false, residual, "restriction to l_+ is not critical"};
        } else {
          nil.restricted_type = critical_type(sub.D, opts.type_tol, opts.max_denominator);
          const bool type_ok = nil.restricted_type->same_type(*nil.expected_type);
          std::ostringstream detail;
          detail << "restricted type " << nil.restricted_type->to_string() << ", expected "
                 << nil.expected_type->to_string();
          nil.clause = {ideal_ok && nil.nilpotent && type_ok, residual, detail.str()};
        }
      } catch (const IrrationalType& e) {
        nil.clause = {false, nil.ideal_residual, e.what()};
      }
    }
  }

  // Right multiplications by nonzero elements of l_- are never normal.
  const Subspace& lminus = v.grading.negative_part;
  if (lminus.rank() > 0) {
    std::mt19937_64 rng(opts.seed + 1);
    double smallest = INFINITY;
    for (std::size_t s = 0; s < opts.negative_samples; ++s) {
      const Vector x = random_unit_in(lminus, rng);
      smallest = std::min(smallest, normality_defect(right_op(unit, x)));
    }
    v.negative_part_min_commutator = smallest;
  }
  return v;
}

}  // namespace leibniz
