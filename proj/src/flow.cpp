#include "leibniz/flow.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace leibniz {

namespace {

constexpr double kOrbitConditionLimit = 1e6;

struct Point {
  Bracket mu;  // unit norm
  HermitianMap m;
  double f = 0.0;
};

Point make_point(Bracket mu) {
  Point p{std::move(mu), {}, 0.0};
  p.m = moment_matrix(p.mu);
  const Matrix& m = p.m.matrix();
  p.f = (m * m).trace().real();  // |mu| = 1
  return p;
}

double condition_number(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  return sv(0) / sv(sv.size() - 1);
}

// M minus its projection onto Hermitian derivations and scalars. Those parts act on
// [mu] trivially but would inflate the accumulated g at a critical point.
HermitianMap effective_direction(const Point& p) {
  const auto ni = static_cast<Eigen::Index>(p.mu.dim());
  std::vector<Matrix> basis;
  auto add = [&basis](Matrix b) {
    for (const Matrix& q : basis) b -= (q.adjoint() * b).trace().real() * q;
    const double norm = b.norm();
    if (norm > 1e-10) basis.push_back(b / norm);
  };
  add(Matrix::Identity(ni, ni));
  for (Matrix& d : hermitian_derivations(p.mu)) add(std::move(d));
  Matrix m = p.m.matrix();
  for (const Matrix& q : basis) m -= (q.adjoint() * m).trace().real() * q;
  return HermitianMap::symmetrized(m);
}

}  // namespace

Matrix random_matrix(std::size_t n, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix a(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < ni; ++i) a(i, j) = Complex(gauss(rng), gauss(rng));
  return a;
}

Matrix random_unitary(std::size_t n, unsigned long long seed) {
  const Matrix a = random_matrix(n, seed);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Bracket perturb_in_orbit(const Bracket& mu, double magnitude, unsigned long long seed) {
  if (!(magnitude >= 0.0)) throw InvalidParameter("perturb_in_orbit: magnitude must be >= 0");
  if (magnitude == 0.0 || mu.dim() == 0) return mu;
  Matrix a = random_matrix(mu.dim(), seed);
  a *= magnitude / a.norm();
  const Matrix g = a.exp();
  return gl_act(g, mu);
}

FlowTrace descend(const Bracket& mu0, const FlowParams& params) {
  if (mu0.is_zero()) throw ZeroBracket();
  if (!(params.step0 > 0.0) || !(params.armijo_c > 0.0 && params.armijo_c < 1.0) ||
      !(params.shrink > 0.0 && params.shrink < 1.0) || !(params.tol > 0.0)) {
    throw InvalidParameter("descend: invalid flow parameters");
  }
  const std::size_t n = mu0.dim();
  const auto ni = static_cast<Eigen::Index>(n);

  FlowTrace trace;
  const Bracket start = mu0.normalized();
  Point cur = make_point(start);
  Matrix accumulated = Matrix::Identity(ni, ni);
  double last_step = INFINITY;

  auto tangent_of = [](const Point& p) {
    const Bracket v = inf_act(p.m.matrix(), p.mu);
    return v - inner_product(v, p.mu) * p.mu;
  };

  Bracket tangent = tangent_of(cur);
  double residual = tangent.norm() / cur.m.norm();
  trace.F_history.push_back(cur.f);
  trace.residual_history.push_back(residual);
  bool initially_critical = residual < params.tol;

  std::size_t it = 0;
  for (; it < params.max_iter && residual >= params.tol; ++it) {
    const double m_norm = cur.m.norm();
    const double base = params.step0 / m_norm;
    double h = std::min(base, params.growth * last_step);
    const double slope = 8.0 * tangent.norm_sq();  // -dF/dh at h = 0
    const double slack = 1e-14 * std::max(1.0, cur.f);

    const HermitianMap direction = effective_direction(cur);
    bool accepted = false;
    while (h >= params.min_step_ratio * base) {
      const Matrix g = hermitian_exp(direction, -h);
      // Acting on the start with the accumulated element keeps rounding from
      // compounding off the orbit; incremental steps only once it degenerates.
      const Matrix total = g * accumulated;
      Bracket next = condition_number(total) < kOrbitConditionLimit ? gl_act(total, start)
                                                                      : gl_act(g, cur.mu);
      Point trial = make_point(next.normalized());
      const bool armijo = trial.f <= cur.f - params.armijo_c * h * slope;
      bool flat = false;
      if (!armijo && trial.f <= cur.f + slack) {
        // Near the critical point F changes below rounding; accept when the
        // criticality residual still decreases.
        const Bracket t = tangent_of(trial);
        flat = t.norm() / trial.m.norm() < residual;
      }
      if (armijo || flat) {
        accumulated = total / total.norm();
        cur = std::move(trial);
        last_step = h;
        accepted = true;
        break;
      }
      h *= params.shrink;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "line search failed at iteration " << it << " (step below "
         << params.min_step_ratio * base << ", residual " << residual << ")";
      trace.diagnostics = os.str();
      break;
    }
    tangent = tangent_of(cur);
    residual = tangent.norm() / cur.m.norm();
    trace.F_history.push_back(cur.f);
    trace.residual_history.push_back(residual);
  }

  trace.iterations = it;
  trace.converged = residual < params.tol;
  if (!trace.converged && trace.diagnostics.empty()) {
    std::ostringstream os;
    os << "iteration limit " << params.max_iter << " reached (residual " << residual << ")";
    trace.diagnostics = os.str();
  }
  trace.final_bracket = cur.mu;
  trace.final_report = criticality_decompose(cur.mu, params.tol);
  trace.accumulated_condition = condition_number(accumulated);
  trace.limit_may_leave_orbit =
      !initially_critical && trace.accumulated_condition > kOrbitConditionLimit;
  return trace;
}

}  // namespace leibniz
