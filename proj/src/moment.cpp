#include "leibniz/moment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace leibniz {

namespace {

RealVector realify(const Matrix& a) {
  RealVector v(2 * a.size());
  const Eigen::Map<const Vector> flat(a.data(), a.size());
  v << flat.real(), flat.imag();
  return v;
}

struct Cluster {
  double value = 0.0;
  int count = 0;
};

std::vector<Cluster> cluster_sorted(const RealVector& values, double gap) {
  std::vector<Cluster> out;
  double sum = 0.0;
  double last = 0.0;
  for (Eigen::Index t = 0; t < values.size(); ++t) {
    const double x = values(t);
    if (out.empty() || x - last > gap) {
      if (!out.empty()) out.back().value = sum / out.back().count;
      out.push_back({x, 0});
      sum = 0.0;
    }
    out.back().count += 1;
    sum += x;
    last = x;
  }
  if (!out.empty()) out.back().value = sum / out.back().count;
  return out;
}

}  // namespace

std::size_t CriticalType::dim() const {
  return static_cast<std::size_t>(std::accumulate(ds.begin(), ds.end(), 0));
}

std::string CriticalType::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t t = 0; t < ks.size(); ++t) os << (t ? "<" : "") << ks[t];
  os << ';';
  for (std::size_t t = 0; t < ds.size(); ++t) os << (t ? "," : "") << ds[t];
  os << ')';
  return os.str();
}

CriticalType make_type(std::vector<long long> ks, std::vector<int> ds) {
  if (ks.size() != ds.size()) throw InvalidParameter("type: ks and ds differ in length");
  std::map<long long, int> merged;
  for (std::size_t t = 0; t < ks.size(); ++t) {
    if (ds[t] < 0) throw InvalidParameter("type: negative multiplicity");
    if (ds[t] > 0) merged[ks[t]] += ds[t];
  }
  if (merged.empty()) throw InvalidParameter("type: empty");
  long long g = 0;
  for (const auto& [k, d] : merged) g = std::gcd(g, k < 0 ? -k : k);
  CriticalType type;
  for (const auto& [k, d] : merged) {
    type.ks.push_back(g > 0 ? k / g : k);
    type.ds.push_back(d);
  }
  return type;
}

HermitianMap moment_matrix(const Bracket& mu) {
  const std::size_t n = mu.dim();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
    const Matrix l = left_op(mu, e);
    const Matrix r = right_op(mu, e);
    m += 2.0 * (l * l.adjoint()) - 2.0 * (l.adjoint() * l) - 2.0 * (r.adjoint() * r);
  }
  return HermitianMap::symmetrized(m);
}

double functional_value(const Bracket& mu) {
  const double ns = mu.norm_sq();
  if (ns == 0.0) throw ZeroBracket();
  const Matrix m = moment_matrix(mu).matrix();
  return (m * m).trace().real() / (ns * ns);
}

MomentReport criticality_decompose(const Bracket& mu, double tol) {
  if (!(tol > 0.0)) throw InvalidParameter("criticality_decompose: tol must be positive");
  const double ns = mu.norm_sq();
  if (ns == 0.0) throw ZeroBracket();
  const std::size_t n = mu.dim();
  const auto ni = static_cast<Eigen::Index>(n);

  MomentReport rep;
  rep.M = moment_matrix(mu);
  rep.norm_sq = ns;
  const Matrix& m = rep.M.matrix();
  const double tr_m2 = (m * m).trace().real();
  rep.F = tr_m2 / (ns * ns);
  rep.c = tr_m2 / rep.M.trace();
  rep.D = HermitianMap::symmetrized(m - rep.c * Matrix::Identity(ni, ni));

  const double m_norm = m.norm();
  const double mu_norm = std::sqrt(ns);

  const Bracket v = inf_act(m, mu);
  const Complex s = inner_product(v, mu) / ns;
  const Bracket tangent = v - s * mu;
  rep.residual_tangent = tangent.norm() / (m_norm * mu_norm);

  const double d_norm = rep.D.norm();
  rep.derivation_defect =
      d_norm > 0.0 ? inf_act(rep.D.matrix(), mu).norm() / (d_norm * mu_norm) : 0.0;

  // Least-squares projection of M onto span{I} + Hermitian derivations.
  const std::vector<Matrix> herm = hermitian_derivations(mu, 10.0 * tol);
  RealMatrix span_cols(2 * ni * ni, static_cast<Eigen::Index>(herm.size() + 1));
  span_cols.col(0) = realify(Matrix::Identity(ni, ni));
  for (std::size_t t = 0; t < herm.size(); ++t)
    span_cols.col(static_cast<Eigen::Index>(t + 1)) = realify(herm[t]);
  const RealVector target = realify(m);
  Eigen::ColPivHouseholderQR<RealMatrix> qr(span_cols);
  qr.setThreshold(1e-10);
  const RealVector coeffs = qr.solve(target);
  rep.residual_decomp = (span_cols * coeffs - target).norm() / m_norm;

  rep.is_critical = rep.residual_tangent < tol;
  return rep;
}

Rational best_rational(double x, long long max_denominator) {
  if (max_denominator < 1) throw InvalidParameter("best_rational: max_denominator must be >= 1");
  if (!std::isfinite(x)) throw InvalidParameter("best_rational: non-finite input");
  const bool negative = x < 0.0;
  double rest = std::fabs(x);

  // Convergents h/k of the continued fraction [a0; a1, a2, ...].
  long long h_prev = 1, k_prev = 0;
  long long h = static_cast<long long>(std::floor(rest));
  long long k = 1;
  double frac = rest - std::floor(rest);
  Rational best{h, k};
  while (frac > 1e-15) {
    rest = 1.0 / frac;
    const double a_real = std::floor(rest);
    frac = rest - a_real;
    if (a_real > 1e15) break;
    const auto a = static_cast<long long>(a_real);
    if (a > (max_denominator - k_prev) / std::max<long long>(k, 1)) {
      // Largest admissible semiconvergent; keep it only if it beats h/k.
      const long long a_max = (max_denominator - k_prev) / k;
      if (a_max >= 1) {
        const long long hs = a_max * h + h_prev;
        const long long ks = a_max * k + k_prev;
        const double target = std::fabs(x);
        if (std::fabs(static_cast<double>(hs) / ks - target) <
            std::fabs(static_cast<double>(h) / k - target)) {
          best = {hs, ks};
        }
      }
      break;
    }
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    best = {h, k};
  }
  if (negative) best.num = -best.num;
  return best;
}

CriticalType critical_type(const HermitianMap& d, double tol, int max_denominator) {
  if (!(tol > 0.0)) throw InvalidParameter("critical_type: tol must be positive");
  const std::size_t n = d.dim();
  if (n == 0) throw InvalidParameter("critical_type: empty map");
  const EigenDecomposition ed = hermitian_eigen(d);
  const RealVector& lambda = ed.eigenvalues;
  const double spectral = lambda.cwiseAbs().maxCoeff();
  const double gap = tol * std::max(1.0, spectral);
  const std::vector<Cluster> clusters = cluster_sorted(lambda, gap);

  const bool all_zero = std::all_of(clusters.begin(), clusters.end(),
                                    [gap](const Cluster& c) { return std::fabs(c.value) <= gap; });
  if (all_zero) {
    CriticalType zero;
    zero.ks = {0};
    zero.ds = {static_cast<int>(n)};
    zero.scale = 1.0;
    return zero;
  }

  double ref = 0.0;
  for (const Cluster& c : clusters) ref = std::max(ref, std::fabs(c.value));

  long long lcm = 1;
  for (const Cluster& c : clusters) {
    const Rational r = best_rational(c.value / ref, max_denominator);
    lcm = std::lcm(lcm, r.den);
    if (lcm > 1'000'000'000'000LL) throw IrrationalType("critical_type: denominators too large");
  }
  double scale = static_cast<double>(lcm) / ref;
  std::vector<long long> ks;
  for (const Cluster& c : clusters) ks.push_back(std::llround(scale * c.value));
  long long g = 0;
  for (long long k : ks) g = std::gcd(g, k < 0 ? -k : k);
  for (long long& k : ks) k /= g;
  scale /= static_cast<double>(g);

  double worst = 0.0;
  std::size_t pos = 0;
  for (std::size_t t = 0; t < clusters.size(); ++t)
    for (int r = 0; r < clusters[t].count; ++r, ++pos)
      worst = std::max(worst, std::fabs(scale * lambda(static_cast<Eigen::Index>(pos)) -
                                        static_cast<double>(ks[t])));
  if (!(worst < tol)) {
    std::ostringstream os;
    os << "critical_type: no integer scaling within tolerance (error " << worst
       << ", max denominator " << max_denominator << ")";
    throw IrrationalType(os.str());
  }

  std::vector<int> ds;
  for (const Cluster& c : clusters) ds.push_back(c.count);
  CriticalType type = make_type(ks, ds);
  type.scale = scale;
  return type;
}

double critical_value_formula(const CriticalType& type, std::size_t n) {
  if (type.ks.size() != type.ds.size() || type.ks.empty()) {
    throw InvalidParameter("critical_value_formula: malformed type");
  }
  if (type.dim() != n) {
    throw InvalidParameter("critical_value_formula: multiplicities do not sum to n");
  }
  __int128 s1 = 0;
  __int128 s2 = 0;
  for (std::size_t t = 0; t < type.ks.size(); ++t) {
    s1 += static_cast<__int128>(type.ks[t]) * type.ds[t];
    s2 += static_cast<__int128>(type.ks[t]) * type.ks[t] * type.ds[t];
  }
  if (s2 == 0) return 4.0 / static_cast<double>(n);
  const __int128 denom = static_cast<__int128>(n) * s2 - s1 * s1;
  if (denom == 0) {
    throw DegenerateType("critical_value_formula: inadmissible type " + type.to_string());
  }
  return 4.0 * static_cast<double>(s2) / static_cast<double>(denom);
}

}  // namespace leibniz
