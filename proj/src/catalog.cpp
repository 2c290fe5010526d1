#include "leibniz/catalog.hpp"

#include <cmath>
#include <future>
#include <sstream>

namespace leibniz::catalog {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string format_param(Complex z) {
  auto num = [](double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
  };
  if (z.imag() == 0.0) return num(z.real());
  std::string im = z.imag() == 1.0 ? "i" : z.imag() == -1.0 ? "-i" : num(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  if (im[0] != '-') im = "+" + im;
  return num(z.real()) + im;
}

/// Adds e_i e_j = v e_k and, for Lie tables, e_j e_i = -v e_k.
struct Table {
  std::size_t dim;
  bool antisymmetric;
  std::vector<Entry> entries;

  Table& add(std::size_t i, std::size_t j, std::size_t k, Complex v) {
    entries.push_back({i, j, k, v});
    if (antisymmetric && i != j) entries.push_back({j, i, k, -v});
    return *this;
  }
  Bracket bracket() const { return make_bracket(dim, entries); }
};

void require_params(const std::string& name, const std::vector<Complex>& params,
                    std::size_t count) {
  if (params.size() != count) {
    throw InvalidParameter(name + " takes " + std::to_string(count) + " parameter(s), got " +
                           std::to_string(params.size()));
  }
}

CatalogEntry finish(CatalogEntry e) {
  e.dim = e.bracket.dim();
  e.critical_in_given_basis = criticality_decompose(e.bracket).is_critical;
  return e;
}

CriticalType type_of(std::vector<long long> ks, std::vector<int> ds) {
  return make_type(std::move(ks), std::move(ds));
}

}  // namespace

std::string to_string(AlgebraClass c) {
  switch (c) {
    case AlgebraClass::Lie:
      return "Lie";
    case AlgebraClass::SymmetricLeibniz:
      return "symmetric Leibniz";
    case AlgebraClass::LeftLeibniz:
      return "left Leibniz";
    case AlgebraClass::RightLeibniz:
      return "right Leibniz";
  }
  return "?";
}

std::string CatalogEntry::label() const {
  if (name == "mu_hy" || name == "mu_he" || name == "mu_sy") {
    return name + "(n=" + std::to_string(dim) + ")";
  }
  if (params.empty()) return name;
  const char* symbol = name == "S3" ? "beta" : "alpha";
  return name + "(" + symbol + "=" + format_param(params[0]) + ")";
}

const std::vector<EntryInfo>& known_entries() {
  static const std::vector<EntryInfo> entries = {
      {"lie2", "2D Lie: [e1,e2]=e2", 0, false},
      {"nonlie2", "2D non-Lie symmetric Leibniz: e1e1=e2", 0, false},
      {"left2", "2D left (not right) Leibniz: e1e2=e2", 0, false},
      {"L1", "Heisenberg: [e1,e2]=e3", 0, false},
      {"L2", "[e1,e2]=e2", 0, false},
      {"L3", "[e3,e1]=e1, [e3,e2]=alpha e2 (alpha != 0)", 1, false},
      {"L4", "[e3,e1]=e1+e2, [e3,e2]=e2", 0, false},
      {"L5", "sl2: [e3,e1]=2e1, [e3,e2]=-2e2, [e1,e2]=e3", 0, false},
      {"S1", "e3e3=e1", 0, false},
      {"S2", "e2e2=e1, e3e3=e1", 0, false},
      {"S3", "e2e2=beta e1, e3e2=e1, e3e3=e1", 1, false},
      {"S4", "e1e3=e1", 0, false},
      {"S5", "e1e3=alpha e1, e2e3=e2, e3e2=-e2 (alpha != 0)", 1, false},
      {"S6", "e2e3=e2, e3e2=-e2, e3e3=e1", 0, false},
      {"S7", "e1e3=alpha e1, e2e3=e2 (alpha != 0)", 1, false},
      {"S8", "e1e3=e1+e2, e3e3=e1", 0, false},
      {"mu_hy", "[X1,Xi]=Xi, i=2..n", 0, true},
      {"mu_he", "[X1,X2]=X3 in dimension n", 0, true},
      {"mu_sy", "X1X1=X2 in dimension n", 0, true},
      {"so3", "[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2", 0, false},
  };
  return entries;
}

CatalogEntry get(const std::string& name, const std::vector<Complex>& params,
                 std::optional<std::size_t> n) {
  CatalogEntry e;
  e.name = name;
  e.params = params;
  const bool sized = name == "mu_hy" || name == "mu_he" || name == "mu_sy";
  if (n && !sized) throw InvalidParameter(name + " has a fixed dimension");

  auto lie = [](std::size_t d) { return Table{d, true, {}}; };
  auto alg = [](std::size_t d) { return Table{d, false, {}}; };
  auto nonzero_alpha = [&]() {
    require_params(name, params, 1);
    if (std::abs(params[0]) == 0.0) throw InvalidParameter(name + " requires alpha != 0");
    return params[0];
  };
  auto no_params = [&]() { require_params(name, params, 0); };

  using AC = AlgebraClass;
  if (name == "lie2") {
    no_params();
    e.bracket = lie(2).add(1, 2, 2, 1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 1});
    e.expected_value = 4.0;
  } else if (name == "nonlie2") {
    no_params();
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(2).add(1, 1, 2, 1.0).bracket();
    e.expected_type = type_of({1, 2}, {1, 1});
    e.expected_value = 20.0;
  } else if (name == "left2") {
    no_params();
    e.algebra_class = AC::LeftLeibniz;
    e.bracket = alg(2).add(1, 2, 2, 1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 1});
    e.expected_value = 4.0;
    e.notes = "critical point that is not symmetric Leibniz";
  } else if (name == "L1") {
    no_params();
    e.bracket = lie(3).add(1, 2, 3, 1.0).bracket();
    e.expected_type = type_of({1, 2}, {2, 1});
    e.expected_value = 12.0;
  } else if (name == "L2") {
    no_params();
    e.bracket = lie(3).add(1, 2, 2, 1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 2});
    e.expected_value = 4.0;
  } else if (name == "L3") {
    const Complex alpha = nonzero_alpha();
    e.bracket = lie(3).add(3, 1, 1, 1.0).add(3, 2, 2, alpha).bracket();
    e.expected_type = type_of({0, 1}, {1, 2});
    e.expected_value = 4.0;
  } else if (name == "L4") {
    no_params();
    e.bracket = lie(3).add(3, 1, 1, 1.0).add(3, 1, 2, 1.0).add(3, 2, 2, 1.0).bracket();
    e.notes = "no critical point in the orbit";
  } else if (name == "L5") {
    no_params();
    e.bracket = lie(3).add(3, 1, 1, 2.0).add(3, 2, 2, -2.0).add(1, 2, 3, 1.0).bracket();
    e.expected_type = type_of({0}, {3});
    e.expected_value = 4.0 / 3.0;
  } else if (name == "S1") {
    no_params();
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(3).add(3, 3, 1, 1.0).bracket();
    e.expected_type = type_of({3, 5, 6}, {1, 1, 1});
    e.expected_value = 20.0;
  } else if (name == "S2") {
    no_params();
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(3).add(2, 2, 1, 1.0).add(3, 3, 1, 1.0).bracket();
    e.expected_type = type_of({1, 2}, {2, 1});
    e.expected_value = 12.0;
  } else if (name == "S3") {
    require_params(name, params, 1);
    const Complex beta = params[0];
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(3).add(2, 2, 1, beta).add(3, 2, 1, 1.0).add(3, 3, 1, 1.0).bracket();
    if (std::abs(beta - 0.25) < 1e-12) {
      e.notes = "no critical point in the orbit";
    } else {
      e.expected_type = type_of({1, 2}, {2, 1});
      e.expected_value = 12.0;
    }
  } else if (name == "S4") {
    no_params();
    e.algebra_class = AC::RightLeibniz;
    e.notes = "only the right identity holds; the opposite algebra is left Leibniz";
    e.bracket = alg(3).add(1, 3, 1, 1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 2});
    e.expected_value = 4.0;
  } else if (name == "S5") {
    const Complex alpha = nonzero_alpha();
    e.algebra_class = AC::RightLeibniz;
    e.notes = "only the right identity holds; the opposite algebra is left Leibniz";
    e.bracket = alg(3).add(1, 3, 1, alpha).add(2, 3, 2, 1.0).add(3, 2, 2, -1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 2});
    e.expected_value = 4.0;
  } else if (name == "S6") {
    no_params();
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(3).add(2, 3, 2, 1.0).add(3, 2, 2, -1.0).add(3, 3, 1, 1.0).bracket();
    e.notes = "no critical point in the orbit";
  } else if (name == "S7") {
    const Complex alpha = nonzero_alpha();
    e.algebra_class = AC::RightLeibniz;
    e.notes = "only the right identity holds; the opposite algebra is left Leibniz";
    e.bracket = alg(3).add(1, 3, 1, alpha).add(2, 3, 2, 1.0).bracket();
    e.expected_type = type_of({0, 1}, {1, 2});
    e.expected_value = 4.0;
  } else if (name == "S8") {
    no_params();
    e.algebra_class = AC::RightLeibniz;
    e.bracket = alg(3).add(1, 3, 1, 1.0).add(1, 3, 2, 1.0).add(3, 3, 1, 1.0).bracket();
    e.notes = "no critical point in the orbit; only the right identity holds";
  } else if (name == "mu_hy") {
    no_params();
    const std::size_t d = n.value_or(3);
    if (d < 2) throw InvalidParameter("mu_hy requires n >= 2");
    Table t = lie(d);
    for (std::size_t i = 2; i <= d; ++i) t.add(1, i, i, 1.0);
    e.bracket = t.bracket();
    e.expected_type = type_of({0, 1}, {1, static_cast<int>(d - 1)});
    e.expected_value = 4.0;
  } else if (name == "mu_he") {
    no_params();
    const std::size_t d = n.value_or(3);
    if (d < 3) throw InvalidParameter("mu_he requires n >= 3");
    e.bracket = lie(d).add(1, 2, 3, 1.0).bracket();
    e.expected_type = type_of({2, 3, 4}, {2, static_cast<int>(d - 3), 1});
    e.expected_value = 12.0;
  } else if (name == "mu_sy") {
    no_params();
    const std::size_t d = n.value_or(3);
    if (d < 2) throw InvalidParameter("mu_sy requires n >= 2");
    e.algebra_class = AC::SymmetricLeibniz;
    e.bracket = alg(d).add(1, 1, 2, 1.0).bracket();
    e.expected_type = type_of({3, 5, 6}, {1, static_cast<int>(d - 2), 1});
    e.expected_value = 20.0;
  } else if (name == "so3") {
    no_params();
    e.bracket = lie(3).add(1, 2, 3, 1.0).add(2, 3, 1, 1.0).add(3, 1, 2, 1.0).bracket();
    e.expected_type = type_of({0}, {3});
    e.expected_value = 4.0 / 3.0;
    e.notes = "sl2 in a basis with scalar moment matrix";
  } else {
    throw UnknownEntry("unknown catalog entry '" + name + "'");
  }
  return finish(std::move(e));
}

std::vector<CatalogEntry> verification_set() {
  const std::vector<Complex> alphas{1.0, 2.0, kI, Complex(1.0, 1.0)};
  std::vector<CatalogEntry> out;
  out.push_back(get("L1"));
  out.push_back(get("L2"));
  for (Complex a : alphas) out.push_back(get("L3", {a}));
  out.push_back(get("L4"));
  out.push_back(get("L5"));
  out.push_back(get("S1"));
  out.push_back(get("S2"));
  out.push_back(get("S3", {0.25}));
  out.push_back(get("S3", {1.0}));
  out.push_back(get("S4"));
  for (Complex a : alphas) out.push_back(get("S5", {a}));
  out.push_back(get("S6"));
  for (Complex a : alphas) out.push_back(get("S7", {a}));
  out.push_back(get("S8"));
  out.push_back(get("lie2"));
  out.push_back(get("nonlie2"));
  out.push_back(get("left2"));
  out.push_back(get("mu_hy", {}, 4));
  out.push_back(get("mu_he", {}, 4));
  out.push_back(get("mu_sy", {}, 4));
  out.push_back(get("so3"));
  return out;
}

VerifyRow verify_entry(const CatalogEntry& entry, const VerifyOptions& opts) {
  VerifyRow row;
  row.label = entry.label();
  row.expected_type = entry.expected_type;
  row.expected_value = entry.expected_value;
  try {
    const MomentReport direct = criticality_decompose(entry.bracket, opts.tol);
    if (!entry.expected_type) {
      row.strategy = "not-critical";
      row.residual = direct.residual_tangent;
      row.witness = entry.bracket;
      row.witness_report = direct;
      row.pass = direct.residual_tangent > opts.non_attained_residual;
      std::ostringstream os;
      os << "given-basis residual " << direct.residual_tangent;
      row.message = os.str();
      return row;
    }

    MomentReport report = direct;
    double value_tol = opts.direct_value_tol;
    row.strategy = "direct";
    row.witness = entry.bracket;
    if (!direct.is_critical) {
      FlowParams fp = opts.flow;
      fp.tol = opts.tol;
      const FlowTrace trace = descend(entry.bracket, fp);
      row.strategy = "flow";
      value_tol = opts.flow_value_tol;
      if (!trace.converged) {
        row.residual = trace.final_report.residual_tangent;
        row.message = "flow did not converge: " + trace.diagnostics;
        return row;
      }
      report = trace.final_report;
      row.witness = trace.final_bracket;
      std::ostringstream os;
      os << trace.iterations << " iterations";
      row.message = os.str();
    }
    row.residual = report.residual_tangent;
    row.witness_report = report;
    row.computed_value = report.F;
    row.computed_type = critical_type(report.D, opts.type_tol, opts.max_denominator);
    const double rel = std::fabs(report.F - *entry.expected_value) / *entry.expected_value;
    row.pass = row.computed_type->same_type(*entry.expected_type) && rel <= value_tol;
  } catch (const Error& e) {
    row.pass = false;
    row.message = e.what();
  }
  return row;
}

std::vector<VerifyRow> verify_catalog(const VerifyOptions& opts) {
  const std::vector<CatalogEntry> entries = verification_set();
  std::vector<VerifyRow> rows;
  rows.reserve(entries.size());
  if (!opts.parallel) {
    for (const auto& e : entries) rows.push_back(verify_entry(e, opts));
    return rows;
  }
  std::vector<std::future<VerifyRow>> pending;
  for (const auto& e : entries) {
    pending.push_back(std::async(std::launch::async, [&e, &opts] { return verify_entry(e, opts); }));
  }
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace leibniz::catalog
