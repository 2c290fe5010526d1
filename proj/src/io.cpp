#include "leibniz/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace leibniz::io {

namespace {

constexpr std::size_t kMaxFileDim = 64;

std::string where(std::size_t index) { return "entry " + std::to_string(index + 1); }

std::size_t index_field(const Json& e, const char* key, std::size_t dim, std::size_t pos) {
  if (!e.contains(key)) throw FormatError(where(pos) + ": missing \"" + key + "\"");
  const Json& v = e.at(key);
  if (!v.is_number_integer()) throw FormatError(where(pos) + ": \"" + key + "\" must be an integer");
  const long long x = v.get<long long>();
  if (x < 1 || static_cast<std::size_t>(x) > dim) {
    throw FormatError(where(pos) + ": \"" + key + "\" = " + std::to_string(x) +
                      " outside [1, " + std::to_string(dim) + "]");
  }
  return static_cast<std::size_t>(x);
}

double real_field(const Json& e, const char* key, std::size_t pos) {
  if (!e.contains(key)) return 0.0;
  const Json& v = e.at(key);
  if (!v.is_number()) throw FormatError(where(pos) + ": \"" + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FormatError(where(pos) + ": \"" + key + "\" is not finite");
  return x;
}

Json real_json(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const RealVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real_json(v(i)));
  return out;
}

Json clause_json(const ClauseResult& c) {
  return Json{{"pass", c.pass}, {"residual", real_json(c.residual)}, {"detail", c.detail}};
}

Matrix parse_matrix(const Json& value, std::size_t m, const std::string& what) {
  const auto mi = static_cast<Eigen::Index>(m);
  if (!value.is_array() || value.size() != m) {
    throw FormatError(what + ": expected " + std::to_string(m) + " rows");
  }
  Matrix out(mi, mi);
  for (std::size_t i = 0; i < m; ++i) {
    const Json& row = value[i];
    if (!row.is_array() || row.size() != m) {
      throw FormatError(what + ": row " + std::to_string(i + 1) + " must have " +
                        std::to_string(m) + " entries");
    }
    for (std::size_t j = 0; j < m; ++j) {
      try {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_complex(row[j]);
      } catch (const FormatError& e) {
        throw FormatError(what + ": row " + std::to_string(i + 1) + ", column " +
                          std::to_string(j + 1) + ": " + e.what());
      }
    }
  }
  return out;
}

std::vector<Matrix> parse_maps(const Json& doc, const char* key, std::size_t count,
                               std::size_t m) {
  const auto mi = static_cast<Eigen::Index>(m);
  if (!doc.contains(key)) return std::vector<Matrix>(count, Matrix::Zero(mi, mi));
  const Json& list = doc.at(key);
  if (!list.is_array() || list.size() != count) {
    throw FormatError(std::string("\"") + key + "\" must list " + std::to_string(count) +
                      " matrices");
  }
  std::vector<Matrix> out;
  for (std::size_t a = 0; a < count; ++a) {
    out.push_back(parse_matrix(list[a], m, std::string(key) + "[" + std::to_string(a + 1) + "]"));
  }
  return out;
}

Bracket parse_bracket_ref(const Json& value, const std::string& what) {
  if (!value.is_object()) throw FormatError(what + " must be an object");
  if (value.contains("catalog")) {
    if (!value.at("catalog").is_string()) throw FormatError(what + ": \"catalog\" must be a string");
    std::vector<Complex> params;
    if (value.contains("params")) {
      if (!value.at("params").is_array()) throw FormatError(what + ": \"params\" must be a list");
      for (const auto& p : value.at("params")) params.push_back(parse_complex(p));
    }
    std::optional<std::size_t> n;
    if (value.contains("n")) {
      if (!value.at("n").is_number_unsigned()) throw FormatError(what + ": \"n\" must be a positive integer");
      n = value.at("n").get<std::size_t>();
    }
    return catalog::get(value.at("catalog").get<std::string>(), params, n).bracket;
  }
  try {
    return parse_algebra(value).bracket;
  } catch (const FormatError& e) {
    throw FormatError(what + ": " + e.what());
  }
}

}  // namespace

Complex parse_complex(const Json& value) {
  double re = 0.0, im = 0.0;
  if (value.is_number()) {
    re = value.get<double>();
  } else if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
    re = value[0].get<double>();
    im = value[1].get<double>();
  } else if (value.is_object()) {
    for (const auto& [key, v] : value.items()) {
      if (key != "re" && key != "im") throw FormatError("unexpected key \"" + key + "\" in complex number");
      if (!v.is_number()) throw FormatError("\"" + key + "\" must be a number");
    }
    if (value.contains("re")) re = value.at("re").get<double>();
    if (value.contains("im")) im = value.at("im").get<double>();
  } else {
    throw FormatError("expected a number, [re, im] or {\"re\", \"im\"}");
  }
  if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("complex value is not finite");
  return {re, im};
}

Json complex_to_json(Complex z) { return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}}; }

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  if (z.real() == 0.0) return format_real(z.imag()) + "i";
  return format_real(z.real()) + (z.imag() < 0.0 ? "-" : "+") + format_real(std::fabs(z.imag())) +
         "i";
}

AlgebraDocument parse_algebra(const Json& doc) {
  if (!doc.is_object()) throw FormatError("algebra document must be a JSON object");
  if (!doc.contains("dim")) throw FormatError("missing \"dim\"");
  if (!doc.at("dim").is_number_integer()) throw FormatError("\"dim\" must be an integer");
  const long long dim_raw = doc.at("dim").get<long long>();
  if (dim_raw < 1 || static_cast<std::size_t>(dim_raw) > kMaxFileDim) {
    throw FormatError("\"dim\" must be in [1, " + std::to_string(kMaxFileDim) + "]");
  }
  const auto dim = static_cast<std::size_t>(dim_raw);
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw FormatError("\"entries\" must be a list");
  }

  AlgebraDocument out;
  out.bracket = Bracket(dim);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> seen;
  const Json& entries = doc.at("entries");
  for (std::size_t pos = 0; pos < entries.size(); ++pos) {
    const Json& e = entries[pos];
    if (!e.is_object()) throw FormatError(where(pos) + ": must be an object");
    for (const auto& [key, v] : e.items()) {
      if (key != "i" && key != "j" && key != "k" && key != "re" && key != "im") {
        throw FormatError(where(pos) + ": unexpected key \"" + key + "\"");
      }
    }
    const std::size_t i = index_field(e, "i", dim, pos);
    const std::size_t j = index_field(e, "j", dim, pos);
    const std::size_t k = index_field(e, "k", dim, pos);
    const auto [it, fresh] = seen.emplace(std::tuple{i, j, k}, pos);
    if (!fresh) {
      throw FormatError(where(pos) + ": duplicate key (" + std::to_string(i) + "," +
                        std::to_string(j) + "," + std::to_string(k) + "), first given in " +
                        where(it->second));
    }
    out.bracket(i - 1, j - 1, k - 1) = Complex(real_field(e, "re", pos), real_field(e, "im", pos));
  }
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw FormatError("\"name\" must be a string");
    out.name = doc.at("name").get<std::string>();
  }
  if (doc.contains("params")) {
    if (!doc.at("params").is_array()) throw FormatError("\"params\" must be a list");
    for (std::size_t p = 0; p < doc.at("params").size(); ++p) {
      try {
        out.params.push_back(parse_complex(doc.at("params")[p]));
      } catch (const FormatError& e) {
        throw FormatError("param " + std::to_string(p + 1) + ": " + e.what());
      }
    }
  }
  return out;
}

AlgebraDocument parse_algebra_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  return parse_algebra(doc);
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

AlgebraDocument read_algebra(const std::filesystem::path& path) {
  try {
    return parse_algebra_text(slurp(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Json algebra_to_json(const Bracket& mu, const std::string& name,
                     const std::vector<Complex>& params) {
  Json doc;
  if (!name.empty()) doc["name"] = name;
  if (!params.empty()) {
    Json ps = Json::array();
    for (Complex p : params) ps.push_back(complex_to_json(p));
    doc["params"] = std::move(ps);
  }
  doc["dim"] = mu.dim();
  Json entries = Json::array();
  const std::size_t n = mu.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex c = mu(i, j, k);
        if (c == Complex(0.0)) continue;
        entries.push_back(
            Json{{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"re", c.real()}, {"im", c.imag()}});
      }
  doc["entries"] = std::move(entries);
  return doc;
}

void write_algebra(const std::filesystem::path& path, const Bracket& mu, const std::string& name,
                   const std::vector<Complex>& params) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << algebra_to_json(mu, name, params).dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path.string());
}

ExtensionSpec parse_extension_spec(const Json& doc) {
  if (!doc.is_object()) throw FormatError("extension spec must be a JSON object");
  ExtensionSpec spec;
  std::size_t m = 0;
  if (doc.contains("abelian_core")) {
    if (doc.contains("core")) throw FormatError("give either \"core\" or \"abelian_core\"");
    const Json& ab = doc.at("abelian_core");
    if (!ab.is_object() || !ab.contains("dim") || !ab.at("dim").is_number_unsigned()) {
      throw FormatError("\"abelian_core\" needs a positive integer \"dim\"");
    }
    AbelianCore core;
    core.dim = ab.at("dim").get<std::size_t>();
    if (core.dim == 0 || core.dim > kMaxFileDim) throw FormatError("abelian_core: bad \"dim\"");
    if (ab.contains("c_lambda")) core.c_lambda = parse_complex(ab.at("c_lambda")).real();
    core.d_lambda = ab.contains("d_lambda") ? parse_complex(ab.at("d_lambda")).real() : -core.c_lambda;
    m = core.dim;
    spec.abelian_core = core;
  } else {
    if (!doc.contains("core")) throw FormatError("missing \"core\"");
    spec.lambda = parse_bracket_ref(doc.at("core"), "core");
    m = spec.lambda.dim();
  }

  std::size_t count = 0;
  bool have_count = false;
  for (const char* key : {"left_maps", "right_maps"}) {
    if (!doc.contains(key)) continue;
    if (!doc.at(key).is_array()) throw FormatError(std::string("\"") + key + "\" must be a list");
    const std::size_t c = doc.at(key).size();
    if (have_count && c != count) throw FormatError("\"left_maps\" and \"right_maps\" differ in length");
    count = c;
    have_count = true;
  }
  if (doc.contains("generators")) {
    if (!doc.at("generators").is_number_unsigned()) {
      throw FormatError("\"generators\" must be a positive integer");
    }
    const auto g = doc.at("generators").get<std::size_t>();
    if (have_count && g != count) throw FormatError("\"generators\" disagrees with the map lists");
    count = g;
    have_count = true;
  }
  if (doc.contains("reductive")) {
    const Json& red = doc.at("reductive");
    if (!red.is_object() || !red.contains("bracket")) {
      throw FormatError("\"reductive\" needs a \"bracket\"");
    }
    ReductivePart part;
    part.bracket = parse_bracket_ref(red.at("bracket"), "reductive.bracket");
    if (red.contains("semisimple_dim")) {
      if (!red.at("semisimple_dim").is_number_unsigned()) {
        throw FormatError("\"semisimple_dim\" must be a nonnegative integer");
      }
      part.semisimple_dim = red.at("semisimple_dim").get<std::size_t>();
    }
    if (have_count && part.bracket.dim() != count) {
      throw FormatError("reductive bracket dimension disagrees with the generator count");
    }
    count = part.bracket.dim();
    have_count = true;
    spec.reductive = std::move(part);
  }
  if (!have_count || count == 0) throw FormatError("no generators given");
  if (doc.contains("relaxed")) {
    if (!doc.at("relaxed").is_boolean()) throw FormatError("\"relaxed\" must be true or false");
    if (doc.at("relaxed").get<bool>()) spec.identity = ExtensionIdentity::LeftWithRightDerivations;
  }
  spec.left_maps = parse_maps(doc, "left_maps", count, m);
  spec.right_maps = parse_maps(doc, "right_maps", count, m);
  return spec;
}

ExtensionSpec read_extension_spec(const std::filesystem::path& path) {
  try {
    Json doc;
    try {
      doc = Json::parse(slurp(path));
    } catch (const Json::parse_error& e) {
      throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    return parse_extension_spec(doc);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

Json to_json(const IdentityReport& r) {
  return Json{{"left_leibniz", r.is_left_leibniz},
              {"right_leibniz", r.is_right_leibniz},
              {"symmetric_leibniz", r.is_symmetric_leibniz},
              {"lie", r.is_lie},
              {"left_residual", real_json(r.left_residual)},
              {"right_residual", real_json(r.right_residual)},
              {"anticommutativity_residual", real_json(r.anticommutativity_residual)},
              {"jacobi_residual", real_json(r.jacobi_residual)}};
}

Json to_json(const MomentReport& r) {
  return Json{{"norm_sq", real_json(r.norm_sq)},
              {"F", real_json(r.F)},
              {"c", real_json(r.c)},
              {"is_critical", r.is_critical},
              {"residual_tangent", real_json(r.residual_tangent)},
              {"residual_decomp", real_json(r.residual_decomp)},
              {"derivation_defect", real_json(r.derivation_defect)},
              {"M_eigenvalues", vector_json(hermitian_eigen(r.M).eigenvalues)},
              {"D_eigenvalues", vector_json(hermitian_eigen(r.D).eigenvalues)},
              {"M", matrix_json(r.M.matrix())}};
}

Json to_json(const CriticalType& t) {
  return Json{{"type", t.to_string()}, {"ks", t.ks}, {"ds", t.ds}, {"scale", real_json(t.scale)}};
}

Json to_json(const StructureProfile& p) {
  return Json{{"derived_dims", p.derived_dims},
              {"lower_central_dims", p.lower_central_dims},
              {"center_dim", p.center_dim},
              {"solvable", p.is_solvable},
              {"nilpotent", p.is_nilpotent}};
}

Json to_json(const StructureVerdict& v) {
  Json spaces = Json::array();
  for (const auto& e : v.grading.eigenspaces) {
    spaces.push_back(Json{{"eigenvalue", real_json(e.eigenvalue)}, {"dim", e.space.rank()}});
  }
  Json nil{{"pass", v.nilradical.clause.pass},
           {"residual", real_json(v.nilradical.clause.residual)},
           {"detail", v.nilradical.clause.detail},
           {"ideal_residual", real_json(v.nilradical.ideal_residual)},
           {"nilpotent", v.nilradical.nilpotent},
           {"degenerate_abelian", v.nilradical.degenerate_abelian}};
  nil["restricted_type"] =
      v.nilradical.restricted_type ? Json(v.nilradical.restricted_type->to_string()) : Json(nullptr);
  nil["expected_type"] =
      v.nilradical.expected_type ? Json(v.nilradical.expected_type->to_string()) : Json(nullptr);
  return Json{{"all_pass", v.all_pass()},
              {"eigenspaces", std::move(spaces)},
              {"l0_dim", v.grading.zero_part.rank()},
              {"l_plus_dim", v.grading.positive_part.rank()},
              {"l_minus_dim", v.grading.negative_part.rank()},
              {"adjoint_closed", clause_json(v.adjoint_closed)},
              {"l0_reductive", clause_json(v.l0_reductive)},
              {"center_normal", clause_json(v.center_normal)},
              {"nilradical", std::move(nil)},
              {"l0_center_dim", v.l0_center_dim},
              {"l0_semisimple_dim", v.l0_semisimple_dim},
              {"killing_min_singular", real_json(v.killing_min_singular)},
              {"negative_part_min_commutator",
               v.negative_part_min_commutator ? real_json(*v.negative_part_min_commutator)
                                              : Json(nullptr)}};
}

Json to_json(const FlowTrace& t) {
  return Json{{"iterations", t.iterations},
              {"converged", t.converged},
              {"F_initial", t.F_history.empty() ? Json(nullptr) : real_json(t.F_history.front())},
              {"F_final", t.F_history.empty() ? Json(nullptr) : real_json(t.F_history.back())},
              {"residual_final", t.residual_history.empty() ? Json(nullptr)
                                                            : real_json(t.residual_history.back())},
              {"accumulated_condition", real_json(t.accumulated_condition)},
              {"limit_may_leave_orbit", t.limit_may_leave_orbit},
              {"diagnostics", t.diagnostics},
              {"final_bracket", algebra_to_json(t.final_bracket)},
              {"final_report", to_json(t.final_report)}};
}

Json to_json(const catalog::VerifyRow& r) {
  Json out{{"label", r.label},
           {"strategy", r.strategy},
           {"pass", r.pass},
           {"residual", real_json(r.residual)},
           {"message", r.message}};
  out["computed_type"] = r.computed_type ? Json(r.computed_type->to_string()) : Json(nullptr);
  out["expected_type"] = r.expected_type ? Json(r.expected_type->to_string()) : Json(nullptr);
  out["computed_value"] = r.computed_value ? real_json(*r.computed_value) : Json(nullptr);
  out["expected_value"] = r.expected_value ? real_json(*r.expected_value) : Json(nullptr);
  return out;
}

Json to_json(const ExtensionResult& r) {
  return Json{{"type", r.type.to_string()},
              {"expected_type", r.expected_type.to_string()},
              {"c_lambda", real_json(r.c_lambda)},
              {"gram", matrix_json(r.gram)},
              {"generator_transform", matrix_json(r.generator_transform)},
              {"report", to_json(r.report)},
              {"algebra", algebra_to_json(r.bracket)}};
}

}  // namespace leibniz::io
