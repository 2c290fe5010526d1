#include "leibniz/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

namespace leibniz::cli {

namespace {

using io::Json;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string real_text(const Json& v) {
  return v.is_null() ? std::string("n/a") : io::format_real(v.get<double>());
}

std::string list_text(const Json& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ", ";
    s += real_text(v);
  }
  return s;
}

bool is_input_error(const Error& e) {
  return dynamic_cast<const FormatError*>(&e) || dynamic_cast<const UnknownEntry*>(&e) ||
         dynamic_cast<const InvalidParameter*>(&e) || dynamic_cast<const InvalidBracket*>(&e) ||
         dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const ZeroBracket*>(&e);
}

void print_bracket(const Bracket& mu, std::ostream& out) {
  const std::size_t n = mu.dim();
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < n; ++k) {
        const Complex c = mu(i, j, k);
        if (c == Complex(0.0)) continue;
        if (!rhs.empty()) rhs += " + ";
        rhs += "(" + io::format_complex(c) + ") e" + std::to_string(k + 1);
      }
      if (rhs.empty()) continue;
      out << "  e" << i + 1 << " e" << j + 1 << " = " << rhs << '\n';
      any = true;
    }
  if (!any) out << "  (zero product)\n";
}

void print_check(const Json& r, std::ostream& out) {
  out << "left Leibniz: " << yes_no(r["left_leibniz"]) << " (residual "
      << real_text(r["left_residual"]) << ")\n";
  out << "right Leibniz: " << yes_no(r["right_leibniz"]) << " (residual "
      << real_text(r["right_residual"]) << ")\n";
  out << "symmetric Leibniz: " << yes_no(r["symmetric_leibniz"]) << ", Lie: " << yes_no(r["lie"])
      << '\n';
  out << "anticommutativity residual: " << real_text(r["anticommutativity_residual"]) << '\n';
  out << "Jacobi residual: " << real_text(r["jacobi_residual"]) << '\n';
}

void print_moment(const Json& m, std::ostream& out) {
  out << "|mu|^2: " << real_text(m["norm_sq"]) << '\n';
  out << "F: " << real_text(m["F"]) << '\n';
  out << "c: " << real_text(m["c"]) << '\n';
  out << "eigenvalues of M: " << list_text(m["M_eigenvalues"]) << '\n';
  out << "eigenvalues of D: " << list_text(m["D_eigenvalues"]) << '\n';
  out << "criticality residual: " << real_text(m["residual_tangent"]) << '\n';
  out << "decomposition residual: " << real_text(m["residual_decomp"]) << '\n';
  out << "critical: " << yes_no(m["is_critical"]) << '\n';
}

void print_clause(const char* title, const Json& c, std::ostream& out) {
  out << "  " << title << ": " << (c["pass"].get<bool>() ? "pass" : "FAIL") << " (residual "
      << real_text(c["residual"]) << ")";
  if (!c["detail"].get<std::string>().empty()) out << " " << c["detail"].get<std::string>();
  out << '\n';
}

void print_analyze(const Json& r, std::ostream& out) {
  if (r.contains("name")) out << "name: " << r["name"].get<std::string>() << '\n';
  out << "dimension: " << r["dim"].get<std::size_t>() << '\n';
  print_check(r["identities"], out);
  print_moment(r["moment"], out);
  if (r.contains("critical_type")) {
    const Json& t = r["critical_type"];
    if (t.contains("error")) {
      out << "critical type: " << t["error"].get<std::string>() << '\n';
    } else {
      out << "critical type: " << t["type"].get<std::string>() << '\n';
      out << "value from type: " << real_text(r["value_from_type"]) << '\n';
    }
  }
  const Json& p = r["structure"];
  auto dims = [](const Json& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + std::to_string(x.get<std::size_t>());
    return s;
  };
  out << "derived series dims: " << dims(p["derived_dims"]) << '\n';
  out << "lower central series dims: " << dims(p["lower_central_dims"]) << '\n';
  out << "center dim: " << p["center_dim"].get<std::size_t>() << '\n';
  out << "solvable: " << yes_no(p["solvable"]) << ", nilpotent: " << yes_no(p["nilpotent"])
      << '\n';
  if (r.contains("structure_theorem")) {
    const Json& v = r["structure_theorem"];
    if (v.contains("error")) {
      out << "structure theorem: " << v["error"].get<std::string>() << '\n';
      return;
    }
    out << "structure theorem: " << (v["all_pass"].get<bool>() ? "pass" : "FAIL") << '\n';
    out << "  l_0 / l_+ / l_- dims: " << v["l0_dim"].get<std::size_t>() << " / "
        << v["l_plus_dim"].get<std::size_t>() << " / " << v["l_minus_dim"].get<std::size_t>()
        << '\n';
    print_clause("(i) adjoints of L_A, R_A are derivations", v["adjoint_closed"], out);
    print_clause("(ii) l_0 is reductive", v["l0_reductive"], out);
    print_clause("(iii) L_Z, R_Z normal on the center", v["center_normal"], out);
    print_clause("(iv) nilradical is l_+", v["nilradical"], out);
    const Json& nil = v["nilradical"];
    if (nil["degenerate_abelian"].get<bool>()) {
      out << "  nilradical: abelian (degenerate, no restricted type)\n";
    } else if (!nil["restricted_type"].is_null()) {
      out << "  restricted type: " << nil["restricted_type"].get<std::string>() << " (expected "
          << (nil["expected_type"].is_null() ? std::string("n/a")
                                             : nil["expected_type"].get<std::string>())
          << ")\n";
    }
  }
}

std::string column(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s + " ";
}

void print_rows(const std::vector<catalog::VerifyRow>& rows, std::ostream& out) {
  out << column("entry", 16) << column("strategy", 13) << column("type", 20)
      << column("F", 16) << column("expected", 20) << column("residual", 14) << "result\n";
  for (const auto& r : rows) {
    const std::string type = r.computed_type ? r.computed_type->to_string() : "-";
    const std::string value = r.computed_value ? io::format_real(*r.computed_value) : "-";
    std::string expected = "-";
    if (r.expected_type) {
      expected = r.expected_type->to_string() + " " + io::format_real(*r.expected_value);
    }
    std::ostringstream res;
    res << std::setprecision(3) << r.residual;
    out << column(r.label, 16) << column(r.strategy, 13) << column(type, 20) << column(value, 16)
        << column(expected, 20) << column(res.str(), 14) << (r.pass ? "pass" : "FAIL");
    if (!r.pass && !r.message.empty()) out << " (" << r.message << ")";
    out << '\n';
  }
}

void print_flow(const Json& t, std::ostream& out) {
  out << "iterations: " << t["iterations"].get<std::size_t>() << '\n';
  out << "converged: " << yes_no(t["converged"]) << '\n';
  out << "F initial: " << real_text(t["F_initial"]) << '\n';
  out << "F final: " << real_text(t["F_final"]) << '\n';
  out << "final residual: " << real_text(t["residual_final"]) << '\n';
  out << "condition of accumulated change of basis: " << real_text(t["accumulated_condition"])
      << '\n';
  if (t["limit_may_leave_orbit"].get<bool>()) {
    out << "warning: the change of basis degenerated; the limit may lie outside the orbit\n";
  }
  if (!t["diagnostics"].get<std::string>().empty()) {
    out << "diagnostics: " << t["diagnostics"].get<std::string>() << '\n';
  }
}

Json entry_json(const catalog::CatalogEntry& e) {
  Json out{{"label", e.label()},
           {"name", e.name},
           {"dim", e.dim},
           {"class", catalog::to_string(e.algebra_class)},
           {"critical_in_given_basis", e.critical_in_given_basis},
           {"notes", e.notes}};
  out["expected_type"] = e.expected_type ? Json(e.expected_type->to_string()) : Json(nullptr);
  out["expected_value"] = e.expected_value ? Json(*e.expected_value) : Json(nullptr);
  out["algebra"] = io::algebra_to_json(e.bracket, e.name, e.params);
  return out;
}

struct Emitter {
  const GlobalOptions& opts;
  std::ostream& out;
  void json(const Json& doc) const { out << doc.dump(2) << '\n'; }
};

}  // namespace

Complex parse_param(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InvalidParameter("empty parameter");
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("cannot parse parameter '" + raw + "'");
    }
    if (used != t.size() || !std::isfinite(v)) {
      throw InvalidParameter("cannot parse parameter '" + raw + "'");
    }
    return v;
  };
  if (s.back() != 'i') return {number(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : number(re), number(im)};
}

Json check_report(const Bracket& mu) {
  return io::to_json(mu.is_zero() ? IdentityReport{} : check_identities(mu));
}

Json analyze_report(const Bracket& mu, const GlobalOptions& opts, const std::string& name) {
  Json r;
  if (!name.empty()) r["name"] = name;
  r["dim"] = mu.dim();
  const IdentityReport ids = check_identities(mu);
  r["identities"] = io::to_json(ids);
  const MomentReport rep = criticality_decompose(mu, opts.tol);
  r["moment"] = io::to_json(rep);
  if (rep.is_critical) {
    try {
      const CriticalType t = critical_type(rep.D, kTypeTol, opts.max_denominator);
      r["critical_type"] = io::to_json(t);
      try {
        r["value_from_type"] = critical_value_formula(t, mu.dim());
      } catch (const DegenerateType& e) {
        r["value_from_type"] = nullptr;
      }
    } catch (const Error& e) {
      r["critical_type"] = Json{{"error", e.what()}};
    }
  }
  r["structure"] = io::to_json(structure_profile(mu));
  if (rep.is_critical && ids.is_symmetric_leibniz) {
    StructureOptions so;
    so.tol = opts.tol;
    so.max_denominator = opts.max_denominator;
    try {
      r["structure_theorem"] = io::to_json(verify_structure_theorem(mu, rep, so));
    } catch (const Error& e) {
      r["structure_theorem"] = Json{{"error", e.what()}};
    }
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical points of the moment map on Leibniz algebras", "leibniz"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::string format = "text";
  app.add_option("--tol", opts.tol, "Criticality tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--max-den", opts.max_denominator, "Largest denominator in type reconstruction")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();

  std::string file;
  auto* check = app.add_subcommand("check", "Leibniz and Lie identity report");
  check->add_option("file", file, "Algebra file")->required();

  auto* analyze = app.add_subcommand("analyze", "Moment map, critical type and structure");
  analyze->add_option("file", file, "Algebra file")->required();

  FlowParams fp;
  double perturb = 0.0;
  auto* flow = app.add_subcommand("flow", "Descend F within the orbit");
  flow->add_option("file", file, "Algebra file")->required();
  flow->add_option("--step0", fp.step0, "Initial step")->check(CLI::PositiveNumber);
  flow->add_option("--max-iter", fp.max_iter, "Iteration limit");
  flow->add_option("--seed", fp.seed, "Seed for --perturb");
  flow->add_option("--perturb", perturb, "Start from exp(A).mu with |A| = magnitude")
      ->check(CLI::NonNegativeNumber);

  auto* cat = app.add_subcommand("catalog", "Catalogued algebras");
  cat->require_subcommand(1);
  std::string entry_name;
  std::vector<std::string> params_raw;
  std::size_t entry_n = 0;
  bool serial = false;
  auto* cat_list = cat->add_subcommand("list", "List entries");
  auto* cat_show = cat->add_subcommand("show", "Show one entry");
  auto* cat_export = cat->add_subcommand("export", "Write an entry as an algebra file");
  auto* cat_verify = cat->add_subcommand("verify", "Check every row against its expected type");
  for (auto* sub : {cat_show, cat_export}) {
    sub->add_option("name", entry_name, "Entry name")->required();
    sub->add_option("-p,--param", params_raw, "Parameter such as 2, i or 1+i");
    sub->add_option("-n,--dim", entry_n, "Dimension for mu_hy, mu_he, mu_sy");
  }
  cat_export->add_option("file", file, "Output file")->required();
  cat_verify->add_flag("--serial", serial, "Evaluate rows one at a time");

  std::string kind;
  std::string out_file;
  auto* extend = app.add_subcommand("extend", "Build an extension from a spec file");
  extend->add_option("kind", kind, "solvable or general")
      ->required()
      ->check(CLI::IsMember({"solvable", "general"}));
  extend->add_option("spec", file, "Extension spec file")->required();
  extend->add_option("--out", out_file, "Write the resulting algebra here");

  for (auto* sub : {check, analyze, flow, cat, cat_list, cat_show, cat_export, cat_verify, extend})
    sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  opts.json = format == "json";
  const Emitter emit{opts, out};

  auto entry_params = [&] {
    std::vector<Complex> ps;
    for (const auto& p : params_raw) ps.push_back(parse_param(p));
    return ps;
  };
  auto entry_dim = [&]() -> std::optional<std::size_t> {
    if (entry_n == 0) return std::nullopt;
    return entry_n;
  };

  try {
    if (check->parsed()) {
      const io::AlgebraDocument doc = io::read_algebra(file);
      const Json r = check_report(doc.bracket);
      if (opts.json) {
        emit.json(r);
      } else {
        print_check(r, out);
      }
      return kExitOk;
    }
    if (analyze->parsed()) {
      const io::AlgebraDocument doc = io::read_algebra(file);
      const Json r = analyze_report(doc.bracket, opts, doc.name);
      if (opts.json) {
        emit.json(r);
      } else {
        print_analyze(r, out);
      }
      return kExitOk;
    }
    if (flow->parsed()) {
      const io::AlgebraDocument doc = io::read_algebra(file);
      fp.tol = opts.tol;
      const Bracket start =
          perturb > 0.0 ? perturb_in_orbit(doc.bracket, perturb, fp.seed) : doc.bracket;
      const FlowTrace trace = descend(start, fp);
      Json r{{"flow", io::to_json(trace)},
             {"analysis", analyze_report(trace.final_bracket, opts, doc.name)}};
      if (opts.json) {
        emit.json(r);
      } else {
        print_flow(r["flow"], out);
        out << "final bracket:\n";
        print_bracket(trace.final_bracket, out);
        out << "final analysis:\n";
        print_analyze(r["analysis"], out);
      }
      return trace.converged ? kExitOk : kExitFailure;
    }
    if (cat_list->parsed()) {
      if (opts.json) {
        Json list = Json::array();
        for (const auto& e : catalog::known_entries()) {
          list.push_back(Json{{"name", e.name},
                              {"description", e.description},
                              {"params", e.param_count},
                              {"takes_dimension", e.takes_dimension}});
        }
        emit.json(list);
      } else {
        for (const auto& e : catalog::known_entries()) {
          std::string suffix = e.param_count ? " <param>" : "";
          if (e.takes_dimension) suffix += " -n <dim>";
          out << column(e.name + suffix, 18) << e.description << '\n';
        }
      }
      return kExitOk;
    }
    if (cat_show->parsed() || cat_export->parsed()) {
      const catalog::CatalogEntry e = catalog::get(entry_name, entry_params(), entry_dim());
      if (cat_export->parsed()) {
        io::write_algebra(file, e.bracket, e.name, e.params);
        if (opts.json) {
          emit.json(Json{{"written", file}, {"label", e.label()}});
        } else {
          out << "wrote " << e.label() << " to " << file << '\n';
        }
        return kExitOk;
      }
      if (opts.json) {
        emit.json(entry_json(e));
        return kExitOk;
      }
      out << e.label() << " (" << catalog::to_string(e.algebra_class) << ", dimension " << e.dim
          << ")\n";
      print_bracket(e.bracket, out);
      if (e.expected_type) {
        out << "expected type: " << e.expected_type->to_string()
            << ", value: " << io::format_real(*e.expected_value) << '\n';
      } else {
        out << "expected: no critical point in the orbit\n";
      }
      out << "critical in the given basis: " << yes_no(e.critical_in_given_basis) << '\n';
      if (!e.notes.empty()) out << "notes: " << e.notes << '\n';
      return kExitOk;
    }
    if (cat_verify->parsed()) {
      catalog::VerifyOptions vo;
      vo.tol = opts.tol;
      vo.max_denominator = opts.max_denominator;
      vo.parallel = !serial;
      const auto rows = catalog::verify_catalog(vo);
      const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
      if (opts.json) {
        Json list = Json::array();
        for (const auto& r : rows) list.push_back(io::to_json(r));
        emit.json(Json{{"pass", all}, {"rows", std::move(list)}});
      } else {
        print_rows(rows, out);
        out << (all ? "all rows pass" : "verification FAILED") << '\n';
      }
      return all ? kExitOk : kExitFailure;
    }
    if (extend->parsed()) {
      const ExtensionSpec spec = io::read_extension_spec(file);
      try {
        const ExtensionResult res = kind == "solvable" ? build_solvable_extension(spec, opts.tol)
                                                       : build_general_extension(spec, opts.tol);
        if (!out_file.empty()) io::write_algebra(out_file, res.bracket, kind + " extension");
        if (opts.json) {
          Json r = io::to_json(res);
          r["certified"] = true;
          if (!out_file.empty()) r["written"] = out_file;
          emit.json(r);
        } else {
          out << "certified critical point of dimension " << res.bracket.dim() << '\n';
          out << "type: " << res.type.to_string() << '\n';
          out << "F: " << io::format_real(res.report.F) << '\n';
          out << "c: " << io::format_real(res.report.c) << " (core " << io::format_real(res.c_lambda)
              << ")\n";
          out << "criticality residual: " << io::format_real(res.report.residual_tangent) << '\n';
          if (!out_file.empty()) {
            out << "wrote " << out_file << '\n';
          } else {
            print_bracket(res.bracket, out);
          }
        }
        return kExitOk;
      } catch (const Error& e) {
        if (is_input_error(e)) throw;
        if (opts.json) {
          emit.json(Json{{"certified", false}, {"error", e.what()}});
        } else {
          out << "extension failed: " << e.what() << '\n';
        }
        return kExitFailure;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e) ? kExitInputError : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << "error: no command\n";
  return kExitInputError;
}

}  // namespace leibniz::cli
