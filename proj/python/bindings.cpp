#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leibniz/cli.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace leibniz;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Bracket bracket_from_array(const ComplexArray& a) {
  if (a.ndim() != 3 || a.shape(0) != a.shape(1) || a.shape(1) != a.shape(2)) {
    throw DimensionMismatch("structure constants must have shape (n, n, n)");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  const Complex* p = a.data();
  return Bracket(n, std::vector<Complex>(p, p + n * n * n));
}

ComplexArray bracket_to_array(const Bracket& mu) {
  const auto n = static_cast<py::ssize_t>(mu.dim());
  ComplexArray out({n, n, n});
  std::copy(mu.coeffs().begin(), mu.coeffs().end(), out.mutable_data());
  return out;
}

py::object parse_json(const io::Json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moment map critical points of Leibniz algebras";

  static py::exception<Error> error(m, "LeibnizError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Bracket>(m, "Bracket")
      .def(py::init<std::size_t>(), "dim"_a)
      .def(py::init(&bracket_from_array), "coeffs"_a,
           "From an (n, n, n) array c[i, j, k] = <mu(e_i, e_j), e_k>.")
      .def_property_readonly("dim", &Bracket::dim)
      .def("to_array", &bracket_to_array)
      .def("norm", &Bracket::norm)
      .def("normalized", &Bracket::normalized)
      .def("__getitem__",
           [](const Bracket& mu, std::tuple<std::size_t, std::size_t, std::size_t> ijk) {
             auto [i, j, k] = ijk;
             if (i >= mu.dim() || j >= mu.dim() || k >= mu.dim()) throw py::index_error();
             return mu(i, j, k);
           })
      .def("__eq__", [](const Bracket& a, const Bracket& b) { return a == b; })
      .def("__repr__", [](const Bracket& mu) {
        return "<Bracket dim=" + std::to_string(mu.dim()) + ">";
      });

  m.def(
      "make_bracket",
      [](std::size_t dim, const std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Complex>>& entries) {
        std::vector<Entry> es;
        for (const auto& [i, j, k, v] : entries) es.push_back({i, j, k, v});
        return make_bracket(dim, es);
      },
      "dim"_a, "entries"_a, "Entries (i, j, k, value) with 1-based indices.");

  py::class_<IdentityReport>(m, "IdentityReport")
      .def_readonly("left_residual", &IdentityReport::left_residual)
      .def_readonly("right_residual", &IdentityReport::right_residual)
      .def_readonly("anticommutativity_residual", &IdentityReport::anticommutativity_residual)
      .def_readonly("jacobi_residual", &IdentityReport::jacobi_residual)
      .def_readonly("is_left_leibniz", &IdentityReport::is_left_leibniz)
      .def_readonly("is_right_leibniz", &IdentityReport::is_right_leibniz)
      .def_readonly("is_symmetric_leibniz", &IdentityReport::is_symmetric_leibniz)
      .def_readonly("is_lie", &IdentityReport::is_lie);

  m.def("check_identities", &check_identities, "mu"_a, "tol"_a = kIdentityTol);
  m.def("gl_act", [](const Matrix& g, const Bracket& mu) { return gl_act(g, mu); }, "g"_a, "mu"_a);
  m.def("inf_act", &inf_act, "a"_a, "mu"_a);
  m.def("moment_matrix", [](const Bracket& mu) { return moment_matrix(mu).matrix(); }, "mu"_a);
  m.def("functional_value", &functional_value, "mu"_a);

  py::class_<CriticalType>(m, "CriticalType")
      .def(py::init(&make_type), "ks"_a, "ds"_a)
      .def_readonly("ks", &CriticalType::ks)
      .def_readonly("ds", &CriticalType::ds)
      .def_readonly("scale", &CriticalType::scale)
      .def("__str__", &CriticalType::to_string)
      .def("__repr__", [](const CriticalType& t) { return "<CriticalType " + t.to_string() + ">"; })
      .def("__eq__", &CriticalType::same_type);

  py::class_<MomentReport>(m, "MomentReport")
      .def_property_readonly("M", [](const MomentReport& r) { return r.M.matrix(); })
      .def_property_readonly("D", [](const MomentReport& r) { return r.D.matrix(); })
      .def_readonly("norm_sq", &MomentReport::norm_sq)
      .def_readonly("F", &MomentReport::F)
      .def_readonly("c", &MomentReport::c)
      .def_readonly("residual_decomp", &MomentReport::residual_decomp)
      .def_readonly("residual_tangent", &MomentReport::residual_tangent)
      .def_readonly("derivation_defect", &MomentReport::derivation_defect)
      .def_readonly("is_critical", &MomentReport::is_critical);

  m.def("criticality_decompose", &criticality_decompose, "mu"_a, "tol"_a = kCriticalityTol);
  m.def(
      "critical_type",
      [](const MomentReport& r, double tol, int max_den) { return critical_type(r.D, tol, max_den); },
      "report"_a, "tol"_a = kTypeTol, "max_denominator"_a = kMaxDenominator);
  m.def("critical_value_formula", &critical_value_formula, "type"_a, "n"_a);

  py::class_<FlowParams>(m, "FlowParams")
      .def(py::init<>())
      .def_readwrite("step0", &FlowParams::step0)
      .def_readwrite("armijo_c", &FlowParams::armijo_c)
      .def_readwrite("shrink", &FlowParams::shrink)
      .def_readwrite("max_iter", &FlowParams::max_iter)
      .def_readwrite("tol", &FlowParams::tol)
      .def_readwrite("seed", &FlowParams::seed);

  py::class_<FlowTrace>(m, "FlowTrace")
      .def_readonly("final_bracket", &FlowTrace::final_bracket)
      .def_readonly("F_history", &FlowTrace::F_history)
      .def_readonly("residual_history", &FlowTrace::residual_history)
      .def_readonly("iterations", &FlowTrace::iterations)
      .def_readonly("converged", &FlowTrace::converged)
      .def_readonly("final_report", &FlowTrace::final_report)
      .def_readonly("accumulated_condition", &FlowTrace::accumulated_condition)
      .def_readonly("limit_may_leave_orbit", &FlowTrace::limit_may_leave_orbit)
      .def_readonly("diagnostics", &FlowTrace::diagnostics);

  m.def("descend", &descend, "mu"_a, "params"_a = FlowParams{},
        py::call_guard<py::gil_scoped_release>());
  m.def("perturb_in_orbit", &perturb_in_orbit, "mu"_a, "magnitude"_a, "seed"_a);

  m.def(
      "catalog_names",
      [] {
        std::vector<std::string> names;
        for (const auto& e : catalog::known_entries()) names.push_back(e.name);
        return names;
      });
  m.def(
      "catalog_get",
      [](const std::string& name, const std::vector<Complex>& params, std::optional<std::size_t> n) {
        return catalog::get(name, params, n).bracket;
      },
      "name"_a, "params"_a = std::vector<Complex>{}, "n"_a = py::none());
  m.def(
      "catalog_verify",
      [](double tol) {
        catalog::VerifyOptions vo;
        vo.tol = tol;
        std::vector<catalog::VerifyRow> rows;
        {
          py::gil_scoped_release release;
          rows = catalog::verify_catalog(vo);
        }
        py::list out;
        for (const auto& r : rows) out.append(parse_json(io::to_json(r)));
        return out;
      },
      "tol"_a = kCriticalityTol, "Rows of the catalog verification as dicts.");

  m.def(
      "analyze",
      [](const Bracket& mu, double tol, int max_den) {
        cli::GlobalOptions opts;
        opts.tol = tol;
        opts.max_denominator = max_den;
        return parse_json(cli::analyze_report(mu, opts));
      },
      "mu"_a, "tol"_a = kCriticalityTol, "max_denominator"_a = kMaxDenominator);

  m.def(
      "build_extension",
      [](const std::string& kind, const std::string& spec_json, double tol) {
        const ExtensionSpec spec = io::parse_extension_spec(io::Json::parse(spec_json));
        const ExtensionResult res = kind == "solvable"   ? build_solvable_extension(spec, tol)
                                    : kind == "general" ? build_general_extension(spec, tol)
                                                        : throw InvalidParameter("kind must be solvable or general");
        return py::make_tuple(res.bracket, res.report, res.type);
      },
      "kind"_a, "spec_json"_a, "tol"_a = kCriticalityTol,
      "Builds an extension from a spec document; returns (bracket, report, type).");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
