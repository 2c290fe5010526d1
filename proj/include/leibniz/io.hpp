#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "leibniz/catalog.hpp"
#include "leibniz/extensions.hpp"
#include "leibniz/flow.hpp"
#include "leibniz/structure.hpp"

namespace leibniz::io {

using Json = nlohmann::ordered_json;

/// Contents of an algebra file:
///   {"dim": n, "entries": [{"i":1,"j":2,"k":3,"re":1.0,"im":0.0}, ...],
///    "name": "...", "params": [...]}
/// Indices are 1-based; unlisted coefficients are zero.
struct AlgebraDocument {
  Bracket bracket;
  std::string name;
  std::vector<Complex> params;
};

/// Throws FormatError naming the offending entry.
AlgebraDocument parse_algebra(const Json& doc);
AlgebraDocument parse_algebra_text(const std::string& text);
AlgebraDocument read_algebra(const std::filesystem::path& path);

/// Nonzero coefficients only, in (i, j, k) order.
Json algebra_to_json(const Bracket& mu, const std::string& name = {},
                     const std::vector<Complex>& params = {});
void write_algebra(const std::filesystem::path& path, const Bracket& mu,
                   const std::string& name = {}, const std::vector<Complex>& params = {});

/// A number, [re, im] or {"re": .., "im": ..}.
Complex parse_complex(const Json& value);
Json complex_to_json(Complex z);

/// 12 significant digits.
std::string format_real(double x);
std::string format_complex(Complex z);

/// Extension spec file:
///   {"core": <algebra> | {"catalog": "S1", "params": [...]},
///    "abelian_core": {"dim": m, "c_lambda": c, "d_lambda": d},
///    "left_maps": [<m x m matrix>, ...], "right_maps": [...],
///    "generators": d1,
///    "reductive": {"bracket": <algebra> | {"catalog": ...}, "semisimple_dim": s},
///    "relaxed": false}
/// Matrices are lists of rows. A missing map list means zero maps.
ExtensionSpec parse_extension_spec(const Json& doc);
ExtensionSpec read_extension_spec(const std::filesystem::path& path);

Json to_json(const IdentityReport& r);
Json to_json(const MomentReport& r);
Json to_json(const CriticalType& t);
Json to_json(const StructureProfile& p);
Json to_json(const StructureVerdict& v);
Json to_json(const FlowTrace& t);
Json to_json(const catalog::VerifyRow& r);
Json to_json(const ExtensionResult& r);

}  // namespace leibniz::io
