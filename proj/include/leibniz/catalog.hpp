#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leibniz/flow.hpp"

namespace leibniz::catalog {

enum class AlgebraClass { Lie, SymmetricLeibniz, LeftLeibniz, RightLeibniz };

std::string to_string(AlgebraClass c);

struct CatalogEntry {
  std::string name;
  std::vector<Complex> params;
  std::size_t dim = 0;
  Bracket bracket;
  AlgebraClass algebra_class = AlgebraClass::Lie;
  std::optional<CriticalType> expected_type;
  std::optional<double> expected_value;
  /// Whether the stored basis passes the direct criticality test (computed).
  bool critical_in_given_basis = false;
  std::string notes;

  /// "L3(alpha=2)" style label including parameters.
  std::string label() const;
};

struct EntryInfo {
  std::string name;
  std::string description;
  std::size_t param_count;
  bool takes_dimension;
};

/// Names known to get(), in catalog order.
const std::vector<EntryInfo>& known_entries();

/// Throws UnknownEntry for an unknown name and InvalidParameter for invalid
/// or missing parameters. `n` applies to mu_hy, mu_he and mu_sy only.
CatalogEntry get(const std::string& name, const std::vector<Complex>& params = {},
                 std::optional<std::size_t> n = std::nullopt);

struct VerifyOptions {
  double tol = kCriticalityTol;
  double direct_value_tol = 1e-8;  // relative
  double flow_value_tol = 1e-6;    // relative
  double non_attained_residual = 0.1;
  double type_tol = kTypeTol;
  int max_denominator = kMaxDenominator;
  FlowParams flow;
  bool parallel = true;
};

struct VerifyRow {
  std::string label;
  std::string strategy;  // "direct", "flow" or "not-critical"
  std::optional<CriticalType> computed_type;
  std::optional<double> computed_value;
  std::optional<CriticalType> expected_type;
  std::optional<double> expected_value;
  double residual = 0.0;  // criticality residual of the compared bracket
  bool pass = false;
  std::string message;
  /// Bracket that was compared (the stored one or the flow limit).
  Bracket witness;
  std::optional<MomentReport> witness_report;
};

/// Entries checked by verify(), in order.
std::vector<CatalogEntry> verification_set();

VerifyRow verify_entry(const CatalogEntry& entry, const VerifyOptions& opts = {});

/// Rows in verification_set() order regardless of evaluation order.
std::vector<VerifyRow> verify_catalog(const VerifyOptions& opts = {});

}  // namespace leibniz::catalog
