#pragma once

// Catalog of worked constants: each row binds a series to an expected closed
// expression. Rows live in data/registry.txt, one per line:
//
//   id | family | params | expected | options | anchor
//
// params:  "x=1/2; m=1; s=0; p=8; seq=F" (values are prefix expressions)
// options: "terms=N; scale=E; printed=E"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbs/series.hpp"

namespace cbs {

struct ExampleRow {
  std::string id;
  FamilySpec spec;
  Expr expected;
  std::optional<long> terms;     // fixed term count, compared in bound mode
  std::optional<Expr> scale;     // series is multiplied by this before comparing
  std::optional<Expr> printed;   // the form as printed where it differs from expected
  std::string anchor;

  /// Prefix of the id before the first '-' ("ex6", "trig", ...).
  std::string set() const;
};

std::vector<ExampleRow> parse_registry(std::string_view text);
std::string serialize_registry(const std::vector<ExampleRow>& rows);

/// The built-in registry text and its parsed rows.
std::string_view registry_text();
const std::vector<ExampleRow>& list_examples();
const ExampleRow& find_example(std::string_view id);
/// Sets in first-appearance order.
std::vector<std::string> example_sets();

struct ComparisonReport {
  std::string id;
  std::string spec;
  Real series;
  Real closed;
  Real abs_diff;
  std::optional<Real> certified_bound;  // truncation + rounding (scaled); empty when uncertified
  long terms_used = 0;
  bool bound_mode = false;
  bool pass = false;
  Real residue;                         // imaginary residue of the closed form, if complex
  std::optional<Real> printed_value;
  std::optional<bool> printed_matches;
  std::string note;
};

/// Runs one registry row. The series is summed to tolerance/10 (or to the row's
/// fixed term count); pass means certified and |series - expected| <= bound + eval tolerance,
/// with the bound itself <= tolerance outside bound mode.
ComparisonReport run_row(const ExampleRow& row, const PrecisionContext& ctx, const Real& tolerance,
                         long max_terms = kDefaultMaxTerms);
ComparisonReport run_example(std::string_view id, const PrecisionContext& ctx, const Real& tolerance,
                             long max_terms = kDefaultMaxTerms);

/// Series against the library closed form. force_terms selects an uncertified fixed sum.
ComparisonReport compare_family(const FamilySpec& spec, const PrecisionContext& ctx, const Real& tolerance,
                                long max_terms = kDefaultMaxTerms, std::optional<long> force_terms = std::nullopt);

/// Evaluation tolerance for closed expressions: 10^(5 - working digits).
Real closed_tolerance(const PrecisionContext& ctx);

/// Terms used for rows at a domain endpoint (no certified bound).
constexpr long kEndpointTerms = 100'000;

}  // namespace cbs
