#pragma once

// CSV and JSON artifacts. Every file carries a schema tag: CSV files start
// with a `# schema=<name>/<version>` line, JSON documents have a "schema"
// member. Doubles are written with 17 significant digits so that re-parsing
// recovers them exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "htrans/branch.hpp"
#include "htrans/grid.hpp"
#include "htrans/identities.hpp"
#include "htrans/ode.hpp"
#include "htrans/search.hpp"

namespace htrans::io {

inline constexpr const char *kGridSchema = "htrans.curvature-grid/1";
inline constexpr const char *kSeedSchema = "htrans.search-seeds/1";
inline constexpr const char *kGridSummarySchema = "htrans.curvature-summary/1";
inline constexpr const char *kScherkSchema = "htrans.scherk/1";
inline constexpr const char *kVerifySchema = "htrans.verify/1";
inline constexpr const char *kSearchSchema = "htrans.search-summary/1";
inline constexpr const char *kReportSchema = "htrans.numeric-report/1";

/// "{:.17g}"; non-finite values as nan / inf / -inf.
std::string format_double(double value);

/// Columns u, v, x, y, z, He, N3, H. Failed points are written as nan.
void write_grid_csv(std::ostream &out, const CurvatureGrid &grid);

/// Columns seed, supResidual, meanSquareResidual, planeDistance, iterations,
/// converged. planeDistance is empty for type I runs.
void write_seed_csv(std::ostream &out, const std::vector<search::SeedRun> &runs);

struct CsvTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string &name) const; // throws if absent
  double number(std::size_t row, const std::string &name) const; // empty cell -> NaN
};

/// Reads a file written by the writers above; ParseError (line:column) on
/// malformed input.
CsvTable read_csv(std::istream &in);

nlohmann::json grid_summary(const CurvatureGrid &grid, const Surface &surface, GridModel model);
nlohmann::json proof_reports(const std::vector<algebra::ProofReport> &reports);
nlohmann::json seed_summary(const std::vector<search::SeedRun> &runs, const search::SeedPlan &plan,
                            const search::SearchConfig &cfg);
nlohmann::json first_integral_json(const search::FirstIntegralReport &report);
nlohmann::json branch_json(const search::BranchReport &report);

/// JSON with a trailing newline, two-space indentation.
void write_json(std::ostream &out, const nlohmann::json &doc);

} // namespace htrans::io
