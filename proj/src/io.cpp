#include "htrans/io.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "htrans/error.hpp"
#include "htrans/keyvalue.hpp"

namespace htrans::io {

namespace {

using nlohmann::json;

json number_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

json interval_json(const Interval &r) {
  return json::array({r.lo, r.hi});
}

std::vector<std::string> split_commas(const std::string &line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return cells;
}

} // namespace

std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  return fmt::format("{:.17g}", value);
}

void write_grid_csv(std::ostream &out, const CurvatureGrid &grid) {
  out << "# schema=" << kGridSchema << "\n";
  out << "u,v,x,y,z,He,N3,H\n";
  for (const GridPoint &p : grid.points) {
    out << format_double(p.u) << ',' << format_double(p.v) << ',' << format_double(p.x) << ','
        << format_double(p.y) << ',' << format_double(p.z) << ',' << format_double(p.He) << ','
        << format_double(p.N3) << ',' << format_double(p.H) << '\n';
  }
}

void write_seed_csv(std::ostream &out, const std::vector<search::SeedRun> &runs) {
  out << "# schema=" << kSeedSchema << "\n";
  out << "seed,supResidual,meanSquareResidual,planeDistance,iterations,converged\n";
  for (const search::SeedRun &run : runs) {
    const search::SearchResult &r = run.result;
    out << run.seed << ',' << format_double(r.sup_residual) << ',' << format_double(r.mean_square_residual) << ','
        << (r.plane_distance ? format_double(*r.plane_distance) : std::string()) << ',' << r.iterations << ','
        << (r.converged ? 1 : 0) << '\n';
  }
}

std::size_t CsvTable::column(const std::string &name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw UsageError("csv: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string &name) const {
  const std::string &cell = rows.at(row).at(column(name));
  if (cell.empty()) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (cell == "nan") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (cell == "inf" || cell == "-inf") {
    return cell[0] == '-' ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  }
  return parse_number(Token{cell, row + 3, 1});
}

CsvTable read_csv(std::istream &in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  const std::string prefix = "# schema=";
  if (!std::getline(in, line) || line.rfind(prefix, 0) != 0) {
    throw ParseError(1, 1, "expected '# schema=...' line");
  }
  ++line_no;
  table.schema = line.substr(prefix.size());
  if (!std::getline(in, line) || line.empty()) {
    throw ParseError(2, 1, "expected a header line");
  }
  ++line_no;
  table.columns = split_commas(line);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto cells = split_commas(line);
    if (cells.size() != table.columns.size()) {
      throw ParseError(line_no, 1,
                       fmt::format("expected {} cells, got {}", table.columns.size(), cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

json grid_summary(const CurvatureGrid &grid, const Surface &surface, GridModel model) {
  const Rect &d = domain_of(surface);
  double max_abs_n3 = 0.0;
  for (const GridPoint &p : grid.points) {
    if (p.ok()) {
      max_abs_n3 = std::max(max_abs_n3, std::abs(p.N3));
    }
  }
  return json{{"schema", kGridSummarySchema},
              {"surface", describe(surface)},
              {"model", model == GridModel::hyperbolic ? "hyperbolic" : "euclidean"},
              {"domain", {{"u", interval_json(d.u)}, {"v", interval_json(d.v)}}},
              {"grid", {grid.nu, grid.nv}},
              {"points", grid.points.size()},
              {"failures", grid.failures()},
              {"max_abs_He", grid.max_abs_He()},
              {"max_abs_H", grid.max_abs_H()},
              {"max_abs_N3", max_abs_n3}};
}

json proof_reports(const std::vector<algebra::ProofReport> &reports) {
  json records = json::array();
  for (const algebra::ProofReport &r : reports) {
    records.push_back({{"id", r.id},
                       {"status", algebra::to_string(r.status)},
                       {"difference", r.difference.to_string()},
                       {"factor", r.factor ? json(r.factor->get_str()) : json(nullptr)},
                       {"combination", r.combination}});
  }
  return json{{"schema", kVerifySchema}, {"identities", records}};
}

json seed_summary(const std::vector<search::SeedRun> &runs, const search::SeedPlan &plan,
                  const search::SearchConfig &cfg) {
  json results = json::array();
  const search::SeedRun *best = nullptr;
  int converged = 0;
  for (const search::SeedRun &run : runs) {
    const search::SearchResult &r = run.result;
    results.push_back({{"seed", run.seed},
                       {"supResidual", number_or_null(r.sup_residual)},
                       {"meanSquareResidual", number_or_null(r.mean_square_residual)},
                       {"planeDistance", r.plane_distance ? number_or_null(*r.plane_distance) : json(nullptr)},
                       {"iterations", r.iterations},
                       {"converged", r.converged},
                       {"minHeight", number_or_null(r.min_height)},
                       {"diagnostic", r.diagnostic}});
    converged += r.converged ? 1 : 0;
    if (std::isfinite(r.sup_residual) && (!best || r.sup_residual < best->result.sup_residual)) {
      best = &run;
    }
  }
  json config = {{"model", search::to_string(cfg.model)},
                 {"objective", search::to_string(cfg.objective)},
                 {"grid", cfg.grid},
                 {"check_grid", cfg.check_grid},
                 {"max_iterations", cfg.max_iterations},
                 {"relative_tolerance", cfg.relative_tolerance},
                 {"absolute_tolerance", cfg.absolute_tolerance},
                 {"z_floor", cfg.z_floor},
                 {"floor_tolerance", cfg.floor_tolerance},
                 {"barrier_weight", cfg.barrier_weight},
                 {"barrier_ramp", cfg.barrier_ramp},
                 {"max_barrier_rounds", cfg.max_barrier_rounds}};
  json seeds = {{"count", plan.count},
                {"generator_seed", plan.generator_seed},
                {"f_domain", interval_json(plan.f_domain)},
                {"g_domain", interval_json(plan.g_domain)},
                {"interior_knots", plan.interior_knots},
                {"amplitude", plan.amplitude},
                {"g_offset", plan.g_offset}};
  return json{{"schema", kSearchSchema},
              {"kind", to_string(plan.kind)},
              {"config", config},
              {"seeds", seeds},
              {"converged", converged},
              {"best", best ? json{{"seed", best->seed}, {"supResidual", best->result.sup_residual}} : json(nullptr)},
              {"results", results}};
}

json first_integral_json(const search::FirstIntegralReport &report) {
  return json{{"a", report.a},
              {"p0", report.p0},
              {"range", interval_json(report.range)},
              {"reached", report.reached},
              {"blew_up", report.blew_up},
              {"predicted_blowup", report.predicted_blowup ? json(*report.predicted_blowup) : json(nullptr)},
              {"steps", report.samples.size()},
              {"max_defect", report.max_defect},
              {"max_relative_defect", report.max_relative_defect},
              {"max_invariant_drift", report.max_invariant_drift}};
}

json branch_json(const search::BranchReport &report) {
  json sweep = json::array();
  for (const auto &e : report.sweep) {
    sweep.push_back({{"b", e.b}, {"measure", e.measure}});
  }
  return json{{"a", report.a},
              {"range", interval_json(report.range)},
              {"samples", report.samples.size()},
              {"min_measure", report.min_measure},
              {"argmin_b", report.argmin_b},
              {"b0_control_error", report.b0_control_error},
              {"max_g2_mismatch", report.max_g2_mismatch},
              {"degenerate_z", report.degenerate_z},
              {"sweep", sweep}};
}

void write_json(std::ostream &out, const nlohmann::json &doc) {
  out << doc.dump(2) << '\n';
}

} // namespace htrans::io
