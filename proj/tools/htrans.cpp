// Command-line entry point: curvature grids, the Scherk check, identity
// verification, falsification searches and numeric reports.
//
// Exit status: 0 success, 1 usage / IO / parse errors, 2 when `verify` finds
// a mismatch.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include "htrans/error.hpp"
#include "htrans/io.hpp"
#include "htrans/keyvalue.hpp"
#include "htrans/surface_file.hpp"

namespace {

using namespace htrans;
namespace fs = std::filesystem;

// Run configs use the surface-file syntax; keys are long option names of the
// selected subcommand, and command-line flags take precedence.
class KeyValueConfig : public CLI::Config {
public:
  explicit KeyValueConfig(const CLI::App *root) : root_(root) {}

  std::string to_config(const CLI::App *, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream &in) const override {
    const auto selected = root_->get_subcommands();
    if (selected.empty()) {
      throw UsageError("--config needs a subcommand");
    }
    const CLI::App *sub = selected.front();
    std::set<std::string> keys;
    for (const CLI::Option *opt : sub->get_options()) {
      const std::string name = opt->get_single_name();
      if (!name.empty() && name != "help") {
        keys.insert(name);
      }
    }
    std::ostringstream text;
    text << in.rdbuf();
    std::vector<CLI::ConfigItem> items;
    for (const KeyValueEntry &e : parse_key_values(text.str())) {
      if (!keys.contains(e.key.text)) {
        throw ParseError(e.key.line, e.key.column,
                         "unknown config key '" + e.key.text + "' for " + sub->get_name());
      }
      CLI::ConfigItem item;
      item.parents = {sub->get_name()};
      item.name = e.key.text;
      for (const Token &t : e.values) {
        item.inputs.push_back(t.text);
      }
      items.push_back(std::move(item));
    }
    return items;
  }

private:
  const CLI::App *root_;
};

std::ofstream open_output(const fs::path &dir, const std::string &name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

GridModel parse_model(const std::string &name) {
  return name == "euclidean" ? GridModel::euclidean : GridModel::hyperbolic;
}

struct CurvatureOpts {
  std::string surface;
  std::vector<int> grid{100, 100};
  std::string model = "hyperbolic";
  std::string format = "csv";
  std::string out = ".";
  bool serial = false;
};

int run_curvature(const CurvatureOpts &o) {
  const Surface surface = load_surface(o.surface);
  const GridSpec spec{o.grid[0], o.grid[1], parse_model(o.model)};
  const CurvatureGrid grid = o.serial ? curvature_grid_serial(surface, spec) : curvature_grid_parallel(surface, spec);
  nlohmann::json summary = io::grid_summary(grid, surface, spec.model);
  if (o.format == "csv") {
    auto out = open_output(o.out, "curvature.csv");
    io::write_grid_csv(out, grid);
  } else {
    nlohmann::json points = nlohmann::json::array();
    for (const GridPoint &p : grid.points) {
      points.push_back({p.u, p.v, p.x, p.y, p.z, p.He, p.N3, p.H});
    }
    summary["columns"] = {"u", "v", "x", "y", "z", "He", "N3", "H"};
    summary["rows"] = points;
    auto out = open_output(o.out, "curvature.json");
    io::write_json(out, summary);
  }
  fmt::print("{}: {}x{} points, {} failed, max|He| = {}, max|H| = {}\n", describe(surface), grid.nu, grid.nv,
             grid.failures(), io::format_double(grid.max_abs_He()), io::format_double(grid.max_abs_H()));
  return 0;
}

struct ScherkOpts {
  double a = 1.0;
  double margin = 0.1;
  std::vector<int> grid{100, 100};
  std::string out = ".";
};

int run_scherk(const ScherkOpts &o) {
  if (o.a == 0.0) {
    throw UsageError("--a must be nonzero");
  }
  const double half = std::numbers::pi / (2.0 * std::abs(o.a));
  if (!(o.margin >= 0.0 && o.margin < half)) {
    throw UsageError("--margin must lie in [0, pi/(2|a|))");
  }
  const Interval side{-half + o.margin, half - o.margin};
  const Surface surface = scherk(o.a, Rect{side, side});
  const CurvatureGrid grid = curvature_grid_parallel(surface, {o.grid[0], o.grid[1], GridModel::euclidean});
  int upper = 0;
  for (const GridPoint &p : grid.points) {
    upper += p.ok() && p.z > 0.0 ? 1 : 0;
  }
  const double h = grid.max_abs_H();
  const std::string note =
      h > 0.0 ? "hyperbolic H is nonzero: the Scherk surface is minimal in Euclidean space but not in the half-space model"
              : "hyperbolic H vanished on every sampled point with z > 0";
  nlohmann::json doc = {{"schema", io::kScherkSchema},
                        {"a", o.a},
                        {"margin", o.margin},
                        {"domain", {side.lo, side.hi}},
                        {"grid", {grid.nu, grid.nv}},
                        {"failures", grid.failures()},
                        {"max_abs_He", grid.max_abs_He()},
                        {"max_abs_H", h},
                        {"points_with_positive_z", upper},
                        {"note", note}};
  {
    auto csv = open_output(o.out, "scherk.csv");
    io::write_grid_csv(csv, grid);
    auto js = open_output(o.out, "scherk.json");
    io::write_json(js, doc);
  }
  fmt::print("scherk a={}: max|He| = {}, max|H| (z > 0) = {}\n{}\n", io::format_double(o.a),
             io::format_double(grid.max_abs_He()), io::format_double(h), note);
  return 0;
}

int run_verify(const std::string &out_dir) {
  const auto reports = algebra::verify_all();
  const nlohmann::json doc = io::proof_reports(reports);
  auto out = open_output(out_dir, "verify.json");
  io::write_json(out, doc);
  int mismatches = 0;
  for (const auto &r : reports) {
    fmt::print("{:<26} {}\n", r.id, algebra::to_string(r.status));
    mismatches += r.holds() ? 0 : 1;
  }
  return mismatches == 0 ? 0 : 2;
}

struct SearchOpts {
  std::string kind = "type2";
  std::string model = "hyperbolic";
  int seeds = 20;
  std::uint64_t generator_seed = 20240601;
  int grid = 33;
  int max_iterations = 500;
  double relative_tolerance = 1e-12;
  double absolute_tolerance = 1e-28;
  std::string objective = "mean-curvature";
  int check_grid = 129;
  double z_floor = 0.2;
  double floor_tolerance = 1e-3;
  double barrier_weight = 1.0;
  double barrier_ramp = 10.0;
  int barrier_rounds = 8;
  int knots = 12;
  std::string out = ".";
  bool serial = false;
};

int run_search(const SearchOpts &o) {
  const TranslationKind kind = o.kind == "type1" ? TranslationKind::TypeI : TranslationKind::TypeII;
  search::SeedPlan plan = search::default_plan(kind);
  plan.count = o.seeds;
  plan.generator_seed = o.generator_seed;
  plan.interior_knots = static_cast<std::size_t>(o.knots);
  search::SearchConfig cfg;
  cfg.model = o.model == "euclidean" ? search::ResidualModel::euclidean : search::ResidualModel::hyperbolic;
  cfg.grid = o.grid;
  cfg.max_iterations = o.max_iterations;
  cfg.relative_tolerance = o.relative_tolerance;
  cfg.absolute_tolerance = o.absolute_tolerance;
  cfg.objective = o.objective == "closed-form" ? search::Objective::closed_form : search::Objective::mean_curvature;
  cfg.check_grid = o.check_grid;
  cfg.z_floor = o.z_floor;
  cfg.floor_tolerance = o.floor_tolerance;
  cfg.barrier_weight = o.barrier_weight;
  cfg.barrier_ramp = o.barrier_ramp;
  cfg.max_barrier_rounds = o.barrier_rounds;
  const auto runs = o.serial ? search::run_seeds_serial(plan, cfg) : search::run_seeds_parallel(plan, cfg);
  {
    auto csv = open_output(o.out, "search.csv");
    io::write_seed_csv(csv, runs);
    auto js = open_output(o.out, "search.json");
    io::write_json(js, io::seed_summary(runs, plan, cfg));
  }
  for (const auto &run : runs) {
    const auto &r = run.result;
    fmt::print("seed {:>3}  sup {:<24} planeDistance {:<24} it {:>4} {}{}\n", run.seed,
               io::format_double(r.sup_residual), r.plane_distance ? io::format_double(*r.plane_distance) : "-",
               r.iterations, r.converged ? "converged" : "not converged",
               r.diagnostic.empty() ? "" : "  (" + r.diagnostic + ")");
  }
  return 0;
}

struct ReportOpts {
  double a = 1.0;
  double p0 = 0.0;
  std::vector<double> x_range{0.0, 0.2};
  std::vector<double> z_range{0.5, 2.0};
  std::vector<double> b_range{-2.0, 2.0};
  double b_step = 0.1;
  int nodes = 201;
  std::string out = ".";
};

int run_report(const ReportOpts &o) {
  const auto fi = search::integrate_first_integral(o.a, o.p0, {o.x_range[0], o.x_range[1]});
  search::BranchOptions bo;
  bo.b_lo = o.b_range[0];
  bo.b_hi = o.b_range[1];
  bo.b_step = o.b_step;
  bo.nodes = o.nodes;
  const auto br = search::trace_type2_branch(o.a, {o.z_range[0], o.z_range[1]}, bo);
  const nlohmann::json doc = {
      {"schema", io::kReportSchema}, {"first_integral", io::first_integral_json(fi)}, {"branch", io::branch_json(br)}};
  auto out = open_output(o.out, "report.json");
  io::write_json(out, doc);
  fmt::print("first integral: reached x = {}{}, max defect {}, invariant drift {}\n", io::format_double(fi.reached),
             fi.blew_up ? " (blow-up)" : "", io::format_double(fi.max_defect),
             io::format_double(fi.max_invariant_drift));
  fmt::print("branch: min over b of max|q1|+|q2| = {} at b = {}, b=0 control error {}\n",
             io::format_double(br.min_measure), io::format_double(br.argmin_b),
             io::format_double(br.b0_control_error));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Translation surfaces in hyperbolic half-space: curvature, identities, searches"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Run-config file: key = value per line, keys are the subcommand's option names");
  app.config_formatter(std::make_shared<KeyValueConfig>(&app));
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  const auto positive_pair = [](CLI::Option *opt) { opt->expected(2)->check(CLI::PositiveNumber); };

  CurvatureOpts curv;
  auto *c = app.add_subcommand("curvature", "Sample H, He, N3 of a surface file on an interior grid");
  c->add_option("--surface", curv.surface, "Surface description file")->required();
  positive_pair(c->add_option("--grid", curv.grid, "Grid nodes per axis (nu nv)")->capture_default_str());
  c->add_option("--model", curv.model, "hyperbolic or euclidean")
      ->check(CLI::IsMember({"hyperbolic", "euclidean"}))
      ->capture_default_str();
  c->add_option("--format", curv.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  c->add_option("--out", curv.out, "Output directory")->capture_default_str();
  c->add_flag("--serial", curv.serial, "Use the serial reference grid");
  c->fallthrough();

  ScherkOpts sch;
  auto *s = app.add_subcommand("scherk", "Euclidean and hyperbolic curvature of Scherk's surface");
  s->add_option("--a", sch.a, "Scherk parameter")->capture_default_str();
  s->add_option("--margin", sch.margin, "Distance kept from the zeros of cos")->capture_default_str();
  positive_pair(s->add_option("--grid", sch.grid, "Grid nodes per axis (nu nv)")->capture_default_str());
  s->add_option("--out", sch.out, "Output directory")->capture_default_str();
  s->fallthrough();

  std::string verify_out = ".";
  auto *v = app.add_subcommand("verify", "Check the elimination identities in exact arithmetic");
  v->add_option("--out", verify_out, "Output directory")->capture_default_str();
  v->fallthrough();

  SearchOpts se;
  auto *r = app.add_subcommand("search", "Least-squares search for minimal translation surfaces");
  r->add_option("--kind", se.kind, "type1 or type2")->check(CLI::IsMember({"type1", "type2"}))->capture_default_str();
  r->add_option("--model", se.model, "hyperbolic, or euclidean for the control run")
      ->check(CLI::IsMember({"hyperbolic", "euclidean"}))
      ->capture_default_str();
  r->add_option("--seeds", se.seeds, "Number of random seeds")->check(CLI::PositiveNumber)->capture_default_str();
  r->add_option("--generator-seed", se.generator_seed, "Seed of the coefficient generator")->capture_default_str();
  r->add_option("--grid", se.grid, "Evaluation nodes per axis")->check(CLI::Range(2, 1000))->capture_default_str();
  r->add_option("--max-iterations", se.max_iterations, "Iteration cap")->check(CLI::NonNegativeNumber)->capture_default_str();
  r->add_option("--relative-tolerance", se.relative_tolerance, "Stop on a smaller relative decrease")
      ->capture_default_str();
  r->add_option("--absolute-tolerance", se.absolute_tolerance, "Mean-square objective treated as zero")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--objective", se.objective, "mean-curvature, or closed-form for the weighted residual")
      ->check(CLI::IsMember({"mean-curvature", "closed-form"}))
      ->capture_default_str();
  r->add_option("--check-grid", se.check_grid, "Type I feasibility nodes per axis")
      ->check(CLI::Range(2, 10000))
      ->capture_default_str();
  r->add_option("--z-floor", se.z_floor, "Type I height floor")->check(CLI::PositiveNumber)->capture_default_str();
  r->add_option("--floor-tolerance", se.floor_tolerance, "Accepted violation of the height floor")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  r->add_option("--barrier-weight", se.barrier_weight, "Initial barrier weight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  r->add_option("--barrier-ramp", se.barrier_ramp, "Barrier weight factor per round")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  r->add_option("--barrier-rounds", se.barrier_rounds, "Maximum barrier rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  r->add_option("--knots", se.knots, "Interior knots per spline")->check(CLI::NonNegativeNumber)->capture_default_str();
  r->add_option("--out", se.out, "Output directory")->capture_default_str();
  r->add_flag("--serial", se.serial, "Run seeds one after another");
  r->fallthrough();

  ReportOpts rep;
  auto *p = app.add_subcommand("report", "First-integral integration and the type II branch sweep");
  p->add_option("--a", rep.a, "Constant a")->capture_default_str();
  p->add_option("--p0", rep.p0, "Initial slope f'(x0)")->capture_default_str();
  p->add_option("--x-range", rep.x_range, "Integration range for f")->expected(2)->capture_default_str();
  p->add_option("--z-range", rep.z_range, "Height range for the branch")->expected(2)->capture_default_str();
  p->add_option("--b-range", rep.b_range, "Sweep range for b")->expected(2)->capture_default_str();
  p->add_option("--b-step", rep.b_step, "Sweep step for b")->check(CLI::PositiveNumber)->capture_default_str();
  p->add_option("--nodes", rep.nodes, "Height samples")->check(CLI::Range(3, 100000))->capture_default_str();
  p->add_option("--out", rep.out, "Output directory")->capture_default_str();
  p->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    // config-file problems surface here with their line:column
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (threads > 0) {
    omp_set_num_threads(threads);
  }

  try {
    if (*c) {
      return run_curvature(curv);
    }
    if (*s) {
      return run_scherk(sch);
    }
    if (*v) {
      return run_verify(verify_out);
    }
    if (*r) {
      return run_search(se);
    }
    return run_report(rep);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
