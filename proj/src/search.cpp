#include "htrans/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>

#include "htrans/error.hpp"

namespace htrans::search {

namespace {

struct NodeBasis {
  double t = 0.0;
  UniformCubicSpline::Basis basis;
};

std::vector<NodeBasis> node_bases(const UniformCubicSpline &s, int nodes) {
  std::vector<NodeBasis> out(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    const double t = s.domain().node(i, nodes);
    out[static_cast<std::size_t>(i)] = {t, s.basis(t)};
  }
  return out;
}

std::array<double, 4> apply_basis(const UniformCubicSpline::Basis &b, std::span<const double> coeffs) {
  std::array<double, 4> out{};
  for (int order = 0; order < 4; ++order) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += b.weights[order][i] * coeffs[b.first + i];
    }
    out[order] = acc;
  }
  return out;
}

// value and partials of the curvature residual with respect to
// (z, f', f'', g', g'') by seeding one jet direction at a time
struct LocalGradient {
  double value = 0.0;
  std::array<double, 5> d{};
};

LocalGradient local_gradient(TranslationKind kind, ResidualModel model, Objective objective,
                             std::array<double, 5> args) {
  LocalGradient out;
  out.value = objective_residual<double>(kind, model, objective, args[0], args[1], args[2], args[3], args[4]);
  for (int k = 0; k < 5; ++k) {
    std::array<Jet3, 5> seeded;
    for (int j = 0; j < 5; ++j) {
      seeded[j] = Jet3{args[j], j == k ? 1.0 : 0.0, 0.0, 0.0};
    }
    out.d[k] =
        objective_residual<Jet3>(kind, model, objective, seeded[0], seeded[1], seeded[2], seeded[3], seeded[4]).v1;
  }
  return out;
}

double min_height_on(const SplineAnsatz &ansatz, int nodes) {
  double lo = std::numeric_limits<double>::infinity();
  std::vector<double> gv(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    gv[static_cast<std::size_t>(j)] = ansatz.g.eval(ansatz.g.domain().node(j, nodes)).v0;
  }
  const double gmin = *std::min_element(gv.begin(), gv.end());
  for (int i = 0; i < nodes; ++i) {
    lo = std::min(lo, ansatz.f.eval(ansatz.f.domain().node(i, nodes)).v0 + gmin);
  }
  return lo;
}

void fill_statistics(SearchResult &result, const SearchConfig &cfg) {
  const ResidualEvaluation eval = evaluate_residuals(result.ansatz, cfg, 0.0, false);
  result.sup_residual = eval.sup_curvature;
  result.mean_square_residual = eval.mean_square_curvature;
  if (result.ansatz.kind == TranslationKind::TypeII) {
    result.plane_distance = plane_family_distance(to_surface(result.ansatz));
    result.min_height = result.ansatz.g.domain().lo;
  } else {
    result.plane_distance.reset();
    result.min_height = min_height_on(result.ansatz, cfg.check_grid);
  }
}

} // namespace

std::string to_string(ResidualModel model) {
  return model == ResidualModel::hyperbolic ? "hyperbolic" : "euclidean";
}

std::string to_string(Objective objective) {
  return objective == Objective::mean_curvature ? "mean-curvature" : "closed-form";
}

Eigen::VectorXd SplineAnsatz::parameters() const {
  Eigen::VectorXd theta(static_cast<Eigen::Index>(parameter_count()));
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  std::copy(fc.begin(), fc.end(), theta.data());
  std::copy(gc.begin(), gc.end(), theta.data() + fc.size());
  return theta;
}

void SplineAnsatz::set_parameters(const Eigen::VectorXd &theta) {
  auto fc = f.coeffs();
  auto gc = g.coeffs();
  if (static_cast<std::size_t>(theta.size()) != fc.size() + gc.size()) {
    throw UsageError("set_parameters: size mismatch");
  }
  std::copy(theta.data(), theta.data() + fc.size(), fc.begin());
  std::copy(theta.data() + fc.size(), theta.data() + theta.size(), gc.begin());
}

TranslationSurface to_surface(const SplineAnsatz &ansatz) {
  return {ansatz.kind, FunctionCurve::spline(ansatz.f), FunctionCurve::spline(ansatz.g),
          Rect{ansatz.f.domain(), ansatz.g.domain()}};
}

ResidualEvaluation evaluate_residuals(const SplineAnsatz &ansatz, const SearchConfig &cfg, double barrier_weight,
                                      bool with_jacobian) {
  const int n = cfg.grid;
  const auto fb = node_bases(ansatz.f, n);
  const auto gb = node_bases(ansatz.g, n);
  const auto fc = ansatz.f.coeffs();
  const auto gc = ansatz.g.coeffs();
  const Eigen::Index nf = static_cast<Eigen::Index>(fc.size());
  const Eigen::Index params = static_cast<Eigen::Index>(ansatz.parameter_count());
  const bool type1 = ansatz.kind == TranslationKind::TypeI;
  const bool barrier = type1 && barrier_weight > 0.0;

  const Eigen::Index points = static_cast<Eigen::Index>(n) * n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(points));

  // barrier rows live on the dense check grid, one per violating (x, y) pair
  struct BarrierRow {
    std::size_t i, j;
    double gap;
  };
  std::vector<BarrierRow> violations;
  std::vector<NodeBasis> cfb, cgb;
  double barrier_scale = 0.0;
  if (barrier) {
    cfb = node_bases(ansatz.f, cfg.check_grid);
    cgb = node_bases(ansatz.g, cfg.check_grid);
    std::vector<double> fv(cfb.size()), gv(cgb.size());
    for (std::size_t i = 0; i < cfb.size(); ++i) {
      fv[i] = apply_basis(cfb[i].basis, fc)[0];
    }
    for (std::size_t j = 0; j < cgb.size(); ++j) {
      gv[j] = apply_basis(cgb[j].basis, gc)[0];
    }
    for (std::size_t i = 0; i < fv.size(); ++i) {
      for (std::size_t j = 0; j < gv.size(); ++j) {
        if (fv[i] + gv[j] < cfg.z_floor) {
          violations.push_back({i, j, cfg.z_floor - fv[i] - gv[j]});
        }
      }
    }
    const double checks = static_cast<double>(cfb.size() * cgb.size());
    barrier_scale = std::sqrt(barrier_weight / checks);
  }
  const Eigen::Index rows = points + static_cast<Eigen::Index>(violations.size());

  ResidualEvaluation out;
  out.residual = Eigen::VectorXd::Zero(rows);
  if (with_jacobian) {
    out.jacobian = Eigen::MatrixXd::Zero(rows, params);
  }
  out.min_height = std::numeric_limits<double>::infinity();

  std::vector<std::array<double, 4>> fj(fb.size()), gj(gb.size());
  for (std::size_t i = 0; i < fb.size(); ++i) {
    fj[i] = apply_basis(fb[i].basis, fc);
  }
  for (std::size_t j = 0; j < gb.size(); ++j) {
    gj[j] = apply_basis(gb[j].basis, gc);
  }

  double sup = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto &f = fj[static_cast<std::size_t>(i)];
      const auto &g = gj[static_cast<std::size_t>(j)];
      const double z = type1 ? f[0] + g[0] : gb[static_cast<std::size_t>(j)].t;
      const Eigen::Index row = static_cast<Eigen::Index>(i) * n + j;
      out.min_height = std::min(out.min_height, z);

      const std::array<double, 5> args = {z, f[1], f[2], g[1], g[2]};
      double value;
      const double curvature =
          curvature_residual<double>(ansatz.kind, cfg.model, args[0], args[1], args[2], args[3], args[4]);
      if (with_jacobian) {
        const LocalGradient lg = local_gradient(ansatz.kind, cfg.model, cfg.objective, args);
        value = lg.value;
        const auto &bf = fb[static_cast<std::size_t>(i)].basis;
        const auto &bg = gb[static_cast<std::size_t>(j)].basis;
        // z depends on f and g values only for type I
        const double dz = type1 ? lg.d[0] : 0.0;
        for (int k = 0; k < 4; ++k) {
          const Eigen::Index cf = static_cast<Eigen::Index>(bf.first) + k;
          const Eigen::Index cg = nf + static_cast<Eigen::Index>(bg.first) + k;
          out.jacobian(row, cf) +=
              scale * (dz * bf.weights[0][k] + lg.d[1] * bf.weights[1][k] + lg.d[2] * bf.weights[2][k]);
          out.jacobian(row, cg) +=
              scale * (dz * bg.weights[0][k] + lg.d[3] * bg.weights[1][k] + lg.d[4] * bg.weights[2][k]);
        }
      } else {
        value = cfg.objective == Objective::mean_curvature
                    ? curvature
                    : objective_residual<double>(ansatz.kind, cfg.model, cfg.objective, args[0], args[1], args[2],
                                                 args[3], args[4]);
      }
      out.residual(row) = scale * value;
      sup = std::max(sup, std::abs(curvature));
      sum_sq += curvature * curvature;
      if (!std::isfinite(value) || !std::isfinite(curvature)) {
        sup = std::numeric_limits<double>::infinity();
      }
    }
  }
  for (std::size_t r = 0; r < violations.size(); ++r) {
    const Eigen::Index row = points + static_cast<Eigen::Index>(r);
    out.residual(row) = barrier_scale * violations[r].gap;
    if (with_jacobian) {
      const auto &bf = cfb[violations[r].i].basis;
      const auto &bg = cgb[violations[r].j].basis;
      for (int k = 0; k < 4; ++k) {
        out.jacobian(row, static_cast<Eigen::Index>(bf.first) + k) -= barrier_scale * bf.weights[0][k];
        out.jacobian(row, nf + static_cast<Eigen::Index>(bg.first) + k) -= barrier_scale * bg.weights[0][k];
      }
    }
  }
  out.violations = violations.size();
  out.sup_curvature = sup;
  out.mean_square_curvature = sum_sq / static_cast<double>(points);
  out.objective = out.residual.squaredNorm();
  return out;
}

SearchResult minimize_residual(const SplineAnsatz &seed, const SearchConfig &cfg) {
  if (cfg.grid < 2 || cfg.max_iterations < 0) {
    throw UsageError("minimize_residual: invalid configuration");
  }
  SearchResult result;
  result.ansatz = seed;
  const bool type1 = seed.kind == TranslationKind::TypeI;
  if (type1) {
    const double lo = min_height_on(seed, cfg.check_grid);
    if (lo < cfg.z_floor) {
      std::ostringstream os;
      os << "infeasible seed: min f + g = " << lo << " below z floor " << cfg.z_floor;
      throw DomainError(os.str());
    }
  }

  Eigen::VectorXd theta = seed.parameters();
  SplineAnsatz trial = seed;
  double weight = type1 ? cfg.barrier_weight : 0.0;
  int ramps = 0;

  ResidualEvaluation current = evaluate_residuals(result.ansatz, cfg, weight, true);
  if (!std::isfinite(current.objective)) {
    result.diagnostic = "non-finite residual at the seed";
    fill_statistics(result, cfg);
    return result;
  }
  result.round_starts.push_back(0);
  result.objective_history.push_back(current.objective);

  double damping = cfg.initial_damping;
  double growth = 2.0;
  // Marquardt scaling, kept non-decreasing across iterations
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(theta.size());
  bool converged = current.objective <= cfg.absolute_tolerance;

  while (!converged && result.iterations < cfg.max_iterations) {
    ++result.iterations;
    const Eigen::MatrixXd normal = current.jacobian.transpose() * current.jacobian;
    const Eigen::VectorXd gradient = current.jacobian.transpose() * current.residual;
    diag = diag.cwiseMax(normal.diagonal());
    const Eigen::VectorXd scaling = diag.cwiseMax(1e-12 * std::max(1.0, diag.maxCoeff()));

    bool accepted = false;
    double decrease = 0.0;
    while (damping <= cfg.max_damping) {
      Eigen::MatrixXd system = normal;
      system.diagonal() += damping * scaling;
      const Eigen::VectorXd step = system.ldlt().solve(-gradient);
      const double predicted = -step.dot(gradient) + damping * step.dot(scaling.cwiseProduct(step));
      trial.set_parameters(theta + step);
      const ResidualEvaluation next = evaluate_residuals(trial, cfg, weight, false);
      if (std::isfinite(next.objective) && next.objective < current.objective && predicted > 0.0) {
        decrease = (current.objective - next.objective) / current.objective;
        const double r = 2.0 * (current.objective - next.objective) / predicted - 1.0;
        theta += step;
        damping = std::max(damping * std::max(1.0 / 3.0, 1.0 - r * r * r), 1e-15);
        growth = 2.0;
        accepted = true;
        break;
      }
      damping *= growth;
      growth *= 2.0;
    }
    if (!accepted) {
      // no decrease at any damping: stationary to working precision
      converged = true;
      break;
    }
    result.ansatz.set_parameters(theta);
    current = evaluate_residuals(result.ansatz, cfg, weight, true);
    if (!std::isfinite(current.objective)) {
      result.diagnostic = "non-finite residual during iteration";
      break;
    }
    result.objective_history.push_back(current.objective);
    converged = decrease < cfg.relative_tolerance || current.objective <= cfg.absolute_tolerance;

    if (type1 && current.violations > 0 && ramps < cfg.max_barrier_rounds) {
      // tighten the barrier; the objective changes, so a new monotone segment starts
      weight *= cfg.barrier_ramp;
      ++ramps;
      current = evaluate_residuals(result.ansatz, cfg, weight, true);
      result.round_starts.push_back(static_cast<int>(result.objective_history.size()));
      result.objective_history.push_back(current.objective);
      converged = false;
    }
  }

  result.converged = converged && result.diagnostic.empty();
  fill_statistics(result, cfg);
  if (!std::isfinite(result.sup_residual)) {
    result.converged = false;
    result.diagnostic = "non-finite residual at the final iterate";
  } else if (type1 && result.min_height < cfg.z_floor - cfg.floor_tolerance) {
    result.converged = false;
    std::ostringstream os;
    os << "final iterate violates the height floor: min f + g = " << result.min_height;
    result.diagnostic = os.str();
  }
  return result;
}

SeedPlan default_plan(TranslationKind kind) {
  SeedPlan plan;
  plan.kind = kind;
  if (kind == TranslationKind::TypeI) {
    plan.g_domain = {-1.0, 1.0};
    plan.g_offset = 1.5;
  }
  return plan;
}

SplineAnsatz make_seed(const SeedPlan &plan, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(plan.generator_seed & 0xffffffffu),
                    static_cast<std::uint32_t>(plan.generator_seed >> 32), static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coeff(-plan.amplitude, plan.amplitude);
  SplineAnsatz ansatz{plan.kind, UniformCubicSpline::zeros(plan.f_domain, plan.interior_knots),
                      UniformCubicSpline::zeros(plan.g_domain, plan.interior_knots)};
  for (double &c : ansatz.f.coeffs()) {
    c = coeff(rng);
  }
  for (double &c : ansatz.g.coeffs()) {
    c = coeff(rng) + plan.g_offset;
  }
  return ansatz;
}

namespace {

SeedRun run_one(const SeedPlan &plan, const SearchConfig &cfg, int index) {
  SeedRun run;
  run.seed = index;
  const SplineAnsatz seed = make_seed(plan, index);
  try {
    run.result = minimize_residual(seed, cfg);
  } catch (const std::exception &e) {
    run.result.ansatz = seed;
    run.result.converged = false;
    run.result.sup_residual = std::numeric_limits<double>::infinity();
    run.result.mean_square_residual = std::numeric_limits<double>::infinity();
    run.result.diagnostic = e.what();
  }
  return run;
}

} // namespace

std::vector<SeedRun> run_seeds_serial(const SeedPlan &plan, const SearchConfig &cfg) {
  std::vector<SeedRun> runs(static_cast<std::size_t>(std::max(0, plan.count)));
  for (int i = 0; i < plan.count; ++i) {
    runs[static_cast<std::size_t>(i)] = run_one(plan, cfg, i);
  }
  return runs;
}

std::vector<SeedRun> run_seeds_parallel(const SeedPlan &plan, const SearchConfig &cfg) {
  std::vector<SeedRun> runs(static_cast<std::size_t>(std::max(0, plan.count)));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < plan.count; ++i) {
    runs[static_cast<std::size_t>(i)] = run_one(plan, cfg, i);
  }
  return runs;
}

} // namespace htrans::search
