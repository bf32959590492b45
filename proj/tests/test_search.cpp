#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <omp.h>

#include "htrans/branch.hpp"
#include "htrans/error.hpp"
#include "htrans/grid.hpp"
#include "htrans/ode.hpp"
#include "htrans/search.hpp"

namespace {

using namespace htrans;
using namespace htrans::search;

SearchConfig small_config() {
  SearchConfig cfg;
  cfg.grid = 17;
  cfg.check_grid = 33;
  cfg.max_iterations = 60;
  return cfg;
}

SeedPlan small_plan(TranslationKind kind, int count) {
  SeedPlan plan = default_plan(kind);
  plan.count = count;
  plan.interior_knots = 5;
  return plan;
}

// ---- splines

TEST(Spline, QuasiInterpolantReproducesCubics) {
  const auto fn = [](double t) { return 0.5 * t * t * t - t * t + 2.0 * t - 3.0; };
  const auto s = UniformCubicSpline::quasi_interpolate({-1.0, 2.0}, 7, fn);
  for (double t : {-1.0, -0.3, 0.0, 0.77, 1.5, 2.0}) {
    const Jet3 j = s.eval(t);
    EXPECT_NEAR(j.v0, fn(t), 1e-13);
    EXPECT_NEAR(j.v1, 1.5 * t * t - 2.0 * t + 2.0, 1e-12);
    EXPECT_NEAR(j.v2, 3.0 * t - 2.0, 1e-11);
    EXPECT_NEAR(j.v3, 3.0, 1e-10);
  }
}

TEST(Spline, BasisIsAPartitionOfUnity) {
  const auto s = UniformCubicSpline::zeros({0.0, 1.0}, 4);
  EXPECT_EQ(s.coeffs().size(), 8U);
  for (double t : {0.0, 0.13, 0.5, 0.99, 1.0}) {
    const auto b = s.basis(t);
    double sum = 0.0, dsum = 0.0;
    for (int i = 0; i < 4; ++i) {
      sum += b.weights[0][i];
      dsum += b.weights[1][i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_NEAR(dsum, 0.0, 1e-13);
  }
}

// ---- residual model

TEST(Residual, CurvatureTemplateMatchesKernel) {
  std::mt19937_64 rng(4);
  for (auto kind : {TranslationKind::TypeI, TranslationKind::TypeII}) {
    SeedPlan plan = small_plan(kind, 10);
    for (int i = 0; i < 10; ++i) {
      const SplineAnsatz a = make_seed(plan, i);
      const TranslationSurface s = to_surface(a);
      std::uniform_real_distribution<double> u(s.domain.u.lo, s.domain.u.hi), v(s.domain.v.lo, s.domain.v.hi);
      for (int k = 0; k < 20; ++k) {
        const double x = u(rng), y = v(rng);
        const Jet3 f = a.f.eval(x), g = a.g.eval(y);
        const double z = kind == TranslationKind::TypeI ? f.v0 + g.v0 : y;
        const double h =
            curvature_residual<double>(kind, ResidualModel::hyperbolic, z, f.v1, f.v2, g.v1, g.v2);
        const auto r = hyperbolic_curvature(patch_jet(s, x, y));
        EXPECT_NEAR(h, r.H, 1e-12 * std::max(1.0, std::abs(r.H)));
        const double he = curvature_residual<double>(kind, ResidualModel::euclidean, z, f.v1, f.v2, g.v1, g.v2);
        EXPECT_NEAR(he, r.He, 1e-12 * std::max(1.0, std::abs(r.He)));
      }
    }
  }
}

TEST(Residual, JacobianMatchesCentralDifferences) {
  for (auto kind : {TranslationKind::TypeI, TranslationKind::TypeII}) {
    for (auto objective : {Objective::mean_curvature, Objective::closed_form}) {
      SearchConfig cfg = small_config();
      cfg.objective = objective;
      const SplineAnsatz a = make_seed(small_plan(kind, 3), 2);
      const auto ev = evaluate_residuals(a, cfg, cfg.barrier_weight, true);
      const Eigen::VectorXd theta = a.parameters();
      ASSERT_EQ(ev.jacobian.cols(), static_cast<Eigen::Index>(theta.size()));
      for (Eigen::Index c = 0; c < theta.size(); ++c) {
        const double h = 1e-6;
        SplineAnsatz plus = a, minus = a;
        Eigen::VectorXd tp = theta, tm = theta;
        tp[c] += h;
        tm[c] -= h;
        plus.set_parameters(tp);
        minus.set_parameters(tm);
        const auto rp = evaluate_residuals(plus, cfg, cfg.barrier_weight, false);
        const auto rm = evaluate_residuals(minus, cfg, cfg.barrier_weight, false);
        ASSERT_EQ(rp.residual.size(), ev.residual.size());
        ASSERT_EQ(rm.residual.size(), ev.residual.size());
        const Eigen::VectorXd fd = (rp.residual - rm.residual) / (2 * h);
        const double scale = std::max(1.0, ev.jacobian.col(c).cwiseAbs().maxCoeff());
        EXPECT_LE((ev.jacobian.col(c) - fd).cwiseAbs().maxCoeff(), 1e-5 * scale)
            << to_string(kind) << " " << to_string(objective) << " column " << c;
      }
    }
  }
}

TEST(Residual, BarrierRowsAppearBelowTheFloor) {
  SearchConfig cfg = small_config();
  SplineAnsatz a = make_seed(small_plan(TranslationKind::TypeI, 1), 0);
  auto ev = evaluate_residuals(a, cfg, 1.0, false);
  EXPECT_EQ(ev.violations, 0U);
  EXPECT_EQ(ev.residual.size(), cfg.grid * cfg.grid);
  for (double &c : a.g.coeffs()) {
    c -= 1.6;
  }
  ev = evaluate_residuals(a, cfg, 1.0, false);
  EXPECT_GT(ev.violations, 0U);
  EXPECT_EQ(ev.residual.size(), static_cast<Eigen::Index>(cfg.grid * cfg.grid + ev.violations));
}

// ---- least squares

TEST(Minimize, ExactPlaneSeedIsAlreadyMinimal) {
  SplineAnsatz plane{TranslationKind::TypeII,
                     UniformCubicSpline::quasi_interpolate({-1.0, 1.0}, 12, [](double x) { return 2.0 * x; }),
                     UniformCubicSpline::quasi_interpolate({1.0, 2.0}, 12, [](double) { return 1.0; })};
  const SearchResult r = minimize_residual(plane, SearchConfig{});
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 1);
  EXPECT_LT(r.sup_residual, 1e-12);
  ASSERT_TRUE(r.plane_distance.has_value());
  // zero up to rounding in the spline second derivative of a linear function
  EXPECT_LT(*r.plane_distance, 1e-24);
}

TEST(Minimize, InfeasibleTypeISeedRejected) {
  SplineAnsatz flat{TranslationKind::TypeI, UniformCubicSpline::zeros({-1.0, 1.0}, 4),
                    UniformCubicSpline::zeros({-1.0, 1.0}, 4)};
  EXPECT_THROW(minimize_residual(flat, SearchConfig{}), DomainError);
}

TEST(Minimize, AcceptedObjectivesNonIncreasingWithinRounds) {
  for (auto kind : {TranslationKind::TypeI, TranslationKind::TypeII}) {
    const SeedPlan plan = small_plan(kind, 3);
    for (int i = 0; i < plan.count; ++i) {
      const SearchResult r = minimize_residual(make_seed(plan, i), small_config());
      const auto &h = r.objective_history;
      ASSERT_FALSE(h.empty());
      ASSERT_FALSE(r.round_starts.empty());
      for (std::size_t k = 1; k < h.size(); ++k) {
        const bool new_round =
            std::find(r.round_starts.begin(), r.round_starts.end(), static_cast<int>(k)) != r.round_starts.end();
        if (!new_round) {
          EXPECT_LE(h[k], h[k - 1]) << to_string(kind) << " seed " << i << " step " << k;
        }
      }
      EXPECT_GE(r.sup_residual, 0.0);
      if (r.plane_distance) {
        EXPECT_GE(*r.plane_distance, 0.0);
      }
    }
  }
}

TEST(Minimize, Deterministic) {
  const SeedPlan plan = small_plan(TranslationKind::TypeII, 2);
  const SearchResult a = minimize_residual(make_seed(plan, 1), small_config());
  const SearchResult b = minimize_residual(make_seed(plan, 1), small_config());
  EXPECT_EQ(a.sup_residual, b.sup_residual);
  EXPECT_EQ(a.mean_square_residual, b.mean_square_residual);
  EXPECT_EQ(a.plane_distance, b.plane_distance);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.ansatz.parameters(), b.ansatz.parameters());
}

TEST(Minimize, ParallelSeedsMatchSerial) {
  for (auto kind : {TranslationKind::TypeI, TranslationKind::TypeII}) {
    const SeedPlan plan = small_plan(kind, 4);
    const auto serial = run_seeds_serial(plan, small_config());
    omp_set_num_threads(4);
    const auto parallel = run_seeds_parallel(plan, small_config());
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      EXPECT_EQ(serial[i].seed, parallel[i].seed);
      EXPECT_EQ(serial[i].result.sup_residual, parallel[i].result.sup_residual);
      EXPECT_EQ(serial[i].result.iterations, parallel[i].result.iterations);
      EXPECT_EQ(serial[i].result.ansatz.parameters(), parallel[i].result.ansatz.parameters());
    }
  }
}

TEST(Minimize, SeedsDependOnGeneratorSeed) {
  SeedPlan plan = small_plan(TranslationKind::TypeII, 2);
  const auto a = make_seed(plan, 0).parameters();
  EXPECT_EQ(a, make_seed(plan, 0).parameters());
  EXPECT_NE(a, make_seed(plan, 1).parameters());
  plan.generator_seed += 1;
  EXPECT_NE(a, make_seed(plan, 0).parameters());
}

// ---- first integral

TEST(FirstIntegral, LinearWhenAIsZero) {
  const auto r = integrate_first_integral(0.0, 1.0, {0.0, 3.0});
  EXPECT_FALSE(r.blew_up);
  EXPECT_EQ(r.max_defect, 0.0);
  EXPECT_NEAR(r.samples.back().f, 3.0, 1e-12);
  EXPECT_FALSE(r.predicted_blowup.has_value());
}

TEST(FirstIntegral, ShortRangeDefect) {
  const auto r = integrate_first_integral(1.0, 0.0, {0.0, 0.2});
  EXPECT_FALSE(r.blew_up);
  EXPECT_DOUBLE_EQ(r.reached, 0.2);
  EXPECT_LT(r.max_defect, 1e-8);
  EXPECT_LT(r.max_invariant_drift, 1e-10);
}

TEST(FirstIntegral, BlowUpAtClosedFormAbscissa) {
  const auto r = integrate_first_integral(1.0, 0.0, {0.0, 10.0});
  EXPECT_TRUE(r.blew_up);
  ASSERT_TRUE(r.predicted_blowup.has_value());
  EXPECT_NEAR(*r.predicted_blowup, std::numbers::pi / 4, 1e-15);
  EXPECT_NEAR(r.reached, std::numbers::pi / 4, 1e-6);
  EXPECT_LT(r.reached, 10.0);
  EXPECT_LT(r.max_relative_defect, 1e-6);
}

TEST(FirstIntegral, InvariantClosedForm) {
  EXPECT_EQ(first_integral_invariant(0.0), 0.0);
  EXPECT_NEAR(first_integral_invariant(1.0), 0.25 + std::numbers::pi / 8, 1e-15);
  EXPECT_NEAR(*predicted_blowup(-2.0, 0.0, 1.0), 1.0 + std::numbers::pi / 8, 1e-15);
}

// ---- cubic branch

TEST(Branch, CubicRoots) {
  const auto r = real_cubic_roots(1, -1, 0, -1);
  ASSERT_EQ(r.size(), 1U);
  EXPECT_NEAR(r[0], 1.46557123187677, 1e-14);
  const auto three = real_cubic_roots(1, -6, 11, -6);
  ASSERT_EQ(three.size(), 3U);
  EXPECT_NEAR(three[0], 1.0, 1e-14);
  EXPECT_NEAR(three[1], 2.0, 1e-14);
  EXPECT_NEAR(three[2], 3.0, 1e-14);
}

TEST(Branch, TraceTypeII) {
  const BranchReport r = trace_type2_branch(1.0, {0.5, 2.0});
  ASSERT_FALSE(r.samples.empty());
  const BranchSample &last = r.samples.back();
  EXPECT_DOUBLE_EQ(last.z, 2.0);
  EXPECT_NEAR(last.X, 2.35930408597178, 1e-12);
  EXPECT_NEAR(last.g2, 0.904235615516406, 1e-12);
  EXPECT_LT(r.max_g2_mismatch, 1e-6);
  EXPECT_LT(r.b0_control_error, 1e-12);
  EXPECT_GT(r.min_measure, 0.0);
  EXPECT_EQ(r.sweep.size(), 41U);

  const BranchReport at1 = trace_type2_branch(1.0, {1.0, 2.0});
  EXPECT_NEAR(at1.samples.front().X, 1.46557123187677, 1e-13);
}

// ---- curvature grids

TEST(Grid, InteriorNodesExcludeEndpoints) {
  EXPECT_DOUBLE_EQ(interior_node({0.0, 1.0}, 0, 3), 0.25);
  EXPECT_DOUBLE_EQ(interior_node({0.0, 1.0}, 2, 3), 0.75);
}

TEST(Grid, ParallelMatchesSerial) {
  const Surface hemi = Hemisphere{0.5, -1.0, 2.0, {{-0.9, 1.9}, {-2.4, 0.4}}};
  omp_set_num_threads(4);
  for (auto model : {GridModel::hyperbolic, GridModel::euclidean}) {
    const auto a = curvature_grid_serial(hemi, {40, 30, model});
    const auto b = curvature_grid_parallel(hemi, {40, 30, model});
    ASSERT_EQ(a.points.size(), 1200U);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_EQ(a.points[i].H, b.points[i].H);
      EXPECT_EQ(a.points[i].He, b.points[i].He);
    }
  }
}

TEST(Grid, FailuresAreRecordedNotThrown) {
  // z = x crosses the ideal boundary: left half fails in the hyperbolic model
  const Surface s = TranslationSurface(TranslationKind::TypeI, FunctionCurve::linear(1, 0),
                                       FunctionCurve::constant(0), {{-1.0, 1.0}, {-1.0, 1.0}});
  const auto g = curvature_grid_serial(s, {10, 4, GridModel::hyperbolic});
  EXPECT_EQ(g.failures(), 20);
  EXPECT_TRUE(std::isnan(g.points.front().H));
  EXPECT_FALSE(g.points.front().error.empty());
  EXPECT_TRUE(std::isfinite(g.max_abs_H()));
  const auto e = curvature_grid_serial(s, {10, 4, GridModel::euclidean});
  EXPECT_EQ(e.failures(), 0);
}

} // namespace
