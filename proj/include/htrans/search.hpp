#pragma once

// Least-squares falsification harness: fits cubic-spline (f, g) pairs to the
// minimality condition H = 0 on a grid with a damped Gauss-Newton
// (Levenberg-Marquardt) loop.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "htrans/jet.hpp"
#include "htrans/spline.hpp"
#include "htrans/surfaces.hpp"

namespace htrans::search {

/// Which curvature the harness drives to zero. `euclidean` is the control
/// experiment: the same loop on the Euclidean mean curvature.
enum class ResidualModel { hyperbolic, euclidean };

std::string to_string(ResidualModel model);

/// What the least-squares loop minimizes. `mean_curvature` uses H itself;
/// `closed_form` uses the polynomial-weighted residual
/// +-2 W^3 H / ((1+f'^2)(1+g'^2)), which has the same zero set but does not
/// decay along steep graphs.
enum class Objective { mean_curvature, closed_form };

std::string to_string(Objective objective);

struct SplineAnsatz {
  TranslationKind kind = TranslationKind::TypeII;
  UniformCubicSpline f;
  UniformCubicSpline g;

  std::size_t parameter_count() const { return f.coeffs().size() + g.coeffs().size(); }
  Eigen::VectorXd parameters() const;
  void set_parameters(const Eigen::VectorXd &theta);
};

TranslationSurface to_surface(const SplineAnsatz &ansatz);

struct SearchConfig {
  ResidualModel model = ResidualModel::hyperbolic;
  Objective objective = Objective::mean_curvature;
  int grid = 33;           // evaluation nodes per axis
  int check_grid = 129;    // feasibility check nodes per axis (type I)
  int max_iterations = 500;
  double relative_tolerance = 1e-12; // on the accepted-step objective decrease
  double absolute_tolerance = 1e-28; // mean-square objective treated as zero
  double z_floor = 0.2;
  double floor_tolerance = 1e-3; // accepted penalty-level violation of z_floor in the final iterate
  double barrier_weight = 1.0;
  double barrier_ramp = 10.0;
  int max_barrier_rounds = 8;
  double initial_damping = 1e-3;
  double max_damping = 1e16;
};

struct SearchResult {
  SplineAnsatz ansatz;
  double sup_residual = 0.0;          // max |residual| over the evaluation grid
  double mean_square_residual = 0.0;  // mean residual^2 over the evaluation grid
  std::optional<double> plane_distance; // type II only
  double min_height = 0.0;            // min f + g on the check grid (type I)
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;
  std::vector<double> objective_history; // accepted objectives, per barrier round
  std::vector<int> round_starts;          // index into objective_history of each round
};

/// Mean curvature of a translation surface from the jets of f and g, written
/// once for doubles and for jets so the Jacobian comes from forward mode.
///   type I:  H = z He + 1/W,   He =  ((1+g'^2) f'' + (1+f'^2) g'') / (2 W^3), z = f + g
///   type II: H = z He + g'/W,  He = -((1+g'^2) f'' + (1+f'^2) g'') / (2 W^3)
template <typename T>
T curvature_residual(TranslationKind kind, ResidualModel model, const T &z, const T &f1, const T &f2, const T &g1,
                     const T &g2) {
  using std::sqrt;
  const T P = 1.0 + f1 * f1;
  const T Q = 1.0 + g1 * g1;
  const T W2 = P + g1 * g1;
  const T W = sqrt(W2);
  const T bend = Q * f2 + P * g2;
  const double sign = kind == TranslationKind::TypeI ? 1.0 : -1.0;
  const T He = sign * bend / (2.0 * W2 * W);
  if (model == ResidualModel::euclidean) {
    return He;
  }
  const T N3 = kind == TranslationKind::TypeI ? 1.0 / W : g1 / W;
  return z * He + N3;
}

/// The objective residual at one point: H (or He) itself, or the same quantity
/// times 2 W^3 / ((1+f'^2)(1+g'^2)) with the sign of the closed-form equations
/// (+ for type I, - for type II).
template <typename T>
T objective_residual(TranslationKind kind, ResidualModel model, Objective objective, const T &z, const T &f1,
                     const T &f2, const T &g1, const T &g2) {
  const T h = curvature_residual<T>(kind, model, z, f1, f2, g1, g2);
  if (objective == Objective::mean_curvature) {
    return h;
  }
  using std::sqrt;
  const T P = 1.0 + f1 * f1;
  const T Q = 1.0 + g1 * g1;
  const T W2 = P + g1 * g1;
  const double sign = kind == TranslationKind::TypeI ? 2.0 : -2.0;
  return sign * W2 * sqrt(W2) * h / (P * Q);
}

struct ResidualEvaluation {
  Eigen::VectorXd residual; // curvature rows, then one barrier row per violating check-grid pair
  Eigen::MatrixXd jacobian; // empty unless requested
  double objective = 0.0;   // squared norm of `residual`
  double sup_curvature = 0.0;
  double mean_square_curvature = 0.0;
  double min_height = 0.0;       // over the evaluation grid
  std::size_t violations = 0;    // check-grid pairs below the height floor
};

/// Residual vector (and optionally its Jacobian with respect to the spline
/// coefficients) on the cfg.grid x cfg.grid evaluation grid.
ResidualEvaluation evaluate_residuals(const SplineAnsatz &ansatz, const SearchConfig &cfg, double barrier_weight,
                                      bool with_jacobian);

/// Levenberg-Marquardt minimization from `seed`. Deterministic. Throws
/// DomainError for an infeasible type I seed.
SearchResult minimize_residual(const SplineAnsatz &seed, const SearchConfig &cfg);

/// Random seeds: coefficients uniform in [-amplitude, amplitude], plus g_offset
/// on the g coefficients.
struct SeedPlan {
  TranslationKind kind = TranslationKind::TypeII;
  int count = 20;
  std::uint64_t generator_seed = 20240601;
  Interval f_domain{-1.0, 1.0};
  Interval g_domain{1.0, 2.0};
  std::size_t interior_knots = 12;
  double amplitude = 0.5;
  double g_offset = 0.0;
};

/// Defaults matching the type I (domain (-1,1)^2, offset so f + g >= 0.5) and
/// type II (x in (-1,1), z in (1,2)) experiments.
SeedPlan default_plan(TranslationKind kind);

SplineAnsatz make_seed(const SeedPlan &plan, int index);

struct SeedRun {
  int seed = 0;
  SearchResult result;
};

/// Reference implementation: seeds one after another.
std::vector<SeedRun> run_seeds_serial(const SeedPlan &plan, const SearchConfig &cfg);
/// Seeds fanned out over OpenMP threads; results in seed order and bit-identical
/// to the serial run.
std::vector<SeedRun> run_seeds_parallel(const SeedPlan &plan, const SearchConfig &cfg);

} // namespace htrans::search
