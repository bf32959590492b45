#pragma once

// Adaptive integration of the first integral f'' = a (1 + f'^2)^2 and of the
// cubic branch g'(z) for type II candidates.

#include <optional>
#include <vector>

#include "htrans/interval.hpp"

namespace htrans::search {

struct OdeOptions {
  double absolute_tolerance = 1e-12;
  double relative_tolerance = 1e-12;
  double initial_step = 1e-3;
  double blowup_slope = 1e6;    // |f'| beyond this ends the integration
  double min_step_ratio = 1e-14; // step below this fraction of max(1, |x|) counts as blow-up
};

struct FirstIntegralSample {
  double x = 0.0;
  double f = 0.0;
  double p = 0.0;  // f'
  double f2 = 0.0; // f'' from the equation
  double f3 = 0.0; // f''' = 4 a p f'' (1 + p^2)
};

struct FirstIntegralReport {
  double a = 0.0;
  double p0 = 0.0;
  Interval range;
  std::vector<FirstIntegralSample> samples; // accepted steps, starting at range.lo
  double reached = 0.0;                     // last abscissa integrated
  bool blew_up = false;
  double max_defect = 0.0;          // max |-4 p f''^2 + (1 + p^2) f'''|
  double max_relative_defect = 0.0; // the same over max(1, 4 |p| f''^2)
  double max_invariant_drift = 0.0; // max |I(p) - I(p0) - a (x - x0)|
  std::optional<double> predicted_blowup; // closed-form singular abscissa, when a != 0
};

/// Antiderivative of 1/(1 + p^2)^2.
double first_integral_invariant(double p);

/// Abscissa where the solution through (x0, p0) reaches |f'| = infinity.
std::optional<double> predicted_blowup(double a, double p0, double x0);

/// Integrates f'' = a (1 + f'^2)^2 from range.lo with f = 0, f' = p0. The
/// integration stops early, with blew_up set, when |f'| exceeds the blow-up
/// slope or the step size underflows.
FirstIntegralReport integrate_first_integral(double a, double p0, Interval range, const OdeOptions &opts = {});

} // namespace htrans::search
