#include "htrans/ode.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "htrans/error.hpp"

namespace htrans::search {

namespace odeint = boost::numeric::odeint;

double first_integral_invariant(double p) {
  return 0.5 * (p / (1.0 + p * p) + std::atan(p));
}

std::optional<double> predicted_blowup(double a, double p0, double x0) {
  if (a == 0.0) {
    return std::nullopt;
  }
  // I(p) runs from -pi/4 to pi/4 and I(p) - a x is conserved
  const double target = a > 0.0 ? std::numbers::pi / 4.0 : -std::numbers::pi / 4.0;
  return x0 + (target - first_integral_invariant(p0)) / a;
}

FirstIntegralReport integrate_first_integral(double a, double p0, Interval range, const OdeOptions &opts) {
  if (!range.bounded() || !(range.hi > range.lo) || !std::isfinite(a) || !std::isfinite(p0)) {
    throw UsageError("integrate_first_integral: need finite a, p0 and a bounded range");
  }
  using State = std::array<double, 2>; // (f, f')
  FirstIntegralReport report;
  report.a = a;
  report.p0 = p0;
  report.range = range;
  report.predicted_blowup = predicted_blowup(a, p0, range.lo);

  const auto rhs = [a](const State &s, State &ds, double) {
    const double w = 1.0 + s[1] * s[1];
    ds[0] = s[1];
    ds[1] = a * w * w;
  };
  const double i0 = first_integral_invariant(p0);
  const auto record = [&](double x, const State &s) {
    const double p = s[1];
    const double w = 1.0 + p * p;
    FirstIntegralSample sample{x, s[0], p, a * w * w, 0.0};
    sample.f3 = 4.0 * a * p * sample.f2 * w;
    report.samples.push_back(sample);
    const double defect = std::abs(-4.0 * p * sample.f2 * sample.f2 + w * sample.f3);
    report.max_defect = std::max(report.max_defect, defect);
    report.max_relative_defect =
        std::max(report.max_relative_defect, defect / std::max(1.0, 4.0 * std::abs(p) * sample.f2 * sample.f2));
    const double drift = std::abs(first_integral_invariant(p) - i0 - a * (x - range.lo));
    report.max_invariant_drift = std::max(report.max_invariant_drift, drift);
    report.reached = x;
  };

  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opts.absolute_tolerance,
                                                                            opts.relative_tolerance);
  State state{0.0, p0};
  double x = range.lo;
  double dt = std::min(opts.initial_step, range.width());
  record(x, state);
  while (true) {
    const double tiny = opts.min_step_ratio * std::max(1.0, std::abs(x));
    if (range.hi - x <= tiny) {
      break;
    }
    if (dt < tiny) {
      report.blew_up = true;
      break;
    }
    dt = std::min(dt, range.hi - x);
    if (stepper.try_step(rhs, state, x, dt) == odeint::fail) {
      continue;
    }
    if (!std::isfinite(state[1])) {
      report.blew_up = true;
      break;
    }
    record(x, state);
    if (std::abs(state[1]) > opts.blowup_slope) {
      report.blew_up = true;
      break;
    }
  }
  return report;
}

} // namespace htrans::search
