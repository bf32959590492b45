#include "htrans/branch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "htrans/error.hpp"
#include "htrans/identities.hpp"

namespace htrans::search {

namespace {

double cubic_value(double c3, double c2, double c1, double c0, double x) {
  return ((c3 * x + c2) * x + c1) * x + c0;
}

double polish(double c3, double c2, double c1, double c0, double x) {
  for (int it = 0; it < 4; ++it) {
    const double d = (3.0 * c3 * x + 2.0 * c2) * x + c1;
    if (d == 0.0) {
      break;
    }
    const double next = x - cubic_value(c3, c2, c1, c0, x) / d;
    if (!std::isfinite(next) ||
        std::abs(cubic_value(c3, c2, c1, c0, next)) >= std::abs(cubic_value(c3, c2, c1, c0, x))) {
      break;
    }
    x = next;
  }
  return x;
}

struct CubicDiscriminant {
  double value = 0.0;
  double scale = 0.0; // sum of term magnitudes, for relative comparisons
};

CubicDiscriminant discriminant(double a, double b, double c, double d) {
  const std::array<double, 5> terms = {18.0 * a * b * c * d, -4.0 * b * b * b * d, b * b * c * c,
                                       -4.0 * a * c * c * c, -27.0 * a * a * d * d};
  CubicDiscriminant out;
  for (double t : terms) {
    out.value += t;
    out.scale += std::abs(t);
  }
  return out;
}

} // namespace

std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0 || !std::isfinite(c3) || !std::isfinite(c2) || !std::isfinite(c1) || !std::isfinite(c0)) {
    throw DomainError("real_cubic_roots: leading coefficient must be finite and nonzero");
  }
  const double B = c2 / c3, C = c1 / c3, D = c0 / c3;
  // t = x + B/3 gives t^3 + p t + q
  const double p = C - B * B / 3.0;
  const double q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const double shift = -B / 3.0;
  const double h = q * q / 4.0 + p * p * p / 27.0;

  std::vector<double> roots;
  if (h > 0.0 || p == 0.0) {
    const double u = std::cbrt(-q / 2.0 - std::copysign(std::sqrt(std::max(h, 0.0)), q));
    const double t = u == 0.0 ? 0.0 : u - p / (3.0 * u);
    roots.push_back(t + shift);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
    }
  }
  for (double &x : roots) {
    x = polish(c3, c2, c1, c0, x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

BranchReport trace_type2_branch(double a, Interval range, const BranchOptions &opts) {
  if (a == 0.0 || !std::isfinite(a)) {
    throw UsageError("trace_type2_branch: a must be finite and nonzero");
  }
  if (!range.bounded() || !(range.lo > 0.0) || !(range.hi > range.lo)) {
    throw UsageError("trace_type2_branch: range must be a bounded interval inside z > 0");
  }
  if (opts.nodes < 3 || !(opts.b_step > 0.0) || opts.b_hi < opts.b_lo) {
    throw UsageError("trace_type2_branch: invalid options");
  }
  using algebra::Var;
  BranchReport report;
  report.a = a;
  report.range = range;

  const auto principal = [a](double z) { return real_cubic_roots(1.0, -a * z, 0.0, -a * z).back(); };

  std::vector<double> zs(static_cast<std::size_t>(opts.nodes));
  for (int i = 0; i < opts.nodes; ++i) {
    zs[static_cast<std::size_t>(i)] = range.node(i, opts.nodes);
  }

  // g = integral of the root function, observed at the sample nodes
  using State = std::array<double, 1>;
  std::vector<double> gs;
  State state{0.0};
  boost::numeric::odeint::integrate_times(
      boost::numeric::odeint::make_dense_output(1e-12, 1e-12, boost::numeric::odeint::runge_kutta_dopri5<State>()),
      [&](const State &, State &ds, double z) { ds[0] = principal(z); }, state, zs.begin(), zs.end(),
      range.width() / opts.nodes, [&](const State &s, double) { gs.push_back(s[0]); });

  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double z = zs[i];
    const auto roots = real_cubic_roots(1.0, -a * z, 0.0, -a * z);
    BranchSample s;
    s.z = z;
    s.X = roots.back();
    s.g = i < gs.size() ? gs[i] : std::numeric_limits<double>::quiet_NaN();
    s.g2 = a * (1.0 + s.X * s.X) / (s.X * (3.0 * s.X - 2.0 * a * z));
    s.real_roots = static_cast<int>(roots.size());
    const CubicDiscriminant disc = discriminant(1.0, -a * z, 0.0, -a * z);
    s.discriminant = disc.value;
    if (std::abs(disc.value) <= opts.degenerate_tolerance * disc.scale) {
      report.degenerate_z.push_back(z);
    }
    report.samples.push_back(s);

    const double step = 1e-5 * std::max(1.0, z);
    if (z - step > 0.0) {
      const double fd = (principal(z + step) - principal(z - step)) / (2.0 * step);
      report.max_g2_mismatch = std::max(report.max_g2_mismatch, std::abs(fd - s.g2));
    }
  }

  const algebra::MultiPoly q1 = algebra::build_named(algebra::NamedPoly::q1);
  const algebra::MultiPoly q2 = algebra::build_named(algebra::NamedPoly::q2);
  const auto count = static_cast<int>(std::llround((opts.b_hi - opts.b_lo) / opts.b_step)) + 1;
  report.min_measure = std::numeric_limits<double>::infinity();
  for (int k = 0; k < count; ++k) {
    const double b = opts.b_lo + k * opts.b_step;
    double measure = 0.0;
    for (const BranchSample &s : report.samples) {
      const std::map<Var, double> at = {{Var::a, a}, {Var::b, b}, {Var::z, s.z}, {Var::X, s.X}};
      measure = std::max(measure, std::abs(q1.evaluate_double(at)) + std::abs(q2.evaluate_double(at)));
    }
    report.sweep.push_back({b, measure});
    if (measure < report.min_measure) {
      report.min_measure = measure;
      report.argmin_b = b;
    }
  }

  const algebra::MultiPoly eqg2 = algebra::build_named(algebra::NamedPoly::eqg2);
  const algebra::MultiPoly b0 = algebra::build_named(algebra::NamedPoly::b0branch);
  for (const BranchSample &s : report.samples) {
    const double x = 4.0 * a * s.z / 5.0;
    const double lhs = eqg2.evaluate_double({{Var::a, a}, {Var::z, s.z}, {Var::X, x}});
    const double rhs = b0.evaluate_double({{Var::a, a}, {Var::z, s.z}});
    report.b0_control_error = std::max(report.b0_control_error, std::abs(lhs - rhs));
  }
  return report;
}

} // namespace htrans::search
