#include "htrans/spline.hpp"

#include <algorithm>
#include <cmath>

#include "htrans/error.hpp"

namespace htrans {

UniformCubicSpline::UniformCubicSpline(Interval domain, std::vector<double> coeffs)
    : domain_(domain), coeffs_(std::move(coeffs)) {
  if (!domain_.bounded() || !(domain_.width() > 0.0)) {
    throw UsageError("spline domain must be a bounded interval with lo < hi");
  }
  if (coeffs_.size() < 4) {
    throw UsageError("cubic spline needs at least 4 coefficients");
  }
}

UniformCubicSpline UniformCubicSpline::zeros(Interval domain, std::size_t interior_knots) {
  return {domain, std::vector<double>(interior_knots + 4, 0.0)};
}

UniformCubicSpline UniformCubicSpline::quasi_interpolate(Interval domain, std::size_t interior_knots,
                                                         const std::function<double(double)> &fn) {
  UniformCubicSpline s = zeros(domain, interior_knots);
  const double h = s.spacing();
  for (std::size_t k = 0; k < s.coeffs_.size(); ++k) {
    const double t = domain.lo + (static_cast<double>(k) - 1.0) * h;
    s.coeffs_[k] = (-fn(t - h) + 8.0 * fn(t) - fn(t + h)) / 6.0;
  }
  return s;
}

UniformCubicSpline::Basis UniformCubicSpline::basis(double t) const {
  const std::size_t n = intervals();
  const double h = spacing();
  const double pos = (t - domain_.lo) / h;
  const double cell = std::clamp(std::floor(pos), 0.0, static_cast<double>(n - 1));
  const double s = pos - cell;
  const double r = 1.0 - s;

  Basis b;
  b.first = static_cast<std::size_t>(cell);
  b.weights[0] = {r * r * r / 6.0, (3.0 * s * s * s - 6.0 * s * s + 4.0) / 6.0,
                  (-3.0 * s * s * s + 3.0 * s * s + 3.0 * s + 1.0) / 6.0, s * s * s / 6.0};
  const double ih = 1.0 / h;
  b.weights[1] = {-0.5 * r * r * ih, 0.5 * (3.0 * s * s - 4.0 * s) * ih, 0.5 * (-3.0 * s * s + 2.0 * s + 1.0) * ih,
                  0.5 * s * s * ih};
  const double ih2 = ih * ih;
  b.weights[2] = {r * ih2, (3.0 * s - 2.0) * ih2, (1.0 - 3.0 * s) * ih2, s * ih2};
  const double ih3 = ih2 * ih;
  b.weights[3] = {-ih3, 3.0 * ih3, -3.0 * ih3, ih3};
  return b;
}

Jet3 UniformCubicSpline::eval(double t) const {
  const Basis b = basis(t);
  std::array<double, 4> out{};
  for (int order = 0; order < 4; ++order) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += b.weights[order][i] * coeffs_[b.first + i];
    }
    out[order] = acc;
  }
  return {out[0], out[1], out[2], out[3]};
}

} // namespace htrans
