#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "htrans/interval.hpp"
#include "htrans/jet.hpp"

namespace htrans {

/// Cubic B-spline on a uniform knot grid over `domain`: `intervals` spans,
/// intervals + 3 coefficients. Coefficient k is centred on t0 + (k - 1) h.
class UniformCubicSpline {
public:
  /// Nonzero basis values (or derivatives) at one parameter.
  struct Basis {
    std::size_t first = 0;             // index of the first active coefficient
    std::array<std::array<double, 4>, 4> weights{}; // weights[order][i]
  };

  UniformCubicSpline() = default;
  UniformCubicSpline(Interval domain, std::vector<double> coeffs);

  /// Zero spline with `interior_knots` interior knots.
  static UniformCubicSpline zeros(Interval domain, std::size_t interior_knots);

  /// Quasi-interpolant that reproduces cubic polynomials exactly; `fn` is
  /// sampled one knot spacing beyond each end of the domain.
  static UniformCubicSpline quasi_interpolate(Interval domain, std::size_t interior_knots,
                                              const std::function<double(double)> &fn);

  const Interval &domain() const { return domain_; }
  std::size_t intervals() const { return coeffs_.size() - 3; }
  double spacing() const { return domain_.width() / static_cast<double>(intervals()); }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  /// Basis at t; values outside the domain extrapolate the end spans.
  Basis basis(double t) const;

  /// Value and three derivatives at t (the third is piecewise constant).
  Jet3 eval(double t) const;

private:
  Interval domain_{0.0, 1.0};
  std::vector<double> coeffs_;
};

} // namespace htrans
