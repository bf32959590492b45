#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "htrans/interval.hpp"
#include "htrans/jet.hpp"
#include "htrans/spline.hpp"

namespace htrans {

/// A smooth single-variable function with its first three derivatives,
/// defined on an interval.
class FunctionCurve {
public:
  using Evaluator = std::function<Jet3(double)>;

  FunctionCurve(Evaluator eval, Interval domain, std::string description);

  /// Jet at t. Throws DomainError outside the domain or on a non-finite result.
  Jet3 operator()(double t) const;

  const Interval &domain() const { return domain_; }
  const std::string &description() const { return description_; }

  /// Curve restricted to a smaller interval.
  FunctionCurve restricted(Interval domain) const;

  static FunctionCurve constant(double c, Interval domain = {});
  /// m t + n
  static FunctionCurve linear(double m, double n, Interval domain = {});
  /// c2 t^2 + c1 t + c0
  static FunctionCurve quadratic(double c2, double c1, double c0, Interval domain = {});
  /// sum_k coeffs[k] t^k
  static FunctionCurve polynomial(std::vector<double> coeffs, Interval domain = {});
  /// scale * log|cos(a t)|
  static FunctionCurve log_cos(double a, double scale, Interval domain = {});
  static FunctionCurve spline(UniformCubicSpline spline);
  /// Any expression built from jet operations, seeded with the identity jet.
  static FunctionCurve expression(std::function<Jet3(const Jet3 &)> expr, Interval domain, std::string description);

private:
  Evaluator eval_;
  Interval domain_;
  std::string description_;
};

} // namespace htrans
