#include "htrans/curve.hpp"

#include <sstream>

#include "htrans/error.hpp"

namespace htrans {

namespace {

std::string join(std::initializer_list<double> values) {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (double v : values) {
    os << (first ? "" : " ") << v;
    first = false;
  }
  return os.str();
}

} // namespace

FunctionCurve::FunctionCurve(Evaluator eval, Interval domain, std::string description)
    : eval_(std::move(eval)), domain_(domain), description_(std::move(description)) {
  if (!(domain_.lo < domain_.hi)) {
    throw UsageError("curve domain must satisfy lo < hi");
  }
}

Jet3 FunctionCurve::operator()(double t) const {
  if (!domain_.contains(t)) {
    std::ostringstream os;
    os << description_ << ": parameter " << t << " outside [" << domain_.lo << ", " << domain_.hi << "]";
    throw DomainError(os.str());
  }
  const Jet3 out = eval_(t);
  if (!out.finite()) {
    std::ostringstream os;
    os << description_ << ": non-finite jet at " << t;
    throw DomainError(os.str());
  }
  return out;
}

FunctionCurve FunctionCurve::restricted(Interval domain) const {
  return {eval_, domain, description_};
}

FunctionCurve FunctionCurve::constant(double c, Interval domain) {
  return {[c](double) { return Jet3::constant(c); }, domain, "constant " + join({c})};
}

FunctionCurve FunctionCurve::linear(double m, double n, Interval domain) {
  return {[m, n](double t) { return Jet3{m * t + n, m, 0.0, 0.0}; }, domain, "linear " + join({m, n})};
}

FunctionCurve FunctionCurve::quadratic(double c2, double c1, double c0, Interval domain) {
  return {[=](double t) { return Jet3{(c2 * t + c1) * t + c0, 2.0 * c2 * t + c1, 2.0 * c2, 0.0}; }, domain,
          "quadratic " + join({c2, c1, c0})};
}

FunctionCurve FunctionCurve::polynomial(std::vector<double> coeffs, Interval domain) {
  std::ostringstream os;
  os.precision(17);
  os << "polynomial";
  for (double c : coeffs) {
    os << " " << c;
  }
  return {[coeffs = std::move(coeffs)](double t) {
            // Horner on the jet of the identity
            Jet3 acc;
            const Jet3 x = Jet3::variable(t);
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
              acc = acc * x + *it;
            }
            return acc;
          },
          domain, os.str()};
}

FunctionCurve FunctionCurve::log_cos(double a, double scale, Interval domain) {
  return {[a, scale](double t) { return scale * abs_log_cos(a * Jet3::variable(t)); }, domain,
          "scherk-log-cos " + join({a, scale})};
}

FunctionCurve FunctionCurve::spline(UniformCubicSpline s) {
  const Interval domain = s.domain();
  const std::string description = "spline with " + std::to_string(s.coeffs().size()) + " coefficients";
  return {[s = std::move(s)](double t) { return s.eval(t); }, domain, description};
}

FunctionCurve FunctionCurve::expression(std::function<Jet3(const Jet3 &)> expr, Interval domain,
                                        std::string description) {
  return {[expr = std::move(expr)](double t) { return expr(Jet3::variable(t)); }, domain, std::move(description)};
}

} // namespace htrans
