#include "htrans/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "htrans/error.hpp"

namespace htrans {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// cos(t) is only known to about eps |t| because t itself is rounded; below
// that it cannot be told apart from a zero of cos.
bool cos_vanishes(double t) {
  return !std::isfinite(t) ||
         std::abs(std::cos(t)) <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
}

} // namespace

Jet3 &Jet3::operator/=(const Jet3 &y) {
  if (y.v0 == 0.0) {
    throw DomainError("jet division: divisor has zero value (operand v0 = 0, v1 = " + describe(y.v1) + ")");
  }
  const double u = y.v0;
  const double inv = 1.0 / u;
  // reciprocal: 1/u, -1/u^2, 2/u^3, -6/u^4
  const Jet3 r = compose(y, {inv, -inv * inv, 2.0 * inv * inv * inv, -6.0 * inv * inv * inv * inv});
  return *this *= r;
}

std::ostream &operator<<(std::ostream &os, const Jet3 &x) {
  return os << "(" << x.v0 << ", " << x.v1 << ", " << x.v2 << ", " << x.v3 << ")";
}

Jet3 jet_arith(const Jet3 &x, const Jet3 &y, BinaryOp op) {
  switch (op) {
  case BinaryOp::add:
    return x + y;
  case BinaryOp::sub:
    return x - y;
  case BinaryOp::mul:
    return x * y;
  case BinaryOp::div:
    return x / y;
  }
  throw UsageError("jet_arith: unknown operation");
}

Jet3 sin(const Jet3 &x) {
  const double s = std::sin(x.v0), c = std::cos(x.v0);
  return compose(x, {s, c, -s, -c});
}

Jet3 cos(const Jet3 &x) {
  const double s = std::sin(x.v0), c = std::cos(x.v0);
  return compose(x, {c, -s, -c, s});
}

Jet3 tan(const Jet3 &x) {
  if (cos_vanishes(x.v0)) {
    throw DomainError("tan: cos vanishes at " + describe(x.v0));
  }
  const double t = std::tan(x.v0);
  const double sec2 = 1.0 + t * t;
  return compose(x, {t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (sec2 + 2.0 * t * t)});
}

Jet3 log(const Jet3 &x) {
  if (!(x.v0 > 0.0)) {
    throw DomainError("log: argument must be positive, got " + describe(x.v0));
  }
  const double inv = 1.0 / x.v0;
  return compose(x, {std::log(x.v0), inv, -inv * inv, 2.0 * inv * inv * inv});
}

Jet3 exp(const Jet3 &x) {
  const double e = std::exp(x.v0);
  return compose(x, {e, e, e, e});
}

Jet3 sqrt(const Jet3 &x) {
  if (!(x.v0 > 0.0)) {
    throw DomainError("sqrt: argument must be positive for a differentiable jet, got " + describe(x.v0));
  }
  const double r = std::sqrt(x.v0);
  const double inv = 1.0 / x.v0;
  return compose(x, {r, 0.5 / r, -0.25 / r * inv, 0.375 / r * inv * inv});
}

Jet3 abs_log_cos(const Jet3 &x) {
  const double c = std::cos(x.v0);
  if (cos_vanishes(x.v0)) {
    throw DomainError("abs_log_cos: cos vanishes at " + describe(x.v0));
  }
  const double t = std::tan(x.v0);
  const double sec2 = 1.0 + t * t;
  return compose(x, {std::log(std::abs(c)), -t, -sec2, -2.0 * sec2 * t});
}

Jet3 pow(const Jet3 &x, int n) {
  if (n == 0) {
    return Jet3::constant(1.0);
  }
  const double u = x.v0;
  if (n < 0 && u == 0.0) {
    throw DomainError("pow_int: zero base with negative exponent " + std::to_string(n));
  }
  const double dn = n;
  const double d0 = std::pow(u, n);
  // evaluate lower powers directly so u = 0 stays exact for small positive n
  const double d1 = dn * std::pow(u, n - 1);
  const double d2 = dn * (dn - 1.0) * std::pow(u, n - 2);
  const double d3 = dn * (dn - 1.0) * (dn - 2.0) * std::pow(u, n - 3);
  return compose(x, {d0, d1, n >= 2 || n < 0 ? d2 : 0.0, n >= 3 || n < 0 ? d3 : 0.0});
}

Jet3 jet_elementary(const Jet3 &x, Elementary fn, int exponent) {
  switch (fn) {
  case Elementary::sin:
    return sin(x);
  case Elementary::cos:
    return cos(x);
  case Elementary::tan:
    return tan(x);
  case Elementary::log:
    return log(x);
  case Elementary::exp:
    return exp(x);
  case Elementary::sqrt:
    return sqrt(x);
  case Elementary::abs_log_cos:
    return abs_log_cos(x);
  case Elementary::pow_int:
    return pow(x, exponent);
  }
  throw UsageError("jet_elementary: unknown function");
}

} // namespace htrans
