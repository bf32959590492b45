#pragma once

// Order-3 truncated Taylor jets: forward-mode differentiation that carries a
// value together with its first three derivatives along one direction.

#include <array>
#include <cmath>
#include <ostream>

namespace htrans {

struct Jet3 {
  double v0 = 0.0; // value
  double v1 = 0.0; // d/dt
  double v2 = 0.0; // d^2/dt^2
  double v3 = 0.0; // d^3/dt^3

  constexpr Jet3() = default;
  constexpr Jet3(double value) : v0(value) {}
  constexpr Jet3(double d0, double d1, double d2, double d3) : v0(d0), v1(d1), v2(d2), v3(d3) {}

  /// The identity function seeded at t: (t, 1, 0, 0).
  static constexpr Jet3 variable(double t) { return {t, 1.0, 0.0, 0.0}; }
  static constexpr Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }

  constexpr double operator[](int order) const {
    return order == 0 ? v0 : order == 1 ? v1 : order == 2 ? v2 : v3;
  }

  bool finite() const {
    return std::isfinite(v0) && std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3);
  }

  friend constexpr bool operator==(const Jet3 &, const Jet3 &) = default;

  constexpr Jet3 &operator+=(const Jet3 &y) {
    v0 += y.v0;
    v1 += y.v1;
    v2 += y.v2;
    v3 += y.v3;
    return *this;
  }
  constexpr Jet3 &operator-=(const Jet3 &y) {
    v0 -= y.v0;
    v1 -= y.v1;
    v2 -= y.v2;
    v3 -= y.v3;
    return *this;
  }
  constexpr Jet3 &operator*=(const Jet3 &y) {
    // Leibniz through order 3
    const Jet3 x = *this;
    v0 = x.v0 * y.v0;
    v1 = x.v1 * y.v0 + x.v0 * y.v1;
    v2 = x.v2 * y.v0 + 2.0 * x.v1 * y.v1 + x.v0 * y.v2;
    v3 = x.v3 * y.v0 + 3.0 * x.v2 * y.v1 + 3.0 * x.v1 * y.v2 + x.v0 * y.v3;
    return *this;
  }
  Jet3 &operator/=(const Jet3 &y);
};

constexpr Jet3 operator-(const Jet3 &x) { return {-x.v0, -x.v1, -x.v2, -x.v3}; }
constexpr Jet3 operator+(Jet3 x, const Jet3 &y) { return x += y; }
constexpr Jet3 operator-(Jet3 x, const Jet3 &y) { return x -= y; }
constexpr Jet3 operator*(Jet3 x, const Jet3 &y) { return x *= y; }
inline Jet3 operator/(Jet3 x, const Jet3 &y) { return x /= y; }

// scalar overloads avoid building a full product for constants
constexpr Jet3 operator+(Jet3 x, double c) { x.v0 += c; return x; }
constexpr Jet3 operator+(double c, Jet3 x) { x.v0 += c; return x; }
constexpr Jet3 operator-(Jet3 x, double c) { x.v0 -= c; return x; }
constexpr Jet3 operator-(double c, const Jet3 &x) { return {c - x.v0, -x.v1, -x.v2, -x.v3}; }
constexpr Jet3 operator*(const Jet3 &x, double c) { return {x.v0 * c, x.v1 * c, x.v2 * c, x.v3 * c}; }
constexpr Jet3 operator*(double c, const Jet3 &x) { return x * c; }
inline Jet3 operator/(const Jet3 &x, double c) { return x / Jet3::constant(c); }
inline Jet3 operator/(double c, const Jet3 &x) { return Jet3::constant(c) / x; }

std::ostream &operator<<(std::ostream &os, const Jet3 &x);

enum class BinaryOp { add, sub, mul, div };
enum class Elementary { sin, cos, tan, log, exp, sqrt, abs_log_cos, pow_int };

/// Combines two jets; division by a jet with zero value throws DomainError.
Jet3 jet_arith(const Jet3 &x, const Jet3 &y, BinaryOp op);

/// Composes an elementary function with x. `exponent` is only read for pow_int.
Jet3 jet_elementary(const Jet3 &x, Elementary fn, int exponent = 0);

/// phi(x) for a scalar function phi given its derivatives (d0..d3) at x.v0
/// (Faa di Bruno through order 3).
constexpr Jet3 compose(const Jet3 &x, const std::array<double, 4> &d) {
  const double x1 = x.v1, x2 = x.v2, x3 = x.v3;
  return {d[0], d[1] * x1, d[2] * x1 * x1 + d[1] * x2,
          d[3] * x1 * x1 * x1 + 3.0 * d[2] * x1 * x2 + d[1] * x3};
}

Jet3 sin(const Jet3 &x);
Jet3 cos(const Jet3 &x);
Jet3 tan(const Jet3 &x);
Jet3 log(const Jet3 &x);
Jet3 exp(const Jet3 &x);
Jet3 sqrt(const Jet3 &x);
/// log|cos(x)|, fused so the sign of cos never reaches log.
Jet3 abs_log_cos(const Jet3 &x);
Jet3 pow(const Jet3 &x, int n);

/// The jet of t -> x'(t), obtained by shifting slots down. The top slot of the
/// result is unknown and set to zero, so only orders 0..2 are meaningful.
constexpr Jet3 shift_derivative(const Jet3 &x) { return {x.v1, x.v2, x.v3, 0.0}; }

/// Jet of t -> x(c + s t) given the jet of x at c; scales derivative slots by s^k.
constexpr Jet3 along(const Jet3 &x, double s) { return {x.v0, s * x.v1, s * s * x.v2, s * s * s * x.v3}; }

} // namespace htrans
