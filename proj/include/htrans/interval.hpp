#pragma once

#include <limits>

namespace htrans {

/// Parameter interval. Evaluation accepts the closed interval so that grids may
/// include the endpoints.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  constexpr bool contains(double t) const { return t >= lo && t <= hi; }
  constexpr double width() const { return hi - lo; }
  constexpr bool bounded() const {
    return lo > -std::numeric_limits<double>::infinity() && hi < std::numeric_limits<double>::infinity();
  }
  /// Uniform node i of n (n >= 2) including both endpoints.
  constexpr double node(int i, int n) const {
    return i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }

  friend constexpr bool operator==(const Interval &, const Interval &) = default;
};

struct Rect {
  Interval u;
  Interval v;

  constexpr bool contains(double a, double b) const { return u.contains(a) && v.contains(b); }
  friend constexpr bool operator==(const Rect &, const Rect &) = default;
};

} // namespace htrans
