#pragma once

// Exact multivariate polynomials with big-rational coefficients.
//
// The ring has a fixed set of formal symbols: the constants a, b, the height z
// and X = g'(z) of the type II elimination, plus auxiliary symbols for the
// calculus identities: Xp = X' (= g''), p/p2/p3 = f'/f''/f''' and
// q/q2/q3 = g'/g''/g'''.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace htrans::algebra {

enum class Var : std::uint8_t { a, b, z, X, Xp, p, p2, p3, q, q2, q3 };

inline constexpr std::size_t kNumVars = 11;
/// Per-variable exponent bound; exceeding it throws std::overflow_error.
inline constexpr int kMaxExponent = 16;

const char *name(Var v);

using Rational = mpq_class;
using Exponents = std::array<std::uint8_t, kNumVars>;

/// Values for a point evaluation; unspecified variables evaluate as zero.
using Assignment = std::map<Var, Rational>;

class MultiPoly {
public:
  using Terms = std::map<Exponents, Rational>;

  MultiPoly() = default;
  MultiPoly(const Rational &c);
  MultiPoly(long c) : MultiPoly(Rational(c)) {}

  static MultiPoly var(Var v, int power = 1);
  static MultiPoly monomial(const Rational &c, std::initializer_list<std::pair<Var, int>> powers);

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Highest power of v present.
  int degree(Var v) const;
  /// Leading term in lexicographic order with a as the most significant variable.
  std::pair<Exponents, Rational> leading() const;

  MultiPoly &operator+=(const MultiPoly &o);
  MultiPoly &operator-=(const MultiPoly &o);
  MultiPoly &operator*=(const MultiPoly &o);
  MultiPoly &operator*=(const Rational &c);

  friend MultiPoly operator+(MultiPoly x, const MultiPoly &y) { return x += y; }
  friend MultiPoly operator-(MultiPoly x, const MultiPoly &y) { return x -= y; }
  friend MultiPoly operator*(MultiPoly x, const MultiPoly &y) { return x *= y; }
  friend MultiPoly operator-(MultiPoly x) { return x *= Rational(-1); }
  friend bool operator==(const MultiPoly &, const MultiPoly &) = default;

  MultiPoly pow(int n) const;

  /// Partial derivative with respect to v.
  MultiPoly derivative(Var v) const;

  /// Coefficient of v^k, as a polynomial in the remaining variables.
  MultiPoly coefficient(Var v, int k) const;

  /// Replaces v by the polynomial s.
  MultiPoly substitute(Var v, const MultiPoly &s) const;

  /// Replaces v by num/den and clears denominators: returns
  /// den^d * P(num/den), d = degree(v).
  MultiPoly substitute_rational(Var v, const MultiPoly &num, const MultiPoly &den) const;

  Rational evaluate(const Assignment &at) const;
  double evaluate_double(const std::map<Var, double> &at) const;

  /// Positive rational c such that this = c * (primitive integer polynomial).
  Rational content() const;

  /// Canonical text, terms in descending lexicographic order, e.g.
  /// "4*a^2*b^3*z^7 - 125*a*b^2*z^3".
  std::string to_string() const;

private:
  void add_term(const Exponents &e, const Rational &c);

  Terms terms_;
};

/// Quotient p / d when d divides p exactly, nullopt otherwise.
std::optional<MultiPoly> divide_exact(const MultiPoly &p, const MultiPoly &d);

/// If p = factor * q for a nonzero rational factor, returns factor.
std::optional<Rational> proportionality_factor(const MultiPoly &p, const MultiPoly &q);

/// Quotient of polynomials, normalized so that the denominator is primitive
/// with a positive leading coefficient (content moves to the numerator).
class RationalFunction {
public:
  RationalFunction(MultiPoly num, MultiPoly den = MultiPoly(1));

  const MultiPoly &num() const { return num_; }
  const MultiPoly &den() const { return den_; }

  RationalFunction &operator+=(const RationalFunction &o);
  RationalFunction &operator-=(const RationalFunction &o);
  RationalFunction &operator*=(const RationalFunction &o);
  RationalFunction &operator/=(const RationalFunction &o);

  friend RationalFunction operator+(RationalFunction x, const RationalFunction &y) { return x += y; }
  friend RationalFunction operator-(RationalFunction x, const RationalFunction &y) { return x -= y; }
  friend RationalFunction operator*(RationalFunction x, const RationalFunction &y) { return x *= y; }
  friend RationalFunction operator/(RationalFunction x, const RationalFunction &y) { return x /= y; }

  /// Derivation D = sum_i chain[i].second * d/d(chain[i].first); used for
  /// total derivatives such as d/dx = p2 d/dp + p3 d/dp2.
  RationalFunction derivation(const std::vector<std::pair<Var, MultiPoly>> &chain) const;

  /// Divides numerator and denominator by `factor` as often as both allow.
  RationalFunction &cancel(const MultiPoly &factor);

  /// Cross-multiplied difference num*o.den - o.num*den; zero iff equal.
  MultiPoly cross_difference(const RationalFunction &o) const;

  /// Returns nullopt when the denominator vanishes at the point.
  std::optional<Rational> evaluate(const Assignment &at) const;

  std::string to_string() const;

private:
  void normalize();

  MultiPoly num_;
  MultiPoly den_;
};

/// Derivation applied to a polynomial.
MultiPoly derivation(const MultiPoly &p, const std::vector<std::pair<Var, MultiPoly>> &chain);

} // namespace htrans::algebra
