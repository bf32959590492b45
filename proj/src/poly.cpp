#include "htrans/poly.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "htrans/error.hpp"

namespace htrans::algebra {

namespace {

constexpr std::array<const char *, kNumVars> kNames = {"a", "b", "z", "X", "Xp", "p", "p2", "p3", "q", "q2", "q3"};

Exponents add_exponents(const Exponents &x, const Exponents &y) {
  Exponents out{};
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const int e = x[i] + y[i];
    if (e > kMaxExponent) {
      throw std::overflow_error(std::string("exponent of ") + kNames[i] + " exceeds " +
                                std::to_string(kMaxExponent));
    }
    out[i] = static_cast<std::uint8_t>(e);
  }
  return out;
}

Rational power(const Rational &base, int n) {
  Rational out(1);
  for (int i = 0; i < n; ++i) {
    out *= base;
  }
  return out;
}

std::string rational_text(const Rational &c) {
  return c.get_den() == 1 ? c.get_num().get_str() : c.get_num().get_str() + "/" + c.get_den().get_str();
}

} // namespace

const char *name(Var v) { return kNames[static_cast<std::size_t>(v)]; }

MultiPoly::MultiPoly(const Rational &c) {
  if (c != 0) {
    Rational r = c;
    r.canonicalize();
    terms_.emplace(Exponents{}, std::move(r));
  }
}

MultiPoly MultiPoly::var(Var v, int power) {
  return monomial(Rational(1), {{v, power}});
}

MultiPoly MultiPoly::monomial(const Rational &c, std::initializer_list<std::pair<Var, int>> powers) {
  MultiPoly out;
  if (c == 0) {
    return out;
  }
  Exponents e{};
  for (const auto &[v, k] : powers) {
    const int total = e[static_cast<std::size_t>(v)] + k;
    if (k < 0 || total > kMaxExponent) {
      throw std::overflow_error(std::string("monomial exponent out of range for ") + name(v));
    }
    e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(total);
  }
  Rational r = c;
  r.canonicalize();
  out.terms_.emplace(e, std::move(r));
  return out;
}

void MultiPoly::add_term(const Exponents &e, const Rational &c) {
  if (c == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
    }
  }
}

int MultiPoly::degree(Var v) const {
  int d = 0;
  for (const auto &[e, c] : terms_) {
    d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(v)]));
  }
  return d;
}

std::pair<Exponents, Rational> MultiPoly::leading() const {
  if (terms_.empty()) {
    throw UsageError("leading term of the zero polynomial");
  }
  return *terms_.rbegin();
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &o) {
  for (const auto &[e, c] : o.terms_) {
    add_term(e, c);
  }
  return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &o) {
  for (const auto &[e, c] : o.terms_) {
    add_term(e, -c);
  }
  return *this;
}

MultiPoly &MultiPoly::operator*=(const MultiPoly &o) {
  MultiPoly out;
  for (const auto &[e1, c1] : terms_) {
    for (const auto &[e2, c2] : o.terms_) {
      out.add_term(add_exponents(e1, e2), c1 * c2);
    }
  }
  *this = std::move(out);
  return *this;
}

MultiPoly &MultiPoly::operator*=(const Rational &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, coeff] : terms_) {
    coeff *= c;
  }
  return *this;
}

MultiPoly MultiPoly::pow(int n) const {
  if (n < 0) {
    throw UsageError("negative polynomial power");
  }
  MultiPoly out(1);
  for (int i = 0; i < n; ++i) {
    out *= *this;
  }
  return out;
}

MultiPoly MultiPoly::derivative(Var v) const {
  const auto idx = static_cast<std::size_t>(v);
  MultiPoly out;
  for (const auto &[e, c] : terms_) {
    if (e[idx] == 0) {
      continue;
    }
    Exponents d = e;
    d[idx] -= 1;
    out.add_term(d, c * static_cast<long>(e[idx]));
  }
  return out;
}

MultiPoly MultiPoly::coefficient(Var v, int k) const {
  const auto idx = static_cast<std::size_t>(v);
  MultiPoly out;
  for (const auto &[e, c] : terms_) {
    if (e[idx] == k) {
      Exponents d = e;
      d[idx] = 0;
      out.add_term(d, c);
    }
  }
  return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly &s) const {
  const int deg = degree(v);
  MultiPoly out;
  // Horner in v
  for (int k = deg; k >= 0; --k) {
    out *= s;
    out += coefficient(v, k);
  }
  return out;
}

MultiPoly MultiPoly::substitute_rational(Var v, const MultiPoly &num, const MultiPoly &den) const {
  const int deg = degree(v);
  MultiPoly out;
  MultiPoly num_pow(1);
  for (int k = 0; k <= deg; ++k) {
    out += coefficient(v, k) * num_pow * den.pow(deg - k);
    num_pow *= num;
  }
  return out;
}

Rational MultiPoly::evaluate(const Assignment &at) const {
  Rational total(0);
  for (const auto &[e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) {
        continue;
      }
      const auto it = at.find(static_cast<Var>(i));
      if (it == at.end()) {
        term = 0;
        break;
      }
      term *= power(it->second, e[i]);
    }
    total += term;
  }
  return total;
}

double MultiPoly::evaluate_double(const std::map<Var, double> &at) const {
  double total = 0.0;
  for (const auto &[e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < kNumVars && term != 0.0; ++i) {
      if (e[i] == 0) {
        continue;
      }
      const auto it = at.find(static_cast<Var>(i));
      term = it == at.end() ? 0.0 : term * std::pow(it->second, e[i]);
    }
    total += term;
  }
  return total;
}

Rational MultiPoly::content() const {
  if (terms_.empty()) {
    return Rational(0);
  }
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto &[e, c] : terms_) {
    num_gcd = gcd(num_gcd, mpz_class(abs(c.get_num())));
    den_lcm = lcm(den_lcm, mpz_class(c.get_den()));
  }
  Rational out(num_gcd, den_lcm);
  out.canonicalize();
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[e, c] = *it;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      os << (negative ? "-" : "");
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] == 0) {
        continue;
      }
      mono << (any ? "*" : "") << kNames[i];
      if (e[i] > 1) {
        mono << "^" << static_cast<int>(e[i]);
      }
      any = true;
    }
    if (!any) {
      os << rational_text(mag);
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << rational_text(mag) << "*" << mono.str();
    }
  }
  return os.str();
}

std::optional<MultiPoly> divide_exact(const MultiPoly &p, const MultiPoly &d) {
  if (d.is_zero()) {
    throw DomainError("polynomial division by zero");
  }
  const auto [lead_e, lead_c] = d.leading();
  MultiPoly rest = p;
  MultiPoly quotient;
  // if d | p, every remainder is a multiple of d and its leading term is
  // divisible by lt(d) in the lexicographic order
  while (!rest.is_zero()) {
    const auto [e, c] = rest.leading();
    MultiPoly::Terms::key_type shift{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (e[i] < lead_e[i]) {
        return std::nullopt;
      }
      shift[i] = static_cast<std::uint8_t>(e[i] - lead_e[i]);
    }
    MultiPoly term = MultiPoly(Rational(c / lead_c));
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (shift[i] > 0) {
        term *= MultiPoly::var(static_cast<Var>(i), shift[i]);
      }
    }
    quotient += term;
    rest -= term * d;
  }
  return quotient;
}

std::optional<Rational> proportionality_factor(const MultiPoly &p, const MultiPoly &q) {
  if (p.is_zero() || q.is_zero() || p.size() != q.size()) {
    return std::nullopt;
  }
  const Rational factor = p.leading().second / q.leading().second;
  MultiPoly scaled = q;
  scaled *= factor;
  if (scaled == p) {
    return factor;
  }
  return std::nullopt;
}

MultiPoly derivation(const MultiPoly &p, const std::vector<std::pair<Var, MultiPoly>> &chain) {
  MultiPoly out;
  for (const auto &[v, image] : chain) {
    out += p.derivative(v) * image;
  }
  return out;
}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) {
    throw DomainError("rational function with zero denominator");
  }
  normalize();
}

void RationalFunction::normalize() {
  Rational scale = den_.content();
  if (den_.leading().second < 0) {
    scale = -scale;
  }
  const Rational inv = 1 / scale;
  den_ *= inv;
  num_ *= inv;
}

RationalFunction &RationalFunction::operator+=(const RationalFunction &o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFunction &RationalFunction::operator-=(const RationalFunction &o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

RationalFunction &RationalFunction::operator*=(const RationalFunction &o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RationalFunction &RationalFunction::operator/=(const RationalFunction &o) {
  if (o.num_.is_zero()) {
    throw DomainError("division by the zero rational function");
  }
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

RationalFunction RationalFunction::derivation(const std::vector<std::pair<Var, MultiPoly>> &chain) const {
  // (N/D)' = (N' D - N D') / D^2
  MultiPoly top = algebra::derivation(num_, chain) * den_ - num_ * algebra::derivation(den_, chain);
  return {std::move(top), den_ * den_};
}

RationalFunction &RationalFunction::cancel(const MultiPoly &factor) {
  if (factor.is_zero() || factor.leading().first == Exponents{}) {
    return *this; // constants are absorbed by normalize()
  }
  while (true) {
    auto n = divide_exact(num_, factor);
    auto d = divide_exact(den_, factor);
    if (!n || !d) {
      break;
    }
    num_ = std::move(*n);
    den_ = std::move(*d);
  }
  normalize();
  return *this;
}

MultiPoly RationalFunction::cross_difference(const RationalFunction &o) const {
  return num_ * o.den_ - o.num_ * den_;
}

std::optional<Rational> RationalFunction::evaluate(const Assignment &at) const {
  const Rational d = den_.evaluate(at);
  if (d == 0) {
    return std::nullopt;
  }
  return num_.evaluate(at) / d;
}

std::string RationalFunction::to_string() const {
  if (den_ == MultiPoly(1)) {
    return num_.to_string();
  }
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

} // namespace htrans::algebra
