#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include "htrans/identities.hpp"

namespace htrans::testing {

struct RootCheck {
  int roots = 0;      // real nonzero roots examined
  double max_q1 = 0.0;
  double max_q2 = 0.0;
};

/// Numeric oracle for the elimination: for (a, b), every real nonzero root z of
/// `eliminated` (a polynomial in z) must make q1 and q2 vanish at (z, X(z)).
inline RootCheck check_elimination_roots(const algebra::MultiPoly &eliminated, const algebra::RationalFunction &x,
                                         double a, double b) {
  using algebra::Var;
  const std::map<Var, double> ab{{Var::a, a}, {Var::b, b}};
  const int degree = eliminated.degree(Var::z);
  Eigen::VectorXd coeffs(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    coeffs[k] = eliminated.coefficient(Var::z, k).evaluate_double(ab);
  }
  // strip the trailing zero roots so the solver sees a well-scaled polynomial
  int low = 0;
  while (low < degree && coeffs[low] == 0.0) {
    ++low;
  }
  const Eigen::VectorXd trimmed = coeffs.segment(low, degree + 1 - low);
  RootCheck out;
  if (trimmed.size() < 2) {
    return out;
  }
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(trimmed);
  const auto q1 = algebra::build_named(algebra::NamedPoly::q1);
  const auto q2 = algebra::build_named(algebra::NamedPoly::q2);
  for (const std::complex<double> &r : solver.roots()) {
    if (std::abs(r.imag()) > 1e-8 * std::max(1.0, std::abs(r.real())) || std::abs(r.real()) < 1e-9) {
      continue;
    }
    double z = r.real();
    for (int it = 0; it < 5; ++it) { // Newton polish on the untrimmed polynomial
      double p = 0.0, dp = 0.0;
      for (int k = degree; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + coeffs[k];
      }
      if (dp == 0.0) {
        break;
      }
      z -= p / dp;
    }
    std::map<Var, double> at = ab;
    at[Var::z] = z;
    const double X = x.num().evaluate_double(at) / x.den().evaluate_double(at);
    at[Var::X] = X;
    out.max_q1 = std::max(out.max_q1, std::abs(q1.evaluate_double(at)));
    out.max_q2 = std::max(out.max_q2, std::abs(q2.evaluate_double(at)));
    ++out.roots;
  }
  return out;
}

} // namespace htrans::testing
