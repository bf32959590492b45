#pragma once

// Random composite expressions, evaluated generically so the same program
// runs on jets and on long doubles for the finite-difference reference. Every
// step keeps its output bounded so that the frequency content stays within
// reach of a stencil with step 1e-4.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "htrans/jet.hpp"

namespace htrans::testing {

struct JetProgram {
  std::vector<int> ops;
  std::vector<double> consts;
};

inline long double abs_log_cos_any(long double t) { return std::log(std::abs(std::cos(t))); }
inline Jet3 abs_log_cos_any(const Jet3 &t) { return htrans::abs_log_cos(t); }

template <typename T>
T run_program(const JetProgram &p, const T &t) {
  using std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan;
  using htrans::cos, htrans::exp, htrans::log, htrans::sin, htrans::sqrt, htrans::tan;
  T acc = t;
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const double c = p.consts[i];
    switch (p.ops[i]) {
    case 0: acc = sin(acc) + c * t; break;
    case 1: acc = cos(c * acc) * t; break;
    case 2: acc = tan(0.4 * sin(acc)) + c; break;
    case 3: acc = log(1.0 + acc * acc) - c * t; break;
    case 4: acc = exp(0.5 * sin(acc)) * c; break;
    case 5: acc = sqrt(2.0 + cos(acc)) * t; break;
    case 6: acc = abs_log_cos_any(0.5 * sin(acc) + c * 0.3); break;
    case 7: {
      using htrans::pow;
      using std::pow;
      acc = pow(0.5 * sin(acc) + 1.5 + 0.5 * sin(t), 3) / (3.0 + c * c);
      break;
    }
    case 8: acc = acc / (2.0 + cos(acc + c)); break;
    default: acc = acc * cos(acc) - c * t; break;
    }
  }
  return acc;
}

/// Two to six steps with constants in [-1, 1].
inline JetProgram random_program(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> op(0, 9);
  std::uniform_int_distribution<int> len(2, 6);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  JetProgram p;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) {
    p.ops.push_back(op(rng));
    p.consts.push_back(unit(rng));
  }
  return p;
}

/// Value and first three derivatives at t from fourth-order central stencils
/// with step h, evaluated in long double.
inline std::array<double, 4> central_differences(const JetProgram &p, double t, long double h = 1e-4L) {
  const long double lt = t;
  long double f[7];
  for (int k = -3; k <= 3; ++k) {
    f[k + 3] = run_program(p, lt + k * h);
  }
  const long double d1 = (-f[5] + 8 * f[4] - 8 * f[2] + f[1]) / (12 * h);
  const long double d2 = (-f[5] + 16 * f[4] - 30 * f[3] + 16 * f[2] - f[1]) / (12 * h * h);
  const long double d3 = (-f[6] + 8 * f[5] - 13 * f[4] + 13 * f[2] - 8 * f[1] + f[0]) / (8 * h * h * h);
  return {static_cast<double>(f[3]), static_cast<double>(d1), static_cast<double>(d2), static_cast<double>(d3)};
}

/// |jet[k] - fd[k]| / max(1, |fd[k]|) for each slot.
inline std::array<double, 4> relative_errors(const Jet3 &jet, const std::array<double, 4> &fd) {
  std::array<double, 4> err{};
  for (int k = 0; k < 4; ++k) {
    err[static_cast<std::size_t>(k)] = std::abs(jet[k] - fd[static_cast<std::size_t>(k)]) /
                                       std::max(1.0, std::abs(fd[static_cast<std::size_t>(k)]));
  }
  return err;
}

} // namespace htrans::testing
