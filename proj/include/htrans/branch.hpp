#pragma once

// Numeric companion to the type II elimination: follows the real root
// X = g'(z) of X^3 - a z X^2 - a z = 0 and measures how far the two
// remaining polynomial conditions are from vanishing together.

#include <vector>

#include "htrans/interval.hpp"

namespace htrans::search {

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 in increasing order, each
/// polished by Newton steps. Requires c3 != 0.
std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0);

struct BranchOptions {
  int nodes = 201;  // z samples, endpoints included
  double b_lo = -2.0;
  double b_hi = 2.0;
  double b_step = 0.1;
  double degenerate_tolerance = 1e-12; // relative, on the cubic discriminant
};

struct BranchSample {
  double z = 0.0;
  double X = 0.0;        // principal (largest) real root
  double g = 0.0;        // integral of X from range.lo
  double g2 = 0.0;       // a (1 + X^2) / (X (3X - 2az))
  int real_roots = 0;    // 1 or 3
  double discriminant = 0.0;
};

struct BSweepEntry {
  double b = 0.0;
  double measure = 0.0; // max over z of |q1| + |q2|
};

struct BranchReport {
  double a = 0.0;
  Interval range;
  std::vector<BranchSample> samples;
  std::vector<BSweepEntry> sweep;
  double min_measure = 0.0;
  double argmin_b = 0.0;
  // b = 0: X = 4az/5 in X^3 - a z X^2 - a z against -16/125 a^3 z^3 - a z
  double b0_control_error = 0.0;
  // implicit g'' against a central difference of the root function
  double max_g2_mismatch = 0.0;
  std::vector<double> degenerate_z; // samples with a vanishing discriminant
};

BranchReport trace_type2_branch(double a, Interval range, const BranchOptions &opts = {});

} // namespace htrans::search
