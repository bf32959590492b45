#pragma once

// Curvature sampling over a rectangular parameter grid. The serial and OpenMP
// versions produce identical output; the serial one is the reference.

#include <string>
#include <vector>

#include "htrans/surfaces.hpp"

namespace htrans {

enum class GridModel { hyperbolic, euclidean };

struct GridSpec {
  int nu = 100;
  int nv = 100;
  GridModel model = GridModel::hyperbolic;
};

/// One sample. Failed points keep u, v, carry the error text and NaN elsewhere.
struct GridPoint {
  double u = 0.0, v = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double He = 0.0, N3 = 0.0, H = 0.0;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct CurvatureGrid {
  int nu = 0, nv = 0;
  std::vector<GridPoint> points; // row-major in u

  int failures() const;
  double max_abs_H() const;  // over points with finite H
  double max_abs_He() const; // over successful points
};

/// Interior node i of n: lo + (i + 1) (hi - lo) / (n + 1). Endpoints are
/// excluded because reference surfaces degenerate on their boundary.
double interior_node(const Interval &range, int i, int n);

GridPoint evaluate_point(const Surface &s, double u, double v, GridModel model);

CurvatureGrid curvature_grid_serial(const Surface &s, const GridSpec &spec);
CurvatureGrid curvature_grid_parallel(const Surface &s, const GridSpec &spec);

} // namespace htrans
