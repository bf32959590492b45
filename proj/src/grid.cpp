#include "htrans/grid.hpp"

#include <cmath>
#include <limits>

#include "htrans/error.hpp"
#include "htrans/kernel.hpp"

namespace htrans {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_spec(const Surface &s, const GridSpec &spec) {
  if (spec.nu < 1 || spec.nv < 1) {
    throw UsageError("curvature grid: sizes must be positive");
  }
  const Rect &d = domain_of(s);
  if (!d.u.bounded() || !d.v.bounded()) {
    throw UsageError("curvature grid: surface domain must be bounded");
  }
}

} // namespace

int CurvatureGrid::failures() const {
  int n = 0;
  for (const GridPoint &p : points) {
    n += p.ok() ? 0 : 1;
  }
  return n;
}

double CurvatureGrid::max_abs_H() const {
  double m = 0.0;
  for (const GridPoint &p : points) {
    if (p.ok() && std::isfinite(p.H)) {
      m = std::max(m, std::abs(p.H));
    }
  }
  return m;
}

double CurvatureGrid::max_abs_He() const {
  double m = 0.0;
  for (const GridPoint &p : points) {
    if (p.ok()) {
      m = std::max(m, std::abs(p.He));
    }
  }
  return m;
}

double interior_node(const Interval &range, int i, int n) {
  return range.lo + (i + 1) * (range.hi - range.lo) / (n + 1);
}

GridPoint evaluate_point(const Surface &s, double u, double v, GridModel model) {
  GridPoint p;
  p.u = u;
  p.v = v;
  try {
    const bool hyperbolic = model == GridModel::hyperbolic;
    const ImmersionJet jet = hyperbolic ? patch_jet(s, u, v) : euclidean_patch_jet(s, u, v);
    const CurvatureReport r = hyperbolic ? hyperbolic_curvature(jet) : euclidean_curvature(jet);
    p.x = jet.X.x();
    p.y = jet.X.y();
    p.z = jet.X.z();
    p.He = r.He;
    p.N3 = r.N3;
    p.H = r.H;
  } catch (const std::exception &e) {
    p.x = p.y = p.z = p.He = p.N3 = p.H = kNaN;
    p.error = e.what();
  }
  return p;
}

CurvatureGrid curvature_grid_serial(const Surface &s, const GridSpec &spec) {
  check_spec(s, spec);
  const Rect &d = domain_of(s);
  CurvatureGrid grid{spec.nu, spec.nv, std::vector<GridPoint>(static_cast<std::size_t>(spec.nu) * spec.nv)};
  for (int i = 0; i < spec.nu; ++i) {
    for (int j = 0; j < spec.nv; ++j) {
      grid.points[static_cast<std::size_t>(i) * spec.nv + j] =
          evaluate_point(s, interior_node(d.u, i, spec.nu), interior_node(d.v, j, spec.nv), spec.model);
    }
  }
  return grid;
}

CurvatureGrid curvature_grid_parallel(const Surface &s, const GridSpec &spec) {
  check_spec(s, spec);
  const Rect &d = domain_of(s);
  CurvatureGrid grid{spec.nu, spec.nv, std::vector<GridPoint>(static_cast<std::size_t>(spec.nu) * spec.nv)};
  const long total = static_cast<long>(spec.nu) * spec.nv;
#pragma omp parallel for schedule(static)
  for (long k = 0; k < total; ++k) {
    const int i = static_cast<int>(k / spec.nv);
    const int j = static_cast<int>(k % spec.nv);
    grid.points[static_cast<std::size_t>(k)] =
        evaluate_point(s, interior_node(d.u, i, spec.nu), interior_node(d.v, j, spec.nv), spec.model);
  }
  return grid;
}

} // namespace htrans
