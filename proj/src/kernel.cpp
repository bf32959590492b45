#include "htrans/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>

#include "htrans/error.hpp"

namespace htrans {

FundamentalForms fundamental_forms(const ImmersionJet &jet) {
  const Vec3 cross = jet.Xu.cross(jet.Xv);
  const double norm = cross.norm();
  if (!(norm > kDegenerateCrossNorm)) {
    throw DegenerateImmersion("degenerate immersion: |Xu x Xv| = " + std::to_string(norm));
  }
  FundamentalForms forms;
  forms.normal = cross / norm;
  forms.E = jet.Xu.dot(jet.Xu);
  forms.F = jet.Xu.dot(jet.Xv);
  forms.G = jet.Xv.dot(jet.Xv);
  forms.L = jet.Xuu.dot(forms.normal);
  forms.M = jet.Xuv.dot(forms.normal);
  forms.N = jet.Xvv.dot(forms.normal);
  return forms;
}

double euclidean_mean_curvature(const FundamentalForms &forms) {
  const double det = forms.det_first();
  if (!(det > 0.0)) {
    throw DegenerateImmersion("first fundamental form is not positive definite");
  }
  return (forms.G * forms.L - 2.0 * forms.M * forms.F + forms.E * forms.N) / (2.0 * det);
}

std::array<double, 2> euclidean_principal_curvatures(const FundamentalForms &forms) {
  const double mean = euclidean_mean_curvature(forms);
  const double gauss = (forms.L * forms.N - forms.M * forms.M) / forms.det_first();
  // roots of k^2 - 2 H k + K; the discriminant is a sum of squares in exact
  // arithmetic, so negative values are rounding at umbilics
  const double disc = std::max(0.0, mean * mean - gauss);
  const double root = std::sqrt(disc);
  return {mean + root, mean - root};
}

namespace {

CurvatureReport assemble(const ImmersionJet &jet, bool hyperbolic) {
  CurvatureReport report;
  report.forms = fundamental_forms(jet);
  report.z = jet.X.z();
  report.He = euclidean_mean_curvature(report.forms);
  report.N3 = report.forms.normal.z();
  report.kappaE = euclidean_principal_curvatures(report.forms);
  if (hyperbolic) {
    const double z = report.z;
    report.H = z * report.He + report.N3;
    report.kappaH = {z * report.kappaE[0] + report.N3, z * report.kappaE[1] + report.N3};
  } else {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report.H = nan;
    report.kappaH = {nan, nan};
  }
  return report;
}

} // namespace

CurvatureReport hyperbolic_curvature(const ImmersionJet &jet) {
  if (!(jet.X.z() > 0.0)) {
    throw DomainError("point outside the half-space model: z = " + std::to_string(jet.X.z()));
  }
  return assemble(jet, true);
}

CurvatureReport euclidean_curvature(const ImmersionJet &jet) {
  return assemble(jet, jet.X.z() > 0.0);
}

ImmersionJet dilate(const ImmersionJet &jet, double lambda) {
  ImmersionJet out = jet;
  out.X *= lambda;
  out.Xu *= lambda;
  out.Xv *= lambda;
  out.Xuu *= lambda;
  out.Xuv *= lambda;
  out.Xvv *= lambda;
  return out;
}

} // namespace htrans
