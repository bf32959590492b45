#pragma once

// Curvature of parametric patches in the upper half-space z > 0, under the
// Euclidean metric and under the hyperbolic metric (dx^2 + dy^2 + dz^2) / z^2.
//
// The two are related conformally: each hyperbolic principal curvature is
// z * (Euclidean principal curvature) + N3, where N3 is the z-component of the
// Euclidean unit normal. The normal is always (Xu x Xv) / |Xu x Xv|; callers
// choose the parameter order to fix the orientation.

#include <array>

#include <Eigen/Core>

namespace htrans {

using Vec3 = Eigen::Vector3d;

/// Below this |Xu x Xv| a patch is treated as collapsed.
inline constexpr double kDegenerateCrossNorm = 1e-12;

/// Position and first/second partials of a patch X(u, v) at one parameter point.
struct ImmersionJet {
  Vec3 X = Vec3::Zero();
  Vec3 Xu = Vec3::Zero();
  Vec3 Xv = Vec3::Zero();
  Vec3 Xuu = Vec3::Zero();
  Vec3 Xuv = Vec3::Zero();
  Vec3 Xvv = Vec3::Zero();
};

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0; // first form
  double L = 0.0, M = 0.0, N = 0.0; // second form, against the unit normal
  Vec3 normal = Vec3::Zero();       // Euclidean unit normal used for L, M, N

  double det_first() const { return E * G - F * F; }
};

struct CurvatureReport {
  FundamentalForms forms;
  double z = 0.0;   // height of the evaluated point
  double He = 0.0;  // Euclidean mean curvature
  double N3 = 0.0;  // third component of the Euclidean unit normal
  double H = 0.0;   // hyperbolic mean curvature, z * He + N3
  std::array<double, 2> kappaE{}; // Euclidean principal curvatures, descending
  std::array<double, 2> kappaH{}; // hyperbolic principal curvatures, descending
};

/// Throws DegenerateImmersion if |Xu x Xv| <= kDegenerateCrossNorm.
FundamentalForms fundamental_forms(const ImmersionJet &jet);

/// (G L - 2 M F + E N) / (2 (E G - F^2)). Throws DegenerateImmersion if E G - F^2 <= 0.
double euclidean_mean_curvature(const FundamentalForms &forms);

/// Eigenvalues of the Euclidean shape operator, larger first. At umbilic points
/// the double eigenvalue is returned twice.
std::array<double, 2> euclidean_principal_curvatures(const FundamentalForms &forms);

/// Full hyperbolic report. Requires X.z > 0 (DomainError otherwise).
CurvatureReport hyperbolic_curvature(const ImmersionJet &jet);

/// Euclidean-only report; no half-space requirement. The hyperbolic fields are
/// filled only when X.z > 0, and are NaN otherwise.
CurvatureReport euclidean_curvature(const ImmersionJet &jet);

/// Image of a patch under the dilation p -> lambda p (a hyperbolic isometry).
ImmersionJet dilate(const ImmersionJet &jet, double lambda);

} // namespace htrans
