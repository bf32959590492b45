#pragma once

// Translation surfaces in the half-space model and the reference surfaces used
// as curvature oracles.
//
//   type I:  X(x, y) = (x, y, f(x) + g(y))   graph over a horosphere
//   type II: X(x, z) = (x, f(x) + g(z), z)   graph over a vertical plane
//
// With the normal (Xu x Xv)/|Xu x Xv| these give N3 = 1/W (type I) and
// N3 = g'/W (type II), W = sqrt(1 + f'^2 + g'^2).

#include <string>
#include <variant>

#include "htrans/curve.hpp"
#include "htrans/interval.hpp"
#include "htrans/kernel.hpp"

namespace htrans {

enum class TranslationKind { TypeI, TypeII };

std::string to_string(TranslationKind kind);

struct TranslationSurface {
  TranslationKind kind = TranslationKind::TypeI;
  FunctionCurve f;
  FunctionCurve g;
  Rect domain; // (x, y) for type I, (x, z) for type II

  TranslationSurface(TranslationKind kind, FunctionCurve f, FunctionCurve g, Rect domain);
};

/// Parameters of f(x) = m x + n, g = p t + q.
struct LinearParams {
  double m = 0.0, n = 0.0, p = 0.0, q = 0.0;
};

/// Type II surface (x, m x + n + p, z): a vertical plane.
TranslationSurface geodesic_plane_family(const LinearParams &params, Rect domain);

/// Graph z = sqrt(r^2 - (x - cx)^2 - (y - cy)^2): a totally geodesic hemisphere.
struct Hemisphere {
  double cx = 0.0, cy = 0.0, radius = 1.0;
  Rect domain;
};

/// z = height, parameterized by (x, y).
struct Horosphere {
  double height = 1.0;
  Rect domain;
};

/// (x, slope x + offset, z), parameterized by (x, z).
struct VerticalPlane {
  double slope = 0.0, offset = 0.0;
  Rect domain;
};

using Surface = std::variant<TranslationSurface, Hemisphere, Horosphere, VerticalPlane>;

const Rect &domain_of(const Surface &s);
std::string describe(const Surface &s);

/// Jets of f and g at the given parameters (domain-checked).
struct TranslationJets {
  Jet3 f;
  Jet3 g;
};
TranslationJets translation_jets(const TranslationSurface &s, double u, double v);

/// Patch jet for the hyperbolic kernel; rejects points outside the domain and
/// points with z <= 0.
ImmersionJet patch_jet(const TranslationSurface &s, double u, double v);
ImmersionJet patch_jet(const Surface &s, double u, double v);

/// Patch jet without the half-space check, for Euclidean evaluation.
ImmersionJet euclidean_patch_jet(const TranslationSurface &s, double u, double v);
ImmersionJet euclidean_patch_jet(const Surface &s, double u, double v);

/// LHS - RHS of the type I minimality equation
///   (f+g)(f''/(1+f'^2) + g''/(1+g'^2)) = -2 (1+f'^2+g'^2) / ((1+f'^2)(1+g'^2)).
double type1_residual(const TranslationSurface &s, double x, double y);

/// LHS - RHS of the type II minimality equation
///   z (f''/(1+f'^2) + g''/(1+g'^2)) = 2 g' (1+f'^2+g'^2) / ((1+f'^2)(1+g'^2)).
double type2_residual(const TranslationSurface &s, double x, double z);

/// LHS - RHS of the mixed-derivative reduction of the type I equation
///   (1/g') (g''/(1+g'^2))' + (1/f') (f''/(1+f'^2))' = 8 f'' g'' / ((1+f'^2)^2 (1+g'^2)^2).
/// Throws SingularLocus where f' or g' vanishes.
double type1_reduction_residual(const TranslationSurface &s, double x, double y);

/// d^2/dx dy of type1_residual, from second directional jets along (1, 1) and (1, -1).
double type1_residual_mixed_partial(const TranslationSurface &s, double x, double y);

/// Euclidean Scherk surface z = (1/a) log|cos(a x) / cos(a y)| as a type I
/// translation surface. Default domain: |x|, |y| < pi / (2|a|).
TranslationSurface scherk(double a);
TranslationSurface scherk(double a, Rect domain);

/// int |f''|^2 dx + int |g'|^2 dz over the type II domain (composite Simpson).
/// Zero exactly on f = m x + n, g = const.
double plane_family_distance(const TranslationSurface &s, int nodes = 129);

/// Composite Simpson rule; `nodes` must be odd and >= 3.
double simpson(const std::function<double(double)> &fn, Interval range, int nodes);

} // namespace htrans
