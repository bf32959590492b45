#include "htrans/surfaces.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "htrans/error.hpp"

namespace htrans {

namespace {

constexpr double kSingularSlope = 1e-12;

std::string point(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << u << ", " << v << ")";
  return os.str();
}

void require_domain(const Rect &domain, double u, double v) {
  if (!domain.contains(u, v)) {
    throw DomainError("parameter point " + point(u, v) + " outside the surface domain");
  }
}

void require_kind(const TranslationSurface &s, TranslationKind kind, const char *op) {
  if (s.kind != kind) {
    throw UsageError(std::string(op) + " requires a " + to_string(kind) + " surface, got " + to_string(s.kind));
  }
}

ImmersionJet translation_patch(const TranslationSurface &s, double u, double v) {
  const auto [f, g] = translation_jets(s, u, v);
  ImmersionJet jet;
  if (s.kind == TranslationKind::TypeI) {
    jet.X = {u, v, f.v0 + g.v0};
    jet.Xu = {1.0, 0.0, f.v1};
    jet.Xv = {0.0, 1.0, g.v1};
    jet.Xuu = {0.0, 0.0, f.v2};
    jet.Xvv = {0.0, 0.0, g.v2};
  } else {
    jet.X = {u, f.v0 + g.v0, v};
    jet.Xu = {1.0, f.v1, 0.0};
    jet.Xv = {0.0, g.v1, 1.0};
    jet.Xuu = {0.0, f.v2, 0.0};
    jet.Xvv = {0.0, g.v2, 0.0};
  }
  return jet;
}

ImmersionJet reference_patch(const Hemisphere &s, double x, double y) {
  require_domain(s.domain, x, y);
  const double dx = x - s.cx, dy = y - s.cy;
  const double rad = s.radius * s.radius - dx * dx - dy * dy;
  if (!(rad > 0.0)) {
    throw DomainError("hemisphere: point " + point(x, y) + " outside the boundary disc");
  }
  const double h = std::sqrt(rad);
  const double h3 = h * h * h;
  ImmersionJet jet;
  jet.X = {x, y, h};
  jet.Xu = {1.0, 0.0, -dx / h};
  jet.Xv = {0.0, 1.0, -dy / h};
  jet.Xuu = {0.0, 0.0, -1.0 / h - dx * dx / h3};
  jet.Xuv = {0.0, 0.0, -dx * dy / h3};
  jet.Xvv = {0.0, 0.0, -1.0 / h - dy * dy / h3};
  return jet;
}

ImmersionJet reference_patch(const Horosphere &s, double x, double y) {
  require_domain(s.domain, x, y);
  ImmersionJet jet;
  jet.X = {x, y, s.height};
  jet.Xu = {1.0, 0.0, 0.0};
  jet.Xv = {0.0, 1.0, 0.0};
  return jet;
}

ImmersionJet reference_patch(const VerticalPlane &s, double x, double z) {
  require_domain(s.domain, x, z);
  ImmersionJet jet;
  jet.X = {x, s.slope * x + s.offset, z};
  jet.Xu = {1.0, s.slope, 0.0};
  jet.Xv = {0.0, 0.0, 1.0};
  return jet;
}

void require_half_space(const ImmersionJet &jet, double u, double v) {
  if (!(jet.X.z() > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "point " << point(u, v) << " maps to z = " << jet.X.z() << " <= 0, outside the half-space";
    throw DomainError(os.str());
  }
}

// f, f', f'' (and g, g', g'') as jets in t for the directional derivative
// along (1, slope) at (x, y)
Jet3 type1_residual_along(const TranslationSurface &s, double x, double y, double slope) {
  const auto [f, g] = translation_jets(s, x, y);
  const Jet3 f0 = f, f1 = shift_derivative(f0), f2 = shift_derivative(f1);
  const Jet3 g0 = along(g, slope), g1 = along(shift_derivative(g), slope),
             g2 = along(shift_derivative(shift_derivative(g)), slope);
  const Jet3 P = 1.0 + f1 * f1;
  const Jet3 Q = 1.0 + g1 * g1;
  return (f0 + g0) * (f2 / P + g2 / Q) + 2.0 * (1.0 + f1 * f1 + g1 * g1) / (P * Q);
}

} // namespace

std::string to_string(TranslationKind kind) {
  return kind == TranslationKind::TypeI ? "type1" : "type2";
}

TranslationSurface::TranslationSurface(TranslationKind kind_, FunctionCurve f_, FunctionCurve g_, Rect domain_)
    : kind(kind_), f(std::move(f_)), g(std::move(g_)), domain(domain_) {
  if (!(domain.u.lo < domain.u.hi) || !(domain.v.lo < domain.v.hi)) {
    throw UsageError("surface domain must be a nonempty rectangle");
  }
  if (kind == TranslationKind::TypeII && !(domain.v.lo > 0.0)) {
    throw UsageError("type2 surface: the z-interval of the domain must lie in z > 0");
  }
}

TranslationSurface geodesic_plane_family(const LinearParams &params, Rect domain) {
  return {TranslationKind::TypeII, FunctionCurve::linear(params.m, params.n),
          FunctionCurve::constant(params.p), domain};
}

const Rect &domain_of(const Surface &s) {
  return std::visit([](const auto &x) -> const Rect & { return x.domain; }, s);
}

std::string describe(const Surface &s) {
  struct Visitor {
    std::string operator()(const TranslationSurface &t) const {
      return to_string(t.kind) + " f=[" + t.f.description() + "] g=[" + t.g.description() + "]";
    }
    std::string operator()(const Hemisphere &h) const {
      std::ostringstream os;
      os << "hemisphere center=(" << h.cx << ", " << h.cy << ") radius=" << h.radius;
      return os.str();
    }
    std::string operator()(const Horosphere &h) const {
      std::ostringstream os;
      os << "horosphere height=" << h.height;
      return os.str();
    }
    std::string operator()(const VerticalPlane &p) const {
      std::ostringstream os;
      os << "vertical-plane slope=" << p.slope << " offset=" << p.offset;
      return os.str();
    }
  };
  return std::visit(Visitor{}, s);
}

TranslationJets translation_jets(const TranslationSurface &s, double u, double v) {
  require_domain(s.domain, u, v);
  return {s.f(u), s.g(v)};
}

ImmersionJet euclidean_patch_jet(const TranslationSurface &s, double u, double v) {
  return translation_patch(s, u, v);
}

ImmersionJet patch_jet(const TranslationSurface &s, double u, double v) {
  if (s.kind == TranslationKind::TypeII && !(v > 0.0)) {
    throw DomainError("type2 surface evaluated at z = " + std::to_string(v) + " <= 0");
  }
  ImmersionJet jet = translation_patch(s, u, v);
  require_half_space(jet, u, v);
  return jet;
}

ImmersionJet euclidean_patch_jet(const Surface &s, double u, double v) {
  return std::visit(
      [u, v](const auto &x) -> ImmersionJet {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, TranslationSurface>) {
          return translation_patch(x, u, v);
        } else {
          return reference_patch(x, u, v);
        }
      },
      s);
}

ImmersionJet patch_jet(const Surface &s, double u, double v) {
  if (const auto *t = std::get_if<TranslationSurface>(&s)) {
    return patch_jet(*t, u, v);
  }
  ImmersionJet jet = euclidean_patch_jet(s, u, v);
  require_half_space(jet, u, v);
  return jet;
}

double type1_residual(const TranslationSurface &s, double x, double y) {
  require_kind(s, TranslationKind::TypeI, "type1_residual");
  const auto [f, g] = translation_jets(s, x, y);
  const double z = f.v0 + g.v0;
  if (!(z > 0.0)) {
    throw DomainError("type1_residual: f + g <= 0 at " + point(x, y));
  }
  const double P = 1.0 + f.v1 * f.v1;
  const double Q = 1.0 + g.v1 * g.v1;
  const double lhs = z * (f.v2 / P + g.v2 / Q);
  const double rhs = -2.0 * (1.0 + f.v1 * f.v1 + g.v1 * g.v1) / (P * Q);
  return lhs - rhs;
}

double type2_residual(const TranslationSurface &s, double x, double z) {
  require_kind(s, TranslationKind::TypeII, "type2_residual");
  if (!(z > 0.0)) {
    throw DomainError("type2_residual: z must be positive");
  }
  const auto [f, g] = translation_jets(s, x, z);
  const double P = 1.0 + f.v1 * f.v1;
  const double Q = 1.0 + g.v1 * g.v1;
  const double lhs = z * (f.v2 / P + g.v2 / Q);
  const double rhs = 2.0 * g.v1 * (1.0 + f.v1 * f.v1 + g.v1 * g.v1) / (P * Q);
  return lhs - rhs;
}

double type1_reduction_residual(const TranslationSurface &s, double x, double y) {
  require_kind(s, TranslationKind::TypeI, "type1_reduction_residual");
  const auto [f, g] = translation_jets(s, x, y);
  if (std::abs(f.v1) <= kSingularSlope || std::abs(g.v1) <= kSingularSlope) {
    throw SingularLocus("type1_reduction_residual: f' or g' vanishes at " + point(x, y));
  }
  // f''/(1+f'^2) as a jet in x; only its first derivative slot is used
  const Jet3 f1 = shift_derivative(f), f2 = shift_derivative(f1);
  const Jet3 g1 = shift_derivative(g), g2 = shift_derivative(g1);
  const Jet3 A = f2 / (1.0 + f1 * f1);
  const Jet3 B = g2 / (1.0 + g1 * g1);
  const double P = 1.0 + f.v1 * f.v1;
  const double Q = 1.0 + g.v1 * g.v1;
  const double lhs = B.v1 / g.v1 + A.v1 / f.v1;
  const double rhs = 8.0 * f.v2 * g.v2 / (P * P * Q * Q);
  return lhs - rhs;
}

double type1_residual_mixed_partial(const TranslationSurface &s, double x, double y) {
  require_kind(s, TranslationKind::TypeI, "type1_residual_mixed_partial");
  const Jet3 plus = type1_residual_along(s, x, y, 1.0);
  const Jet3 minus = type1_residual_along(s, x, y, -1.0);
  return 0.25 * (plus.v2 - minus.v2);
}

TranslationSurface scherk(double a) {
  if (a == 0.0) {
    throw UsageError("scherk: parameter a must be nonzero");
  }
  const double half = std::numbers::pi / (2.0 * std::abs(a));
  // nudge inside so the closed domain never touches a zero of cos
  const double edge = std::nextafter(half, 0.0);
  return scherk(a, Rect{{-edge, edge}, {-edge, edge}});
}

TranslationSurface scherk(double a, Rect domain) {
  if (a == 0.0) {
    throw UsageError("scherk: parameter a must be nonzero");
  }
  return {TranslationKind::TypeI, FunctionCurve::log_cos(a, 1.0 / a, domain.u),
          FunctionCurve::log_cos(a, -1.0 / a, domain.v), domain};
}

double simpson(const std::function<double(double)> &fn, Interval range, int nodes) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw UsageError("simpson: node count must be odd and >= 3");
  }
  const double h = range.width() / static_cast<double>(nodes - 1);
  double acc = fn(range.lo) + fn(range.hi);
  for (int i = 1; i < nodes - 1; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * fn(range.node(i, nodes));
  }
  return acc * h / 3.0;
}

double plane_family_distance(const TranslationSurface &s, int nodes) {
  require_kind(s, TranslationKind::TypeII, "plane_family_distance");
  const double bend = simpson(
      [&](double x) {
        const double f2 = s.f(x).v2;
        return f2 * f2;
      },
      s.domain.u, nodes);
  const double tilt = simpson(
      [&](double z) {
        const double g1 = s.g(z).v1;
        return g1 * g1;
      },
      s.domain.v, nodes);
  return bend + tilt;
}

} // namespace htrans
