#ifndef GEOXRAY_BOUNDARY_HPP
#define GEOXRAY_BOUNDARY_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "geoxray/density.hpp"
#include "geoxray/geom.hpp"
#include "geoxray/profile.hpp"
#include "geoxray/xray2d.hpp"

namespace geoxray::boundary {

class ProbeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoBlowupFactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strictly convex body { phi <= 0 } in 3D. The gradient may be omitted, in
/// which case it is finite-differenced.
struct ImplicitBody3 {
  std::function<double(Vec3)> phi;
  std::function<Vec3(Vec3)> grad;

  bool contains(Vec3 p) const { return phi(p) <= 0.0; }
  Vec3 gradient(Vec3 p) const;
  Vec3 inward_normal(Vec3 p) const { return -gradient(p).normalized(); }

  static ImplicitBody3 sphere(double radius, Vec3 center = {});
  static ImplicitBody3 ellipsoid(double a, double b, double c);
};

/// Planar analogue, plus an adapter from a support-function body.
struct ImplicitBody2 {
  std::function<double(Vec2)> phi;
  std::function<Vec2(Vec2)> grad;
  /// Exact distance to the boundary when available (used by the short
  /// geodesic integrals); may be empty.
  std::function<double(Vec2)> boundary_dist;

  bool contains(Vec2 p) const { return phi(p) <= 0.0; }
  Vec2 gradient(Vec2 p) const;
  Vec2 inward_normal(Vec2 p) const { return -gradient(p).normalized(); }

  static ImplicitBody2 circle(double radius, Vec2 center = {});
  static ImplicitBody2 from_support(const xray2d::SupportFunction& dom);
};

struct ChordProbe {
  double depth = 0.0;   // h
  double length = 0.0;  // l_v^h
};

struct SecondFundamentalFormEstimate {
  double value = 0.0;  // extrapolated II(v,v)
  std::vector<std::pair<double, double>> record;  // (h, raw 8h/l^2)
};

/// Chord length of the body along x + h nu + t v, by bisection against the
/// membership test.
double chord_length(const ImplicitBody3& body, Vec3 x, Vec3 v, double h);
double chord_length(const ImplicitBody2& body, Vec2 x, Vec2 v, double h);

/// II(v,v) from the chord-length law (l_v^h)^2 / h -> 8 / II(v,v), raw
/// estimates 8h/l^2 Richardson-extrapolated in sqrt(h).
SecondFundamentalFormEstimate estimate_II_chords(const ImplicitBody3& body,
                                                 Vec3 x, Vec3 v,
                                                 const std::vector<double>& depths);
SecondFundamentalFormEstimate estimate_II_chords(const ImplicitBody2& body,
                                                 Vec2 x, Vec2 v,
                                                 const std::vector<double>& depths);

/// II of the boundary circle of the radial metric c^{-2} g_Eucl, computed
/// analytically in boundary normal coordinates: II = c(1)^2 rho'(1).
double radial_metric_boundary_II(const metric::RadialProfile& profile);

/// Integral of d(.,boundary)^{-1/2} over the short chord at depth h tangent
/// to v (Euclidean body). Tends to sqrt(2 pi^2 / II(v,v)) as h -> 0.
double short_geodesic_integral(const ImplicitBody2& body, Vec2 x, Vec2 v,
                               double h, double tol = 1e-7);

/// Radial-metric version: the short geodesic at boundary distance h launched
/// tangentially, traced with the geodesic ODE.
double short_geodesic_integral(const metric::RadialProfile& profile, double h,
                               double tol = 1e-8);

/// Limit of f * sqrt(D) along interior points approaching the boundary,
/// Richardson-extrapolated in sqrt(distance).
double boundary_value_w(const BlowupDensity& f,
                        const std::vector<Vec2>& approach);

struct SliceFit {
  double depth = 0.0;
  double semi_minor = 0.0;  // p
  double semi_major = 0.0;  // q >= p
  double axis_ratio = 1.0;  // q/p
};

struct SliceTestResult {
  bool umbilical = false;
  double tol = 0.0;
  /// Limiting axis ratio per sampled in-plane frame rotation.
  std::vector<double> ratios;
  double worst_ratio = 1.0;
  int witness_plane = -1;
  std::vector<SliceFit> fits;
};

/// Traces the slices (P + h nu) cap Omega of the tangent plane at x, fits
/// ellipses, extrapolates the axis ratio to h -> 0. Umbilical iff every
/// limiting ratio is within tol of 1.
SliceTestResult slice_umbilicity_test(const ImplicitBody3& body, Vec3 x,
                                      const std::vector<double>& plane_angles,
                                      const std::vector<double>& depths,
                                      double tol);

/// Richardson extrapolation of (h, value) pairs assuming value = L + C sqrt(h),
/// using the two smallest depths.
double extrapolate_sqrt_h(const std::vector<std::pair<double, double>>& record);

}  // namespace geoxray::boundary

#endif
