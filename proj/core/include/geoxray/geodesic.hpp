#ifndef GEOXRAY_GEODESIC_HPP
#define GEOXRAY_GEODESIC_HPP

#include <stdexcept>
#include <vector>

#include "geoxray/density.hpp"
#include "geoxray/geom.hpp"
#include "geoxray/profile.hpp"

namespace geoxray::metric {

class NonExitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A maximal geodesic identified either by its turning radius (radial
/// metric) or by Euclidean line parameters.
struct GeodesicChord {
  enum class Kind { RadialMetric, EuclideanLine };
  Kind kind = Kind::RadialMetric;
  double turning_radius = 0.0;  // s in (0,1), RadialMetric only
  double line_offset = 0.0;     // (r, theta), EuclideanLine only
  double line_angle = 0.0;
  Vec2 endpoints[2];
  double length = 0.0;  // metric length
};

struct GeodesicSample {
  double t;   // metric arclength parameter
  Vec2 pos;
  Vec2 vel;   // dx/dt (Euclidean components)
};

/// A geodesic of c^{-2} g_Eucl traced in a 2D plane, parametrized by metric
/// arclength, resampled at uniform parameter steps.
struct TracedGeodesic {
  std::vector<GeodesicSample> samples;
  bool exited = false;
  double length = 0.0;         // exit parameter
  double min_radius = 0.0;     // smallest |gamma(t)| along the trace
  double clairaut_drift = 0.0; // max deviation of rho(|x|) sin(alpha)
  double clairaut = 0.0;       // the invariant itself

  Vec2 position(double t) const;  // cubic Hermite between samples
};

/// Traces from a boundary point into the ball until it exits.
/// `start` must lie on the unit circle, `direction` strictly inward.
TracedGeodesic trace_geodesic(const RadialProfile& profile, Vec2 start,
                              Vec2 direction, double tol = 1e-10);

/// Same integrator started from an interior point (used for tangent-launch
/// short geodesics). Traces forward only.
TracedGeodesic trace_geodesic_from(const RadialProfile& profile, Vec2 start,
                                   Vec2 direction, double tol = 1e-10);

/// Builds the chord with turning radius s launched from boundary angle
/// `base_angle`, using the Clairaut relation sin(alpha) = rho(s)/rho(1).
GeodesicChord chord_from_turning_radius(const RadialProfile& profile, double s,
                                        double base_angle = 0.0);

/// Launch data for the chord with turning radius s: boundary start point and
/// inward direction.
void chord_launch(const RadialProfile& profile, double s, double base_angle,
                  Vec2& start, Vec2& direction);

/// Integral of the density along the trace in metric arclength. When the
/// density blows up like d^{-1/2}, endpoint neighborhoods are handled by the
/// square-root substitution in quad.
double integrate_along_trace(const TracedGeodesic& trace,
                             const BlowupDensity& density, double tol = 1e-8);

}  // namespace geoxray::metric

#endif
