#ifndef GEOXRAY_DENSITY_HPP
#define GEOXRAY_DENSITY_HPP

#include <functional>

#include "geoxray/geom.hpp"

namespace geoxray {

/// A function on the ball written as f(x) = d(x, boundary)^{-1/2} w(x) near
/// the boundary, with w continuous up to the boundary. When `blowup` is
/// false the function is treated as bounded and `boundary_dist` may be empty.
struct BlowupDensity {
  std::function<double(Vec2)> eval;
  std::function<double(Vec2)> boundary_dist;  // d(x, boundary)
  bool blowup = false;

  /// w = f * sqrt(d); finite limit toward the boundary when the
  /// factorization holds.
  double smooth_factor(Vec2 x) const {
    return eval(x) * std::sqrt(boundary_dist(x));
  }

  static BlowupDensity bounded(std::function<double(Vec2)> f) {
    return {std::move(f), {}, false};
  }
};

}  // namespace geoxray

#endif
