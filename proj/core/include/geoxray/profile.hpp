#ifndef GEOXRAY_PROFILE_HPP
#define GEOXRAY_PROFILE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geoxray::metric {

class InvalidProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HerglotzViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial sound speed c(r) on [0,1] defining the conformally Euclidean
/// metric c^{-2}(r) g_Eucl on the closed unit ball.
struct RadialProfile {
  enum class Source { Named, Polynomial, Expression, Samples };

  std::function<double(double)> eval;   // c(r), must stay positive
  std::function<double(double)> deriv;  // c'(r)
  Source source = Source::Named;

  double operator()(double r) const { return eval(r); }

  /// rho(r) = r / c(r)
  double rho(double r) const {
    double c = checked(r);
    return r / c;
  }

  /// rho'(r) = (c - r c') / c^2
  double rho_deriv(double r) const {
    double c = checked(r);
    return (c - r * deriv(r)) / (c * c);
  }

  double checked(double r) const {
    double c = eval(r);
    if (!(c > 0.0))
      throw InvalidProfileError("c(r) <= 0 at r=" + std::to_string(r));
    return c;
  }

  static RadialProfile constant(double c0);
  static RadialProfile from_callables(std::function<double(double)> c,
                                      std::function<double(double)> dc,
                                      Source src = Source::Named);
  /// Natural cubic spline through (r, c) samples; derivative from the spline.
  static RadialProfile from_samples(const std::vector<double>& r,
                                    const std::vector<double>& c);
};

/// rho(r) = r/c(r) with its derivative, as a standalone pair.
struct RhoFunction {
  std::function<double(double)> eval;
  std::function<double(double)> deriv;

  static RhoFunction from_profile(const RadialProfile& p) {
    return {[p](double r) { return p.rho(r); },
            [p](double r) { return p.rho_deriv(r); }};
  }
};

struct HerglotzResult {
  bool pass = false;
  double witness_r = 0.0;      // first grid point with rho' <= 0 (when failing)
  double witness_value = 0.0;  // rho'(witness_r)
};

/// Checks rho' > 0 on a uniform grid of `grid_size` points over [0,1].
HerglotzResult herglotz_check(const RadialProfile& profile, int grid_size);

/// Solves rho(s) = p for s in (0,1); requires rho strictly increasing.
/// Bracketing plus Newton, accurate to ~1e-12 in s.
double turning_radius(const RhoFunction& rho, double p, double tol = 1e-12);
double turning_radius(const RadialProfile& profile, double p, double tol = 1e-12);

/// Metric distance from radius r to the boundary sphere, int_r^1 dt/c(t).
double boundary_distance(const RadialProfile& profile, double r);

}  // namespace geoxray::metric

#endif
