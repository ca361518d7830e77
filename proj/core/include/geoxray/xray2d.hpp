#ifndef GEOXRAY_XRAY2D_HPP
#define GEOXRAY_XRAY2D_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "geoxray/geom.hpp"

namespace geoxray::xray2d {

/// The line L_{r,theta} = { x : <x, v_theta> = r }, v_theta = (cos, sin).
struct LineParam {
  double r = 0.0;
  double theta = 0.0;

  Vec2 normal() const { return unit_vector(theta); }
  Vec2 direction() const { return {-std::sin(theta), std::cos(theta)}; }
  Vec2 point(double t) const { return r * normal() + t * direction(); }
};

/// A planar convex body given by its support function h(theta) on a uniform
/// angular grid, evaluated between grid points by trigonometric
/// interpolation.
class SupportFunction {
 public:
  explicit SupportFunction(std::vector<double> samples);

  int grid_size() const { return int(samples_.size()); }
  const std::vector<double>& samples() const { return samples_; }

  double value(double theta) const;
  double derivative(double theta) const;
  double second_derivative(double theta) const;

  /// a(theta) = -h(theta+pi), b(theta) = h(theta)
  double a(double theta) const { return -value(theta + kPi); }
  double b(double theta) const { return value(theta); }
  double width(double theta) const { return value(theta) + value(theta + kPi); }

  /// Boundary point with outward normal v_theta: h v + h' v^perp.
  Vec2 boundary_point(double theta) const;

  /// min over the grid of h + h'' (the radius of curvature); negative values
  /// mean the samples are not a support function of a convex body.
  double convexity_margin() const;

  /// Fourier coefficients (a_k cos + b_k sin), k = 0..N/2.
  void fourier(std::vector<double>& cos_coef, std::vector<double>& sin_coef) const;

  static SupportFunction disc(Vec2 center, double radius, int n = 512);
  static SupportFunction ellipse(double semi_a, double semi_b, int n = 512);
  /// h = w/2 + eps cos(3 theta): constant width, not a disc.
  static SupportFunction reuleaux(double w, double eps, int n = 512);
  /// Directional maxima of a point cloud.
  static SupportFunction from_points(const std::vector<Vec2>& pts, int n = 512);

  static constexpr double kPi = 3.14159265358979323846;

 private:
  std::vector<double> samples_;
  std::vector<double> cos_coef_, sin_coef_;
};

/// A density on the plane; when boundary_blowup is set, line integrals treat
/// chord endpoints as inverse-square-root singularities.
struct PlanarDensity {
  std::function<double(Vec2)> eval;
  bool boundary_blowup = false;
};

/// Density 1/(pi R sqrt(1 - |x-center|^2/R^2)): unit integral over every
/// line meeting the ball, in every dimension n >= 2.
struct BallDensity {
  int dimension = 2;
  Vec2 center{};
  double radius = 1.0;

  double eval_at_distance(double dist) const;
  double eval(Vec2 x) const { return eval_at_distance((x - center).norm()); }
  PlanarDensity as_density() const;
};

BallDensity ball_density(int n, Vec2 center, double radius);

/// Chord parameters of L within the body: [t0, t1] along L.direction().
struct ChordSpan {
  double t0 = 0.0, t1 = 0.0;
  bool hits = false;
};
ChordSpan chord_span(const SupportFunction& dom, const LineParam& L);

/// Integral of f along the chord L cap Omega; 0 when the line misses.
double line_integral(const PlanarDensity& f, const SupportFunction& dom,
                     const LineParam& L, double tol = 1e-9);

enum class MomentWeight { Const, Linear, Power };

/// int_Omega f(x) h(<v_theta, x>) dx computed through the 1D reduction
/// int_a^b If(r, theta) h(r) dr of the projection slice identity.
double moment(const PlanarDensity& f, const SupportFunction& dom, double theta,
              MomentWeight w, int power = 0, double tol = 1e-7);

struct WidthTestResult {
  bool pass = false;
  double width = 0.0;          // mean width
  double max_deviation = 0.0;
  double witness_theta = 0.0;  // direction of the largest deviation
};
WidthTestResult constant_width_test(const SupportFunction& dom, double tol);

struct DiscFit {
  Vec2 center{};
  double radius = 0.0;
  double residual = 0.0;  // max Fourier residual beyond degree 1
};

struct DiscTestResult {
  enum class Reason { Accepted, Width, Harmonic };
  bool accepted = false;
  Reason reason = Reason::Accepted;
  int harmonic = 0;  // smallest offending harmonic when rejected for one
  DiscFit fit;
  WidthTestResult width_test;
};

/// Accepts exactly the discs: constant width and no Fourier content of
/// a(theta)+w/2 beyond degree 1. tol is relative to the width.
DiscTestResult disc_test(const SupportFunction& dom, double tol = 1e-6);

struct WeightedBall {
  Vec2 center{};
  double radius = 1.0;
  double coefficient = 1.0;
};

/// Line integrals of sum_i coeff_i * (ball density extended by zero); each
/// value is the sum of coefficients of the balls the line meets.
std::vector<double> piecewise_constant_demo(const std::vector<WeightedBall>& balls,
                                            const std::vector<LineParam>& lines,
                                            double tol = 1e-9);

}  // namespace geoxray::xray2d

#endif
