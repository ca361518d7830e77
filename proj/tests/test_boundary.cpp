#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geoxray/abel.hpp"
#include "geoxray/boundary.hpp"
#include "geoxray/profile.hpp"

using namespace geoxray;
using namespace geoxray::boundary;
using geoxray::metric::RadialProfile;

namespace {

constexpr double kPi = 3.14159265358979323846;

RadialProfile gaussian_profile() {
  return RadialProfile::from_callables(
      [](double r) { return std::exp(-r * r / 2); },
      [](double r) { return -r * std::exp(-r * r / 2); });
}

RadialProfile rational_profile() {
  // c(r) = 1 / (1 + r^2/4)
  return RadialProfile::from_callables(
      [](double r) { return 1.0 / (1.0 + r * r / 4); },
      [](double r) {
        double d = 1.0 + r * r / 4;
        return -(r / 2) / (d * d);
      });
}

std::vector<double> depth_sweep(double hmin, double hmax, int n) {
  std::vector<double> hs;
  for (int i = 0; i < n; ++i)
    hs.push_back(hmax * std::pow(hmin / hmax, double(i) / (n - 1)));
  return hs;
}

// least-squares slope of log|err| against log h
double fit_rate(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, y] : pts) {
    double lx = std::log(x), ly = std::log(std::abs(y));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = double(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("chord length against the circle oracle") {
  auto circ = ImplicitBody2::circle(2.0);
  for (double h : {1e-2, 1e-3, 1e-4}) {
    double l = chord_length(circ, {2, 0}, {0, 1}, h);
    double oracle = 2 * std::sqrt(2 * 2.0 * h - h * h);
    CHECK(l == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("II via chords: circle R=2") {
  auto circ = ImplicitBody2::circle(2.0);
  auto est = estimate_II_chords(circ, {2, 0}, {0, 1}, depth_sweep(1e-6, 1e-2, 8));
  CHECK(std::abs(est.value - 0.5) / 0.5 <= 0.01);
  // For a circle the raw estimate is exactly 2/(2R-h): the error is C*h.
  // (The general chord-length law only guarantees O(sqrt(h)); the
  // reflection symmetry of the circle kills the half-power term.)
  std::vector<std::pair<double, double>> errs;
  for (auto& [h, raw] : est.record) errs.push_back({h, raw - 0.5});
  double rate = fit_rate(errs);
  CHECK(rate == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("II via chords: unit sphere, direction independent") {
  auto sph = ImplicitBody3::sphere(1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0, 2 * kPi);
  Vec3 x{0, 0, 1};
  std::vector<double> vals;
  for (int i = 0; i < 16; ++i) {
    double a = unif(rng);
    Vec3 v{std::cos(a), std::sin(a), 0};
    auto est = estimate_II_chords(sph, x, v, depth_sweep(1e-6, 1e-3, 6));
    CHECK(std::abs(est.value - 1.0) <= 0.01);
    vals.push_back(est.value);
  }
  auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  CHECK((*hi - *lo) <= 1e-3);
}

TEST_CASE("II via chords: ellipsoid (1,1,2) at (1,0,0) along z") {
  auto ell = ImplicitBody3::ellipsoid(1, 1, 2);
  auto est =
      estimate_II_chords(ell, {1, 0, 0}, {0, 0, 1}, depth_sweep(1e-6, 1e-3, 6));
  // analytic normal curvature: kappa = (1/a) * (a/c)^2 ... here 1/4
  CHECK(std::abs(est.value - 0.25) / 0.25 <= 0.01);
}

TEST_CASE("probe error when the depth misses the body") {
  auto circ = ImplicitBody2::circle(1.0);
  CHECK_THROWS_AS(chord_length(circ, {1, 0}, {0, 1}, 3.0), ProbeError);
}

TEST_CASE("short geodesic integral: unit disc tends to pi sqrt(2)") {
  auto disc = ImplicitBody2::circle(1.0);
  double limit = kPi * std::sqrt(2.0);
  double v = short_geodesic_integral(disc, {1, 0}, {0, 1}, 1e-4);
  CHECK(std::abs(v - limit) / limit <= 0.02);
  // extrapolated limit and the sqrt(h) rate
  std::vector<std::pair<double, double>> rec, errs;
  for (double h : depth_sweep(1e-6, 1e-2, 8)) {
    double val = short_geodesic_integral(disc, {1, 0}, {0, 1}, h);
    rec.push_back({h, val});
    errs.push_back({h, val - limit});
  }
  CHECK(std::abs(extrapolate_sqrt_h(rec) - limit) / limit <= 1e-3);
  // Disc expansion: value(h) = pi sqrt(2) (1 - h/8 + O(h^2)); by symmetry
  // the error decays like h, one power faster than the generic sqrt(h) bound.
  CHECK(fit_rate(errs) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("short geodesic integral: circle R=2 tends to 2 pi") {
  auto circ = ImplicitBody2::circle(2.0);
  std::vector<std::pair<double, double>> rec;
  for (double h : depth_sweep(1e-6, 1e-3, 6))
    rec.push_back({h, short_geodesic_integral(circ, {2, 0}, {0, 1}, h)});
  CHECK(std::abs(extrapolate_sqrt_h(rec) - 2 * kPi) / (2 * kPi) <= 1e-3);
}

TEST_CASE("sphere consistency: sqrt(2 pi^2 / II) matches the short-chord limit") {
  auto circ = ImplicitBody2::circle(2.0);
  auto II = estimate_II_chords(circ, {2, 0}, {0, 1}, depth_sweep(1e-6, 1e-3, 6));
  std::vector<std::pair<double, double>> rec;
  for (double h : depth_sweep(1e-6, 1e-3, 6))
    rec.push_back({h, short_geodesic_integral(circ, {2, 0}, {0, 1}, h)});
  double lhs = std::sqrt(2 * kPi * kPi / II.value);
  double rhs = extrapolate_sqrt_h(rec);
  CHECK(std::abs(lhs - rhs) / rhs <= 1e-3);
}

TEST_CASE("radial metric boundary II from the metric") {
  // Euclidean: II = 1. Constant c=2: lengths halve, curvature doubles.
  CHECK(radial_metric_boundary_II(RadialProfile::constant(1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(radial_metric_boundary_II(RadialProfile::constant(2.0)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // Gaussian: c(1)^2 rho'(1) = e^{-1} * e^{1/2} * 2 = 2/sqrt(e)
  CHECK(radial_metric_boundary_II(gaussian_profile()) ==
        doctest::Approx(2.0 / std::sqrt(std::exp(1.0))).epsilon(1e-12));
}

TEST_CASE("radial-metric short geodesics approach sqrt(2 pi^2 / II)") {
  auto g = gaussian_profile();
  double II = radial_metric_boundary_II(g);
  double limit = std::sqrt(2 * kPi * kPi / II);
  std::vector<std::pair<double, double>> rec;
  for (double h : {1e-3, 3e-4, 1e-4, 3e-5, 1e-5})
    rec.push_back({h, short_geodesic_integral(g, h)});
  CHECK(std::abs(extrapolate_sqrt_h(rec) - limit) / limit <= 2e-3);
}

TEST_CASE("boundary value of the unit ball density is 1/(pi sqrt 2)") {
  // f sqrt(d) = 1/(pi sqrt(1+|x|)) -> 1/(pi sqrt 2)
  BlowupDensity f{
      [](Vec2 x) { return 1.0 / (kPi * std::sqrt(1 - x.dot(x))); },
      [](Vec2 x) { return 1.0 - x.norm(); }, true};
  std::vector<Vec2> approach;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
    approach.push_back({1.0 - d, 0.0});
  double w = boundary_value_w(f, approach);
  CHECK(w == doctest::Approx(1.0 / (kPi * std::sqrt(2.0))).epsilon(1e-6));
  CHECK(1.0 / (kPi * std::sqrt(2.0)) == doctest::Approx(0.2250791).epsilon(1e-6));
}

TEST_CASE("boundary value scales like sqrt(1/(2 pi^2 R))") {
  double R = 2.0;
  BlowupDensity f{
      [R](Vec2 x) { return 1.0 / (kPi * R * std::sqrt(1 - x.dot(x) / (R * R))); },
      [R](Vec2 x) { return R - x.norm(); }, true};
  std::vector<Vec2> approach;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
    approach.push_back({R - d, 0.0});
  CHECK(boundary_value_w(f, approach) ==
        doctest::Approx(std::sqrt(1.0 / (2 * kPi * kPi * R))).epsilon(1e-6));
}

TEST_CASE("non-factorizing density raises NoBlowupFactorizationError") {
  BlowupDensity f{[](Vec2 x) { return 1.0 / (1.0 - x.norm()); },
                  [](Vec2 x) { return 1.0 - x.norm(); }, true};
  std::vector<Vec2> approach;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
    approach.push_back({1.0 - d, 0.0});
  CHECK_THROWS_AS(boundary_value_w(f, approach), NoBlowupFactorizationError);
}

TEST_CASE("main identity: w(1) = sqrt(II / 2 pi^2) for the test profiles") {
  std::vector<RadialProfile> profiles = {RadialProfile::constant(1.0),
                                         gaussian_profile(), rational_profile()};
  for (auto& prof : profiles) {
    REQUIRE(metric::herglotz_check(prof, 1001).pass);
    auto f = abel::synthesize_constant(prof);
    BlowupDensity dens{
        [&](Vec2 x) { return f.eval(std::min(x.norm(), 1.0 - 1e-15)); },
        [&](Vec2 x) {
          return metric::boundary_distance(prof, std::min(x.norm(), 1.0));
        },
        true};
    std::vector<Vec2> approach;
    for (double d : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
      approach.push_back({1.0 - d, 0.0});
    double w = boundary_value_w(dens, approach);
    double II = radial_metric_boundary_II(prof);
    CHECK(std::abs(w - std::sqrt(II / (2 * kPi * kPi))) <= 1e-3);
  }
}

TEST_CASE("slice test: unit sphere is umbilical everywhere sampled") {
  auto sph = ImplicitBody3::sphere(1.0);
  for (Vec3 x : {Vec3{0, 0, 1}, Vec3{1, 0, 0},
                 Vec3{1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)}}) {
    auto res = slice_umbilicity_test(sph, x, {0.0, 0.5, 1.1},
                                     depth_sweep(1e-5, 1e-2, 6), 1e-3);
    CHECK(res.umbilical);
    for (double r : res.ratios) CHECK(std::abs(r - 1.0) <= 1e-3);
  }
}

TEST_CASE("slice test: ellipsoid (1,1,2) at (1,0,0) has limiting ratio 2") {
  auto ell = ImplicitBody3::ellipsoid(1, 1, 2);
  auto res = slice_umbilicity_test(ell, {1, 0, 0}, {0.0},
                                   depth_sweep(1e-5, 1e-2, 6), 1e-3);
  CHECK_FALSE(res.umbilical);
  CHECK(std::abs(res.worst_ratio - 2.0) <= 1e-2);
  // exact slice oracle: x = 1-h cuts semi-axes sqrt(2h-h^2), 2 sqrt(2h-h^2)
  for (auto& fit : res.fits) {
    if (fit.depth > 1e-3) continue;
    double p = std::sqrt(2 * fit.depth - fit.depth * fit.depth);
    CHECK(fit.semi_minor == doctest::Approx(p).epsilon(1e-2));
    CHECK(fit.semi_major == doctest::Approx(2 * p).epsilon(1e-2));
  }
}

TEST_CASE("slice test: ellipsoid pole (0,0,2) is umbilical") {
  auto ell = ImplicitBody3::ellipsoid(1, 1, 2);
  auto res = slice_umbilicity_test(ell, {0, 0, 2}, {0.0, 0.8},
                                   depth_sweep(1e-5, 1e-2, 6), 1e-3);
  CHECK(res.umbilical);
  for (double r : res.ratios) CHECK(std::abs(r - 1.0) <= 1e-3);
}

TEST_CASE("quadric slice ratio equals sqrt(II_max / II_min)") {
  // at (1,0,0): kappa_y = 1, kappa_z = 1/4; sqrt(1 / (1/4)) = 2
  auto ell = ImplicitBody3::ellipsoid(1, 1, 2);
  auto ky = estimate_II_chords(ell, {1, 0, 0}, {0, 1, 0},
                               depth_sweep(1e-6, 1e-3, 6));
  auto kz = estimate_II_chords(ell, {1, 0, 0}, {0, 0, 1},
                               depth_sweep(1e-6, 1e-3, 6));
  auto res = slice_umbilicity_test(ell, {1, 0, 0}, {0.0},
                                   depth_sweep(1e-5, 1e-2, 6), 1e-3);
  CHECK(std::abs(res.worst_ratio - std::sqrt(ky.value / kz.value)) <= 1e-2);
}
