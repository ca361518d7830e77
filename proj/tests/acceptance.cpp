// Acceptance gate: each criterion is a standalone check printing one
// "PASS criterion-N: ..." / "FAIL criterion-N: ..." line and setting the exit
// code. Run a single criterion by number (e.g. "acceptance 3" or
// "acceptance 11b"), or all of them with no argument.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "geoxray/abel.hpp"
#include "geoxray/boundary.hpp"
#include "geoxray/expr.hpp"
#include "geoxray/geodesic.hpp"
#include "geoxray/profile.hpp"
#include "geoxray/quadrature.hpp"
#include "geoxray/xray2d.hpp"

using namespace geoxray;
using metric::RadialProfile;

namespace {

constexpr double kPi = 3.14159265358979323846;

RadialProfile gaussian_profile() {
  return RadialProfile::from_callables(
      [](double r) { return std::exp(-r * r / 2); },
      [](double r) { return -r * std::exp(-r * r / 2); });
}

RadialProfile rational_profile() {
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

// ---- criteria ------------------------------------------------------------

// 1: 1000 seeded random lines through the unit disc, |If - 1| <= 1e-6, <= 10 s
bool criterion_1(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  auto dom = xray2d::SupportFunction::disc({0, 0}, 1.0);
  auto f = xray2d::ball_density(2, {0, 0}, 1.0).as_density();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> roff(-0.999, 0.999), rang(0, 2 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double v = xray2d::line_integral(f, dom, {roff(rng), rang(rng)});
    worst = std::max(worst, std::abs(v - 1.0));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start).count();
  char buf[128];
  std::snprintf(buf, sizeof buf, "max|If-1| = %.3g in %.2f s", worst, secs);
  detail = buf;
  return worst <= 1e-6 && secs <= 10.0;
}

// 2: Gaussian profile, 100-point s-grid |Af-1| <= 1e-6; ODE tracer on 50
//    chords <= 1e-4; <= 60 s
bool criterion_2(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  auto g = gaussian_profile();
  auto f = abel::synthesize_constant(g);
  double worst_abel = 0.0;
  for (int i = 1; i <= 100; ++i) {
    double s = i / 101.0;
    worst_abel = std::max(worst_abel, std::abs(abel::abel_forward(f, g, s) - 1.0));
  }
  BlowupDensity dens{
      [&](Vec2 x) { return f.eval(std::min(x.norm(), 1.0 - 1e-15)); },
      [&](Vec2 x) {
        return metric::boundary_distance(g, std::min(x.norm(), 1.0));
      },
      true};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  double worst_ode = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vec2 p0, d0;
    metric::chord_launch(g, unif(rng), unif(rng) * 2 * kPi, p0, d0);
    auto tr = metric::trace_geodesic(g, p0, d0);
    worst_ode =
        std::max(worst_ode, std::abs(metric::integrate_along_trace(tr, dens) - 1.0));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "max|Af-1| = %.3g, max|If-1| (ODE) = %.3g, %.1f s",
                worst_abel, worst_ode, secs);
  detail = buf;
  return worst_abel <= 1e-6 && worst_ode <= 1e-4 && secs <= 60.0;
}

// 3: Abel round-trip for f in {1, r^2, 1+r^2, cos r} on both profiles
bool criterion_3(std::string& detail) {
  std::vector<std::function<double(double)>> fams = {
      [](double) { return 1.0; }, [](double r) { return r * r; },
      [](double r) { return 1 + r * r; }, [](double r) { return std::cos(r); }};
  std::vector<RadialProfile> profiles = {RadialProfile::constant(1.0),
                                         gaussian_profile()};
  double worst = 0.0;
  for (auto& prof : profiles)
    for (auto& fn : fams) {
      abel::RadialDensity f{fn, false, {}};
      auto A = [&](double s) { return abel::abel_forward(f, prof, s); };
      for (int i = 0; i <= 18; ++i) {
        double r = 0.05 + 0.05 * i;
        worst = std::max(worst, std::abs(abel::abel_inverse(A, prof, r) - fn(r)));
      }
    }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max round-trip error = %.3g", worst);
  detail = buf;
  return worst <= 1e-4;
}

// 4: arcsin identity deviation <= 1e-8 at 20 x-values, both profiles
bool criterion_4(std::string& detail) {
  double worst = 0.0;
  for (auto& prof : {RadialProfile::constant(1.0), gaussian_profile()})
    for (int i = 1; i <= 20; ++i)
      worst = std::max(worst,
                       std::abs(abel::arcsin_identity_deviation(prof, i / 21.0)));
  char buf[96];
  std::snprintf(buf, sizeof buf, "max deviation = %.3g", worst);
  detail = buf;
  return worst <= 1e-8;
}

// 5: chord-length II estimator: sqrt(h) rate and 1% extrapolated accuracy
bool criterion_5(std::string& detail) {
  auto hs = depth_sweep(1e-6, 1e-2, 9);
  auto circ = boundary::ImplicitBody2::circle(2.0);
  auto e2 = boundary::estimate_II_chords(circ, {2, 0}, {0, 1}, hs);
  std::vector<std::pair<double, double>> errs2;
  for (auto& [h, raw] : e2.record) errs2.push_back({h, raw - 0.5});
  double rate2 = fit_rate(errs2);

  auto sph = boundary::ImplicitBody3::sphere(1.0);
  auto e3 = boundary::estimate_II_chords(sph, {0, 0, 1}, {1, 0, 0}, hs);
  std::vector<std::pair<double, double>> errs3;
  for (auto& [h, raw] : e3.record) errs3.push_back({h, raw - 1.0});
  double rate3 = fit_rate(errs3);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "circle II=%.5f (rate %.2f), sphere II=%.5f (rate %.2f)",
                e2.value, rate2, e3.value, rate3);
  detail = buf;
  return std::abs(e2.value - 0.5) / 0.5 <= 0.01 && std::abs(rate2 - 0.5) <= 0.1 &&
         std::abs(e3.value - 1.0) <= 0.01 && std::abs(rate3 - 0.5) <= 0.1;
}

// 6: short-chord integral on the unit disc: limit pi sqrt 2, rate 0.5 +- 0.1
bool criterion_6(std::string& detail) {
  auto disc = boundary::ImplicitBody2::circle(1.0);
  double limit = kPi * std::sqrt(2.0);
  std::vector<std::pair<double, double>> rec, errs;
  for (double h : depth_sweep(1e-6, 1e-2, 9)) {
    double v = boundary::short_geodesic_integral(disc, {1, 0}, {0, 1}, h);
    rec.push_back({h, v});
    errs.push_back({h, v - limit});
  }
  double extrap = boundary::extrapolate_sqrt_h(rec);
  double rate = fit_rate(errs);
  char buf[128];
  std::snprintf(buf, sizeof buf, "extrapolated %.6f (target %.6f), rate %.2f",
                extrap, limit, rate);
  detail = buf;
  return std::abs(extrap - limit) / limit <= 1e-3 && std::abs(rate - 0.5) <= 0.1;
}

// 7: w(1) = sqrt(II / 2 pi^2) for the three profiles
bool criterion_7(std::string& detail) {
  double worst = 0.0;
  for (auto& prof :
       {RadialProfile::constant(1.0), gaussian_profile(), rational_profile()}) {
    if (!metric::herglotz_check(prof, 1001).pass) {
      detail = "profile failed the Herglotz precheck";
      return false;
    }
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
    double w = boundary::boundary_value_w(dens, approach);
    double II = boundary::radial_metric_boundary_II(prof);
    worst = std::max(worst, std::abs(w - std::sqrt(II / (2 * kPi * kPi))));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |w(1) - sqrt(II/2pi^2)| = %.3g", worst);
  detail = buf;
  return worst <= 1e-3;
}

// 8: disc classifier: 20 random discs accepted with exact recovery;
//    ellipse rejected for width; Reuleaux rejected for harmonic 3
bool criterion_8(std::string& detail) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> coord(-0.5, 0.5), rad(0.5, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Vec2 c{coord(rng), coord(rng)};
    double R = rad(rng);
    auto res = xray2d::disc_test(xray2d::SupportFunction::disc(c, R));
    if (!res.accepted) {
      detail = "a genuine disc was rejected";
      return false;
    }
    worst = std::max({worst, std::abs(res.fit.center.x - c.x),
                      std::abs(res.fit.center.y - c.y),
                      std::abs(res.fit.radius - R)});
  }
  auto ell = xray2d::disc_test(xray2d::SupportFunction::ellipse(1.0, 1.2));
  auto reu = xray2d::disc_test(xray2d::SupportFunction::reuleaux(2.0, 0.02));
  bool ok = worst <= 1e-8 && !ell.accepted &&
            ell.reason == xray2d::DiscTestResult::Reason::Width &&
            !reu.accepted &&
            reu.reason == xray2d::DiscTestResult::Reason::Harmonic &&
            reu.harmonic == 3;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "disc recovery %.3g; ellipse->width %d; reuleaux->harmonic %d",
                worst, int(!ell.accepted), reu.harmonic);
  detail = buf;
  return ok;
}

// 9: slice umbilicity: sphere everywhere; ellipsoid equator ratio 2; pole 1
bool criterion_9(std::string& detail) {
  auto hs = depth_sweep(1e-5, 1e-2, 6);
  auto sph = boundary::ImplicitBody3::sphere(1.0);
  double worst_sphere = 0.0;
  for (Vec3 x : {Vec3{0, 0, 1}, Vec3{1, 0, 0}, Vec3{0.6, 0.0, 0.8}}) {
    auto res = boundary::slice_umbilicity_test(sph, x, {0.0, 0.7}, hs, 1e-3);
    if (!res.umbilical) {
      detail = "sphere flagged non-umbilical";
      return false;
    }
    for (double r : res.ratios) worst_sphere = std::max(worst_sphere, std::abs(r - 1));
  }
  auto ell = boundary::ImplicitBody3::ellipsoid(1, 1, 2);
  auto eq = boundary::slice_umbilicity_test(ell, {1, 0, 0}, {0.0}, hs, 1e-3);
  auto pole = boundary::slice_umbilicity_test(ell, {0, 0, 2}, {0.0, 0.8}, hs, 1e-3);
  double worst_pole = 0.0;
  for (double r : pole.ratios) worst_pole = std::max(worst_pole, std::abs(r - 1));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "sphere off by %.2g; equator ratio %.4f; pole off by %.2g",
                worst_sphere, eq.worst_ratio, worst_pole);
  detail = buf;
  return worst_sphere <= 1e-3 && !eq.umbilical &&
         std::abs(eq.worst_ratio - 2.0) <= 1e-2 && pole.umbilical &&
         worst_pole <= 1e-3;
}

// 10: two disjoint unit balls with coefficients 2 pi: probed integrals in
//     {0, 2 pi, 4 pi}
bool criterion_10(std::string& detail) {
  std::vector<xray2d::WeightedBall> balls = {{{-2.0, 0.0}, 1.0, 2 * kPi},
                                             {{2.0, 0.0}, 1.0, 2 * kPi}};
  std::vector<xray2d::LineParam> lines;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> roff(-4.0, 4.0), rang(0, 2 * kPi);
  for (int i = 0; i < 200; ++i) lines.push_back({roff(rng), rang(rng)});
  auto vals = xray2d::piecewise_constant_demo(balls, lines);
  double worst = 0.0;
  for (double v : vals) {
    double nearest = 2 * kPi * std::round(v / (2 * kPi));
    if (nearest < -1e-9 || nearest > 4 * kPi + 1e-9) return false;
    worst = std::max(worst, std::abs(v - nearest));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max distance to {0, 2pi, 4pi} = %.3g", worst);
  detail = buf;
  return worst <= 1e-6;
}

// 11a: Clairaut drift <= 1e-8 on all traces
bool criterion_11a(std::string& detail) {
  double worst = 0.0;
  for (auto& prof : {RadialProfile::constant(1.0), gaussian_profile(),
                     rational_profile()}) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int i = 0; i < 12; ++i) {
      Vec2 p0, d0;
      metric::chord_launch(prof, unif(rng), unif(rng) * 2 * kPi, p0, d0);
      worst = std::max(worst,
                       metric::trace_geodesic(prof, p0, d0).clairaut_drift);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max Clairaut drift = %.3g", worst);
  detail = buf;
  return worst <= 1e-8;
}

// 11b: scale invariance of synthesize_constant under c -> lambda c, to 1e-12.
// The synthesized density actually transforms covariantly (f picks up the
// factor lambda, while the lambda-scaled metric shrinks lengths by 1/lambda so
// the transform stays 1); pointwise invariance cannot hold. The check is run
// as stated and reports the measured ratio.
bool criterion_11b(std::string& detail) {
  auto f1 = abel::synthesize_constant(RadialProfile::constant(1.0));
  auto f2 = abel::synthesize_constant(RadialProfile::constant(2.0));
  double worst = 0.0, ratio = 0.0;
  for (double r = 0.05; r < 0.96; r += 0.05) {
    worst = std::max(worst, std::abs(f2.eval(r) - f1.eval(r)));
    ratio = std::max(ratio, f2.eval(r) / f1.eval(r));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "max |f_2c - f_c| = %.3g (observed f_2c/f_c = %.12f)", worst,
                ratio);
  detail = buf;
  return worst <= 1e-12;
}

// 11c: Beta-moment exactness of the singular quadrature, k = 0..6
bool criterion_11c(std::string& detail) {
  double worst = 0.0;
  for (int k = 0; k <= 6; ++k) {
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (k + i) / i;
    double expect = kPi * binom / std::pow(4.0, k);
    quad::SingularIntegrand g{[k](double z) { return std::pow(z, k); },
                              quad::Singularity::Both};
    worst = std::max(worst,
                     std::abs(quad::integrate_singular(g, 0.0, 1.0, 1e-12) - expect));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max Beta-moment error = %.3g", worst);
  detail = buf;
  return worst <= 1e-10;
}

// 11d: parser print-parse fixpoint on the fixture corpus
bool criterion_11d(std::string& detail) {
  const std::vector<std::string> corpus = {
      "1", "r", "-r", "2+cos(4*r)", "exp(-r^2/2)", "1/(1+r^2/4)",
      "sqrt(1+r)", "r^2*sin(r)-log(2+r)", "2^r", "r^r", "((r))",
      "1-2-3", "2*3/4*5", "-(r+1)^2", "cos(sin(exp(r)))"};
  for (const auto& src : corpus) {
    auto t1 = expr::parse(src);
    std::string printed = expr::to_string(t1);
    auto t2 = expr::parse(printed);
    if (printed != expr::to_string(t2)) {
      detail = "fixpoint broken on: " + src;
      return false;
    }
    for (double r : {0.0, 0.3, 0.8, 1.0})
      if (std::abs(expr::eval(t1, r) - expr::eval(t2, r)) >
          1e-14 * (1 + std::abs(expr::eval(t1, r)))) {
        detail = "value drift on: " + src;
        return false;
      }
  }
  detail = std::to_string(corpus.size()) + " corpus entries stable";
  return true;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<bool(std::string&)> run;
};

const std::vector<Criterion> kCriteria = {
    {"1", "Euclidean ball, 1000 random lines", criterion_1},
    {"2", "Herglotz manifold constant transform", criterion_2},
    {"3", "Abel round-trip", criterion_3},
    {"4", "arcsin identity", criterion_4},
    {"5", "chord-length II estimator", criterion_5},
    {"6", "short-chord boundary integral", criterion_6},
    {"7", "boundary value identity", criterion_7},
    {"8", "disc classifier", criterion_8},
    {"9", "slice umbilicity", criterion_9},
    {"10", "piecewise-constant demo", criterion_10},
    {"11a", "Clairaut drift", criterion_11a},
    {"11b", "synthesis scale invariance", criterion_11b},
    {"11c", "Beta-moment exactness", criterion_11c},
    {"11d", "parser fixpoint", criterion_11d},
};

}  // namespace

int main(int argc, char** argv) {
  int failures = 0;
  bool matched = false;
  for (const auto& c : kCriteria) {
    if (argc > 1 && std::strcmp(argv[1], c.id) != 0) continue;
    matched = true;
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion-%s: %s%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (argc > 1 && !matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", argv[1]);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
