#include "geoxray/xray2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geoxray/quadrature.hpp"

namespace geoxray::xray2d {

namespace {
constexpr double kPi = SupportFunction::kPi;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

SupportFunction::SupportFunction(std::vector<double> samples)
    : samples_(std::move(samples)) {
  int n = int(samples_.size());
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("SupportFunction: need an even grid of >= 8 samples");
  int half = n / 2;
  cos_coef_.assign(half + 1, 0.0);
  sin_coef_.assign(half + 1, 0.0);
  for (int k = 0; k <= half; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < n; ++j) {
      double ang = kTwoPi * k * j / n;
      ac += samples_[j] * std::cos(ang);
      as += samples_[j] * std::sin(ang);
    }
    double scale = (k == 0 || k == half) ? 1.0 / n : 2.0 / n;
    cos_coef_[k] = scale * ac;
    sin_coef_[k] = scale * as;
  }
}

double SupportFunction::value(double theta) const {
  int half = int(cos_coef_.size()) - 1;
  double v = cos_coef_[0];
  for (int k = 1; k <= half; ++k)
    v += cos_coef_[k] * std::cos(k * theta) + sin_coef_[k] * std::sin(k * theta);
  return v;
}

double SupportFunction::derivative(double theta) const {
  int half = int(cos_coef_.size()) - 1;
  double v = 0.0;
  for (int k = 1; k <= half; ++k)
    v += k * (-cos_coef_[k] * std::sin(k * theta) + sin_coef_[k] * std::cos(k * theta));
  return v;
}

double SupportFunction::second_derivative(double theta) const {
  int half = int(cos_coef_.size()) - 1;
  double v = 0.0;
  for (int k = 1; k <= half; ++k)
    v -= double(k) * k *
         (cos_coef_[k] * std::cos(k * theta) + sin_coef_[k] * std::sin(k * theta));
  return v;
}

Vec2 SupportFunction::boundary_point(double theta) const {
  Vec2 v = unit_vector(theta);
  Vec2 w{-v.y, v.x};
  return value(theta) * v + derivative(theta) * w;
}

double SupportFunction::convexity_margin() const {
  int n = grid_size();
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double th = kTwoPi * j / n;
    margin = std::min(margin, value(th) + second_derivative(th));
  }
  return margin;
}

void SupportFunction::fourier(std::vector<double>& cos_coef,
                              std::vector<double>& sin_coef) const {
  cos_coef = cos_coef_;
  sin_coef = sin_coef_;
}

SupportFunction SupportFunction::disc(Vec2 center, double radius, int n) {
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    double th = kTwoPi * j / n;
    h[j] = radius + center.dot(unit_vector(th));
  }
  return SupportFunction(std::move(h));
}

SupportFunction SupportFunction::ellipse(double semi_a, double semi_b, int n) {
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    double th = kTwoPi * j / n;
    double c = std::cos(th), s = std::sin(th);
    h[j] = std::sqrt(semi_a * semi_a * c * c + semi_b * semi_b * s * s);
  }
  return SupportFunction(std::move(h));
}

SupportFunction SupportFunction::reuleaux(double w, double eps, int n) {
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    double th = kTwoPi * j / n;
    h[j] = 0.5 * w + eps * std::cos(3.0 * th);
  }
  return SupportFunction(std::move(h));
}

SupportFunction SupportFunction::from_points(const std::vector<Vec2>& pts, int n) {
  if (pts.empty()) throw std::invalid_argument("from_points: empty point set");
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) {
    Vec2 v = unit_vector(kTwoPi * j / n);
    double m = -std::numeric_limits<double>::infinity();
    for (const Vec2& p : pts) m = std::max(m, p.dot(v));
    h[j] = m;
  }
  return SupportFunction(std::move(h));
}

ChordSpan chord_span(const SupportFunction& dom, const LineParam& L) {
  double av = dom.a(L.theta), bv = dom.b(L.theta);
  if (!(L.r > av) || !(L.r < bv)) return {};
  // The boundary point with normal angle phi sits on L iff
  //   g(phi) = h(phi) cos(phi-theta) - h'(phi) sin(phi-theta) = r,
  // and g is monotone on each half because g' = -(h+h'') sin(phi-theta).
  auto g = [&](double phi) {
    double d = phi - L.theta;
    return dom.value(phi) * std::cos(d) - dom.derivative(phi) * std::sin(d);
  };
  auto solve = [&](double lo, double hi, bool decreasing) {
    for (int i = 0; i < 90; ++i) {
      double mid = 0.5 * (lo + hi);
      bool above = g(mid) > L.r;
      if (above == decreasing)
        lo = mid;
      else
        hi = mid;
      if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
  };
  double phi_plus = solve(L.theta, L.theta + kPi, true);
  double phi_minus = solve(L.theta - kPi, L.theta, false);
  Vec2 dir = L.direction();
  double ta = dom.boundary_point(phi_plus).dot(dir);
  double tb = dom.boundary_point(phi_minus).dot(dir);
  ChordSpan span;
  span.t0 = std::min(ta, tb);
  span.t1 = std::max(ta, tb);
  span.hits = span.t1 > span.t0;
  return span;
}

double line_integral(const PlanarDensity& f, const SupportFunction& dom,
                     const LineParam& L, double tol) {
  ChordSpan span = chord_span(dom, L);
  if (!span.hits) return 0.0;
  if (!f.boundary_blowup) {
    return quad::integrate_adaptive(
        [&](double t) { return f.eval(L.point(t)); }, span.t0, span.t1, tol);
  }
  quad::SingularIntegrand g{
      [&](double t) {
        return f.eval(L.point(t)) * std::sqrt((t - span.t0) * (span.t1 - t));
      },
      quad::Singularity::Both};
  return quad::integrate_singular(g, span.t0, span.t1, tol);
}

double moment(const PlanarDensity& f, const SupportFunction& dom, double theta,
              MomentWeight w, int power, double tol) {
  double av = dom.a(theta), bv = dom.b(theta);
  auto weight = [&](double r) {
    switch (w) {
      case MomentWeight::Const: return 1.0;
      case MomentWeight::Linear: return r;
      case MomentWeight::Power: return std::pow(r, power);
    }
    return 0.0;
  };
  return quad::integrate_adaptive(
      [&](double r) {
        return line_integral(f, dom, {r, theta}, tol * 1e-2) * weight(r);
      },
      av, bv, tol);
}

WidthTestResult constant_width_test(const SupportFunction& dom, double tol) {
  int n = dom.grid_size();
  const auto& h = dom.samples();
  int half = n / 2;
  double mean = 0.0;
  for (int j = 0; j < half; ++j) mean += h[j] + h[j + half];
  mean /= half;
  WidthTestResult res;
  res.width = mean;
  for (int j = 0; j < half; ++j) {
    double dev = std::abs(h[j] + h[j + half] - mean);
    if (dev > res.max_deviation) {
      res.max_deviation = dev;
      res.witness_theta = kTwoPi * j / n;
    }
  }
  res.pass = res.max_deviation <= tol;
  return res;
}

DiscTestResult disc_test(const SupportFunction& dom, double tol) {
  DiscTestResult out;
  double scale = std::max(1e-300, std::abs(constant_width_test(dom, 1.0).width));
  out.width_test = constant_width_test(dom, tol * scale);
  if (!out.width_test.pass) {
    out.reason = DiscTestResult::Reason::Width;
    return out;
  }
  double w = out.width_test.width;
  // Fourier series of a(theta) + w/2; a disc leaves only degree 1.
  int n = dom.grid_size();
  const auto& h = dom.samples();
  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) a[j] = -h[(j + n / 2) % n] + 0.5 * w;
  SupportFunction series(a);  // reuse the DFT
  std::vector<double> ck, sk;
  series.fourier(ck, sk);
  int half = n / 2;
  out.fit.residual = std::abs(ck[0]);
  int bad = 0;
  for (int k = 0; k <= half; ++k) {
    if (k == 1) continue;
    double mag = std::hypot(ck[k], k == 0 || k == half ? 0.0 : sk[k]);
    out.fit.residual = std::max(out.fit.residual, mag);
    if (bad == 0 && mag > tol * w) bad = std::max(k, 2);
  }
  if (bad != 0) {
    out.reason = DiscTestResult::Reason::Harmonic;
    out.harmonic = bad;
    return out;
  }
  out.accepted = true;
  out.fit.center = {ck[1], sk[1]};
  out.fit.radius = 0.5 * w;
  return out;
}

double BallDensity::eval_at_distance(double dist) const {
  if (dist >= radius) return 0.0;
  return 1.0 / (kPi * std::sqrt(radius * radius - dist * dist));
}

PlanarDensity BallDensity::as_density() const {
  BallDensity b = *this;
  return {[b](Vec2 x) { return b.eval(x); }, true};
}

BallDensity ball_density(int n, Vec2 center, double radius) {
  if (n < 2) throw std::invalid_argument("ball_density: dimension must be >= 2");
  if (!(radius > 0.0)) throw std::invalid_argument("ball_density: radius must be positive");
  return {n, center, radius};
}

std::vector<double> piecewise_constant_demo(const std::vector<WeightedBall>& balls,
                                            const std::vector<LineParam>& lines,
                                            double tol) {
  std::vector<double> out;
  out.reserve(lines.size());
  for (const LineParam& L : lines) {
    double total = 0.0;
    for (const WeightedBall& wb : balls) {
      double d = std::abs(wb.center.dot(L.normal()) - L.r);
      if (d >= wb.radius) continue;
      double half = std::sqrt(wb.radius * wb.radius - d * d);
      double tc = wb.center.dot(L.direction());
      BallDensity bd{2, wb.center, wb.radius};
      quad::SingularIntegrand g{
          [&](double t) {
            return bd.eval(L.point(t)) *
                   std::sqrt((t - (tc - half)) * (tc + half - t));
          },
          quad::Singularity::Both};
      total += wb.coefficient * quad::integrate_singular(g, tc - half, tc + half, tol);
    }
    out.push_back(total);
  }
  return out;
}

}  // namespace geoxray::xray2d
