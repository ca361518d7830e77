#include "geoxray/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "geoxray/geodesic.hpp"
#include "geoxray/quadrature.hpp"

namespace geoxray::boundary {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Vec3 ImplicitBody3::gradient(Vec3 p) const {
  if (grad) return grad(p);
  const double e = 1e-6;
  return {(phi({p.x + e, p.y, p.z}) - phi({p.x - e, p.y, p.z})) / (2 * e),
          (phi({p.x, p.y + e, p.z}) - phi({p.x, p.y - e, p.z})) / (2 * e),
          (phi({p.x, p.y, p.z + e}) - phi({p.x, p.y, p.z - e})) / (2 * e)};
}

Vec2 ImplicitBody2::gradient(Vec2 p) const {
  if (grad) return grad(p);
  const double e = 1e-6;
  return {(phi({p.x + e, p.y}) - phi({p.x - e, p.y})) / (2 * e),
          (phi({p.x, p.y + e}) - phi({p.x, p.y - e})) / (2 * e)};
}

ImplicitBody3 ImplicitBody3::sphere(double radius, Vec3 center) {
  return {[=](Vec3 p) { return (p - center).dot(p - center) - radius * radius; },
          [=](Vec3 p) { return 2.0 * (p - center); }};
}

ImplicitBody3 ImplicitBody3::ellipsoid(double a, double b, double c) {
  return {[=](Vec3 p) {
            return p.x * p.x / (a * a) + p.y * p.y / (b * b) +
                   p.z * p.z / (c * c) - 1.0;
          },
          [=](Vec3 p) {
            return Vec3{2 * p.x / (a * a), 2 * p.y / (b * b), 2 * p.z / (c * c)};
          }};
}

ImplicitBody2 ImplicitBody2::circle(double radius, Vec2 center) {
  return {[=](Vec2 p) { return (p - center).dot(p - center) - radius * radius; },
          [=](Vec2 p) { return 2.0 * (p - center); },
          [=](Vec2 p) { return radius - (p - center).norm(); }};
}

ImplicitBody2 ImplicitBody2::from_support(const xray2d::SupportFunction& dom) {
  auto support_gap = [dom](Vec2 x, double* normal_angle) {
    // max over phi of <x, v_phi> - h(phi), grid argmax refined by Newton.
    int n = dom.grid_size();
    double best = -std::numeric_limits<double>::infinity();
    double best_phi = 0.0;
    for (int j = 0; j < n; ++j) {
      double phi = 2.0 * kPi * j / n;
      double v = x.dot(unit_vector(phi)) - dom.value(phi);
      if (v > best) {
        best = v;
        best_phi = phi;
      }
    }
    double phi = best_phi;
    for (int it = 0; it < 30; ++it) {
      Vec2 vp = unit_vector(phi);
      Vec2 wp{-vp.y, vp.x};
      double d1 = x.dot(wp) - dom.derivative(phi);
      double d2 = -x.dot(vp) - dom.second_derivative(phi);
      if (!(d2 < 0.0)) break;
      double step = d1 / d2;
      phi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (normal_angle) *normal_angle = phi;
    return x.dot(unit_vector(phi)) - dom.value(phi);
  };
  ImplicitBody2 body;
  body.phi = [support_gap](Vec2 x) { return support_gap(x, nullptr); };
  body.grad = [support_gap](Vec2 x) {
    double phi = 0.0;
    support_gap(x, &phi);
    return unit_vector(phi);
  };
  return body;
}

namespace {

template <typename Body, typename Vec>
double half_chord(const Body& body, Vec base, Vec v) {
  if (!body.contains(base)) throw ProbeError("chord probe: base point not inside");
  double hi = 1e-6;
  int guard = 0;
  while (body.contains(base + hi * v)) {
    hi *= 2.0;
    if (++guard > 80) throw ProbeError("chord probe: body appears unbounded");
  }
  double lo = hi * 0.5 < 1e-6 ? 0.0 : hi * 0.5;
  for (int i = 0; i < 90; ++i) {
    double mid = 0.5 * (lo + hi);
    if (body.contains(base + mid * v))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

template <typename Body, typename Vec>
double chord_length_impl(const Body& body, Vec x, Vec v, double h) {
  Vec nu = body.inward_normal(x);
  Vec base = x + h * nu;
  if (!body.contains(base))
    throw ProbeError("chord probe: depth h leaves the body");
  return half_chord(body, base, v) + half_chord(body, base, -v);
}

template <typename Body, typename Vec>
SecondFundamentalFormEstimate estimate_II_impl(const Body& body, Vec x, Vec v,
                                               const std::vector<double>& depths) {
  if (depths.empty()) throw std::invalid_argument("estimate_II_chords: no depths");
  SecondFundamentalFormEstimate est;
  for (double h : depths) {
    double l = chord_length_impl(body, x, v, h);
    est.record.emplace_back(h, 8.0 * h / (l * l));
  }
  est.value = extrapolate_sqrt_h(est.record);
  return est;
}

}  // namespace

double chord_length(const ImplicitBody3& body, Vec3 x, Vec3 v, double h) {
  return chord_length_impl(body, x, v.normalized(), h);
}

double chord_length(const ImplicitBody2& body, Vec2 x, Vec2 v, double h) {
  return chord_length_impl(body, x, v.normalized(), h);
}

SecondFundamentalFormEstimate estimate_II_chords(const ImplicitBody3& body,
                                                 Vec3 x, Vec3 v,
                                                 const std::vector<double>& depths) {
  return estimate_II_impl(body, x, v.normalized(), depths);
}

SecondFundamentalFormEstimate estimate_II_chords(const ImplicitBody2& body,
                                                 Vec2 x, Vec2 v,
                                                 const std::vector<double>& depths) {
  return estimate_II_impl(body, x, v.normalized(), depths);
}

double radial_metric_boundary_II(const metric::RadialProfile& profile) {
  // In boundary normal coordinates g_themetatheta = rho(r)^2 and
  // d/dx0 = -c d/dr, so II = c rho'/rho at r=1.
  double c1 = profile.checked(1.0);
  return c1 * c1 * profile.rho_deriv(1.0);
}

double extrapolate_sqrt_h(const std::vector<std::pair<double, double>>& record) {
  if (record.empty()) throw std::invalid_argument("extrapolate_sqrt_h: empty record");
  if (record.size() == 1) return record[0].second;
  auto sorted = record;
  std::sort(sorted.begin(), sorted.end());
  double s1 = std::sqrt(sorted[0].first), v1 = sorted[0].second;
  double s2 = std::sqrt(sorted[1].first), v2 = sorted[1].second;
  return (v1 * s2 - v2 * s1) / (s2 - s1);
}

double short_geodesic_integral(const ImplicitBody2& body, Vec2 x, Vec2 v,
                               double h, double tol) {
  if (!body.boundary_dist)
    throw std::invalid_argument("short_geodesic_integral: body lacks a boundary distance");
  Vec2 nu = body.inward_normal(x);
  Vec2 vv = v.normalized();
  Vec2 base = x + h * nu;
  if (!body.contains(base)) throw ProbeError("short geodesic: depth h leaves the body");
  double tp = half_chord(body, base, vv);
  double tm = half_chord(body, base, -vv);
  // The ratio (t+tm)(tp-t)/d(t) has finite endpoint limits but both factors
  // vanish there; evaluate a margin inside the chord so the absolute ~1e-16
  // noise of the distance callable stays far below d itself. The freeze
  // biases the result by O(delta/span), a few parts in 1e8.
  double delta = 3e-6 * (tm + tp);
  quad::SingularIntegrand g{
      [&, delta](double t) {
        double tc = std::clamp(t, -tm + delta, tp - delta);
        double d = std::max(body.boundary_dist(base + tc * vv), 1e-300);
        return std::sqrt((tc + tm) * (tp - tc) / d);
      },
      quad::Singularity::Both};
  return quad::integrate_singular(g, -tm, tp, tol);
}

double short_geodesic_integral(const metric::RadialProfile& profile, double h,
                               double tol) {
  // Radius at boundary distance h.
  double lo = 0.0, hi = 1.0;
  if (metric::boundary_distance(profile, 0.0) <= h)
    throw ProbeError("short geodesic: depth h exceeds the radial distance to the center");
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    double mid = 0.5 * (lo + hi);
    if (metric::boundary_distance(profile, mid) > h)
      lo = mid;
    else
      hi = mid;
  }
  double r_h = 0.5 * (lo + hi);
  // Tangential launch; by symmetry the two halves are congruent.
  metric::TracedGeodesic tr =
      metric::trace_geodesic_from(profile, {r_h, 0.0}, {0.0, 1.0});
  double T = tr.length;
  double delta = 1e-8 * T;
  quad::SingularIntegrand g{
      [&, delta](double t) {
        double tc = std::min(t, T - delta);
        double r = std::min(tr.position(tc).norm(), 1.0);
        double d = std::max(metric::boundary_distance(profile, r), 1e-300);
        return std::sqrt((T - tc) / d);
      },
      quad::Singularity::Right};
  return 2.0 * quad::integrate_singular(g, 0.0, T, tol);
}

double boundary_value_w(const BlowupDensity& f, const std::vector<Vec2>& approach) {
  if (approach.size() < 3)
    throw std::invalid_argument("boundary_value_w: need at least 3 approach points");
  if (!f.blowup || !f.boundary_dist)
    throw NoBlowupFactorizationError("boundary_value_w: density carries no factorization");
  std::vector<std::pair<double, double>> record;
  for (Vec2 p : approach) {
    double d = f.boundary_dist(p);
    if (!(d > 0.0))
      throw std::invalid_argument("boundary_value_w: approach point not interior");
    record.emplace_back(d, f.eval(p) * std::sqrt(d));
  }
  std::sort(record.begin(), record.end());
  double ext1 = extrapolate_sqrt_h(record);
  // Drop the closest point and re-extrapolate as a Cauchy check.
  std::vector<std::pair<double, double>> tail(record.begin() + 1, record.end());
  double ext2 = extrapolate_sqrt_h(tail);
  if (std::abs(ext1 - ext2) > 1e-2 * (1.0 + std::abs(ext1)))
    throw NoBlowupFactorizationError("boundary_value_w: approach values are not Cauchy");
  return ext1;
}

namespace {

// Least-squares conic A u^2 + B uw + C w^2 + D u + E w = 1 through the
// sampled slice boundary, solved by normal equations.
SliceFit fit_ellipse(const std::vector<Vec2>& pts, double depth) {
  std::array<std::array<double, 5>, 5> M{};
  std::array<double, 5> rhs{};
  for (const Vec2& p : pts) {
    std::array<double, 5> row{p.x * p.x, p.x * p.y, p.y * p.y, p.x, p.y};
    for (int i = 0; i < 5; ++i) {
      rhs[i] += row[i];
      for (int j = 0; j < 5; ++j) M[i][j] += row[i] * row[j];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    std::swap(rhs[col], rhs[piv]);
    if (std::abs(M[col][col]) < 1e-14)
      throw FitError("slice fit: degenerate conic system");
    for (int r = 0; r < 5; ++r) {
      if (r == col) continue;
      double fct = M[r][col] / M[col][col];
      for (int j = col; j < 5; ++j) M[r][j] -= fct * M[col][j];
      rhs[r] -= fct * rhs[col];
    }
  }
  double A = rhs[0] / M[0][0], B = rhs[1] / M[1][1], C = rhs[2] / M[2][2],
         D = rhs[3] / M[3][3], E = rhs[4] / M[4][4];
  // Center: stationary point of the quadratic.
  double det = 4 * A * C - B * B;
  if (!(det > 0.0)) throw FitError("slice fit: not an ellipse");
  double cu = (-2 * C * D + B * E) / det;
  double cw = (-2 * A * E + B * D) / det;
  double G = 1.0 - (A * cu * cu + B * cu * cw + C * cw * cw + D * cu + E * cw);
  double mean = 0.5 * (A + C);
  double diff = std::sqrt(0.25 * (A - C) * (A - C) + 0.25 * B * B);
  double l1 = mean - diff, l2 = mean + diff;  // l1 <= l2
  if (!(l1 > 0.0) || !(G > 0.0)) throw FitError("slice fit: not an ellipse");
  SliceFit fit;
  fit.depth = depth;
  fit.semi_minor = std::sqrt(G / l2);
  fit.semi_major = std::sqrt(G / l1);
  fit.axis_ratio = fit.semi_major / fit.semi_minor;
  return fit;
}

}  // namespace

SliceTestResult slice_umbilicity_test(const ImplicitBody3& body, Vec3 x,
                                      const std::vector<double>& plane_angles,
                                      const std::vector<double>& depths,
                                      double tol) {
  Vec3 nu = body.inward_normal(x);
  // Tangent basis.
  Vec3 seed = std::abs(nu.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = (seed - nu.dot(seed) * nu).normalized();
  Vec3 e2 = nu.cross(e1);

  SliceTestResult out;
  out.tol = tol;
  const int rays = 64;
  std::vector<double> angles = plane_angles.empty() ? std::vector<double>{0.0}
                                                    : plane_angles;
  for (std::size_t pi_idx = 0; pi_idx < angles.size(); ++pi_idx) {
    double a = angles[pi_idx];
    Vec3 E1 = std::cos(a) * e1 + std::sin(a) * e2;
    Vec3 E2 = -std::sin(a) * e1 + std::cos(a) * e2;
    std::vector<std::pair<double, double>> ratio_record;
    for (double h : depths) {
      Vec3 q0 = x + h * nu;
      if (!body.contains(q0))
        throw FitError("slice test: depth h leaves the body");
      std::vector<Vec2> pts;
      pts.reserve(rays);
      for (int j = 0; j < rays; ++j) {
        double psi = 2.0 * kPi * j / rays;
        Vec3 dir = std::cos(psi) * E1 + std::sin(psi) * E2;
        double len = half_chord(body, q0, dir);
        pts.push_back({len * std::cos(psi), len * std::sin(psi)});
      }
      SliceFit fit = fit_ellipse(pts, h);
      out.fits.push_back(fit);
      ratio_record.emplace_back(h, fit.axis_ratio);
    }
    double limit = extrapolate_sqrt_h(ratio_record);
    out.ratios.push_back(limit);
    if (std::abs(limit - 1.0) > std::abs(out.worst_ratio - 1.0)) {
      out.worst_ratio = limit;
      if (std::abs(limit - 1.0) > tol) out.witness_plane = int(pi_idx);
    }
  }
  out.umbilical = true;
  for (std::size_t i = 0; i < out.ratios.size(); ++i) {
    if (std::abs(out.ratios[i] - 1.0) > tol) {
      out.umbilical = false;
      if (out.witness_plane < 0) out.witness_plane = int(i);
    }
  }
  return out;
}

}  // namespace geoxray::boundary
