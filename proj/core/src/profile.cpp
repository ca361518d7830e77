#include "geoxray/profile.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "geoxray/quadrature.hpp"

namespace geoxray::metric {

RadialProfile RadialProfile::constant(double c0) {
  if (!(c0 > 0.0)) throw InvalidProfileError("constant profile must be positive");
  return {[c0](double) { return c0; }, [](double) { return 0.0; }, Source::Named};
}

RadialProfile RadialProfile::from_callables(std::function<double(double)> c,
                                            std::function<double(double)> dc,
                                            Source src) {
  return {std::move(c), std::move(dc), src};
}

namespace {

// Natural cubic spline, small and self-contained.
struct Spline {
  std::vector<double> x, y, m;  // m: second derivatives at knots

  double eval(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
    if (i >= x.size() - 1) i = x.size() - 2;
    double h = x[i + 1] - x[i];
    double a = (x[i + 1] - t) / h, b = (t - x[i]) / h;
    return a * y[i] + b * y[i + 1] +
           ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
  }

  double deriv(double t) const {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
    if (i >= x.size() - 1) i = x.size() - 2;
    double h = x[i + 1] - x[i];
    double a = (x[i + 1] - t) / h, b = (t - x[i]) / h;
    return (y[i + 1] - y[i]) / h +
           ((3 * b * b - 1) * m[i + 1] - (3 * a * a - 1) * m[i]) * h / 6.0;
  }
};

Spline build_spline(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  Spline s{x, y, std::vector<double>(n, 0.0)};
  if (n < 3) return s;
  std::vector<double> sub(n), diag(n), sup(n), rhs(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
    sub[i] = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    sup[i] = h1 / 6.0;
    rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
  }
  // Thomas algorithm on interior unknowns, natural ends m[0]=m[n-1]=0.
  for (std::size_t i = 2; i + 1 < n; ++i) {
    double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    double upper = (i + 2 < n) ? sup[i] * s.m[i + 1] : 0.0;
    s.m[i] = (rhs[i] - upper) / diag[i];
    if (i == 1) break;
  }
  return s;
}

}  // namespace

RadialProfile RadialProfile::from_samples(const std::vector<double>& r,
                                          const std::vector<double>& c) {
  if (r.size() != c.size() || r.size() < 2)
    throw InvalidProfileError("profile samples: need matching (r,c) lists, >=2 rows");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1]))
      throw InvalidProfileError("profile samples: r must be strictly increasing");
  for (double v : c)
    if (!(v > 0.0)) throw InvalidProfileError("profile samples: c must be positive");
  auto spline = std::make_shared<Spline>(build_spline(r, c));
  return {[spline](double t) { return spline->eval(t); },
          [spline](double t) { return spline->deriv(t); }, Source::Samples};
}

HerglotzResult herglotz_check(const RadialProfile& profile, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("herglotz_check: grid_size < 2");
  for (int i = 0; i < grid_size; ++i) {
    double r = double(i) / (grid_size - 1);
    double dp = profile.rho_deriv(r);  // throws InvalidProfileError if c <= 0
    if (!(dp > 0.0)) return {false, r, dp};
  }
  return {true, 0.0, 0.0};
}

double turning_radius(const RhoFunction& rho, double p, double tol) {
  double rho1 = rho.eval(1.0);
  if (!(p > 0.0) || !(p < rho1))
    throw std::out_of_range("turning_radius: p outside (0, rho(1))");
  double lo = 0.0, hi = 1.0;
  double s = p / rho1;  // exact for constant profiles, decent start otherwise
  for (int iter = 0; iter < 200; ++iter) {
    double f = rho.eval(s) - p;
    if (f > 0.0)
      hi = s;
    else
      lo = s;
    double dp = rho.deriv(s);
    if (!(dp > 0.0))
      throw HerglotzViolationError("turning_radius: rho'(s) <= 0 at s=" +
                                   std::to_string(s));
    double step = f / dp;
    double next = s - step;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);  // bisect fallback
    if (std::abs(next - s) <= tol) {
      s = next;
      break;
    }
    s = next;
  }
  if (!(rho.eval(std::min(1.0, s + 64 * tol)) >= rho.eval(std::max(0.0, s - 64 * tol))))
    throw HerglotzViolationError("turning_radius: rho not monotone near s");
  return s;
}

double turning_radius(const RadialProfile& profile, double p, double tol) {
  return turning_radius(RhoFunction::from_profile(profile), p, tol);
}

double boundary_distance(const RadialProfile& profile, double r) {
  if (r < 0.0 || r > 1.0)
    throw std::out_of_range("boundary_distance: r outside [0,1]");
  if (r == 1.0) return 0.0;
  return quad::integrate_adaptive(
      [&](double t) { return 1.0 / profile.checked(t); }, r, 1.0, 1e-12);
}

}  // namespace geoxray::metric
