#include "geoxray/abel.hpp"

#include <algorithm>
#include <cmath>

#include "geoxray/quadrature.hpp"

namespace geoxray::abel {

using metric::RadialProfile;

namespace {

constexpr double kPi = 3.14159265358979323846;

// rho^{-1}(p) to near machine precision (safeguarded Newton).
double rho_inverse(const RadialProfile& c, double p) {
  double rho1 = c.rho(1.0);
  p = std::clamp(p, 1e-300, rho1);
  if (p == rho1) return 1.0;
  double lo = 0.0, hi = 1.0;
  double s = p / rho1;
  for (int iter = 0; iter < 100; ++iter) {
    double f = c.rho(s) - p;
    if (f > 0.0)
      hi = s;
    else
      lo = s;
    double dp = c.rho_deriv(s);
    if (!(dp > 0.0))
      throw metric::HerglotzViolationError("rho not increasing at r=" +
                                           std::to_string(s));
    double next = s - f / dp;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15 * (1.0 + s)) return next;
    s = next;
  }
  return s;
}

}  // namespace

double abel_forward(const RadialDensity& f, const RadialProfile& profile,
                    double s, double tol) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::out_of_range("abel_forward: s outside (0,1)");
  const double rho_s = profile.rho(s);
  const double rho_1 = profile.rho(1.0);
  auto raw_over_sqrt_left = [&](double u) {
    // Integrand in u = rho(r) with the (u - rho(s))^{-1/2} factor removed.
    double r = rho_inverse(profile, u);
    double c = profile.checked(r);
    double dp = profile.rho_deriv(r);
    return 2.0 * f.eval(r) * u / (c * dp * std::sqrt(u + rho_s));
  };
  if (f.boundary_blowup) {
    quad::SingularIntegrand g{
        [&](double u) { return raw_over_sqrt_left(u) * std::sqrt(rho_1 - u); },
        quad::Singularity::Both};
    return quad::integrate_singular(g, rho_s, rho_1, tol);
  }
  quad::SingularIntegrand g{raw_over_sqrt_left, quad::Singularity::Left};
  return quad::integrate_singular(g, rho_s, rho_1, tol);
}

namespace {

// Inner integral of the inversion formula.
double inversion_integral(const std::function<double(double)>& A,
                          const RadialProfile& c, double x,
                          InversionVariant variant, double tol) {
  double rho_x = c.rho(x);
  double rho_1 = c.rho(1.0);
  if (variant == InversionVariant::ProofKernel) {
    // u = rho(z)/rho(x):  F = int_1^U A(z(u)) / (u sqrt(u^2-1)) du
    double U = rho_1 / rho_x;
    quad::SingularIntegrand g{
        [&](double u) {
          double z = rho_inverse(c, u * rho_x);
          return A(z) / (u * std::sqrt(u + 1.0));
        },
        quad::Singularity::Left};
    return quad::integrate_singular(g, 1.0, U, tol);
  }
  // Printed kernel: rho'(x)/rho(x) sits outside the z-integral.
  quad::SingularIntegrand g{
      [&](double z) {
        double q = c.rho(z) / rho_x;
        return A(z) * std::sqrt((z - x) / (q * q - 1.0));
      },
      quad::Singularity::Left};
  double inner = quad::integrate_singular(g, x, 1.0, tol);
  return c.rho_deriv(x) / rho_x * inner;
}

}  // namespace

double abel_inverse(const std::function<double(double)>& A,
                    const RadialProfile& profile, double r,
                    InversionVariant variant, double tol) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::out_of_range("abel_inverse: r outside (0,1)");
  double h0 = 1e-4 * (1.0 - r);
  if (h0 < 1e-12)
    throw std::runtime_error("abel_inverse: differentiation step underflow near r=1");
  auto F = [&](double x) {
    return inversion_integral(A, profile, x, variant, tol);
  };
  auto central = [&](double h) { return (F(r + h) - F(r - h)) / (2.0 * h); };
  double d1 = central(h0);
  double d2 = central(0.5 * h0);
  double dF = (4.0 * d2 - d1) / 3.0;  // two-level Richardson
  return -(profile.checked(r) / kPi) * dF;
}

RadialDensity synthesize_constant(const RadialProfile& profile) {
  double rho_1 = profile.rho(1.0);
  // Herglotz gives rho(r) < rho(1) strictly in the interior; a vanishing
  // radicand there flags a violated profile.
  for (int i = 0; i < 1024; ++i) {
    double r = double(i) / 1024.0;
    if (!(profile.rho_deriv(r) > 0.0) || !(rho_1 * rho_1 - std::pow(profile.rho(r), 2) > 0.0))
      throw SynthesisError("synthesize_constant: Herglotz condition fails", r);
  }
  RadialProfile c = profile;
  auto eval = [c, rho_1](double r) {
    // (c - r c')/(pi c sqrt(c(1)^{-2} - (r/c)^2)) = c rho' / (pi sqrt(rho1^2 - rho^2))
    double rho_r = c.rho(r);
    double rad = std::max(rho_1 * rho_1 - rho_r * rho_r, 1e-300);
    return c.checked(r) * c.rho_deriv(r) / (kPi * std::sqrt(rad));
  };
  RadialDensity out;
  out.eval = eval;
  out.boundary_blowup = true;
  out.smooth_factor = [c, eval](double r) {
    return eval(r) * std::sqrt(metric::boundary_distance(c, r));
  };
  return out;
}

double arcsin_identity_deviation(const RadialProfile& profile, double x,
                                 double tol) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::out_of_range("arcsin_identity_deviation: x outside (0,1)");
  double rho_x = profile.rho(x);
  double rho_1 = profile.rho(1.0);
  quad::SingularIntegrand g{
      [&](double z) {
        double q = profile.rho(z) / rho_x;
        return profile.rho_deriv(z) / profile.rho(z) *
               std::sqrt((z - x) / (q * q - 1.0));
      },
      quad::Singularity::Left};
  double integral = quad::integrate_singular(g, x, 1.0, tol);
  return integral - (0.5 * kPi - std::asin(rho_x / rho_1));
}

}  // namespace geoxray::abel
