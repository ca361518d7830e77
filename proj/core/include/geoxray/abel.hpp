#ifndef GEOXRAY_ABEL_HPP
#define GEOXRAY_ABEL_HPP

#include <functional>
#include <stdexcept>

#include "geoxray/profile.hpp"

namespace geoxray::abel {

class SynthesisError : public std::runtime_error {
 public:
  SynthesisError(const std::string& msg, double r)
      : std::runtime_error(msg), witness_r(r) {}
  double witness_r;
};

/// A radial function f(r) on [0,1), possibly blowing up like
/// d(x, boundary)^{-1/2} as r -> 1.
struct RadialDensity {
  std::function<double(double)> eval;
  bool boundary_blowup = false;
  /// w(r) with f = D^{-1/2} w near r=1 (D the radial boundary distance);
  /// only set when boundary_blowup is true.
  std::function<double(double)> smooth_factor;

  double operator()(double r) const { return eval(r); }
};

struct AbelTransformValue {
  double s = 0.0;  // turning radius in (0,1)
  double value = 0.0;
};

/// Integral of f over the geodesic with turning radius s:
///   2 int_s^1 f(r) [1 - (rho(s)/rho(r))^2]^{-1/2} dr / c(r),
/// computed in the variable u = rho(r) so the kernel is exactly
/// (u^2 - rho(s)^2)^{-1/2}.
double abel_forward(const RadialDensity& f, const metric::RadialProfile& profile,
                    double s, double tol = 1e-10);

/// The printed inversion kernel carries rho'(x)/rho(x) outside the
/// z-integral; the proof's evaluated integral uses rho'(z)/rho(z). The two
/// are kept selectable for numerical comparison; ProofKernel is the one the
/// arcsin evaluation closes with and is the default.
enum class InversionVariant { ProofKernel, PrintedKernel };

/// Explicit Abel inversion: f(r) = -(c(r)/pi) dF/dx at x=r, where
///   F(x) = int_x^1 (rho'/rho) [ (rho(z)/rho(x))^2 - 1 ]^{-1/2} A(z) dz.
/// The outer derivative is a Richardson-extrapolated central difference.
double abel_inverse(const std::function<double(double)>& A,
                    const metric::RadialProfile& profile, double r,
                    InversionVariant variant = InversionVariant::ProofKernel,
                    double tol = 1e-11);

/// The density with unit transform over every maximal geodesic:
///   f(r) = (c - r c') / (pi c sqrt(c(1)^{-2} - (r/c)^2)).
/// Carries the boundary blow-up factorization f = D^{-1/2} w.
RadialDensity synthesize_constant(const metric::RadialProfile& profile);

/// Deviation of int_x^1 (rho'(z)/rho(z)) [(rho(z)/rho(x))^2-1]^{-1/2} dz
/// from pi/2 - arcsin(rho(x)/rho(1)).
double arcsin_identity_deviation(const metric::RadialProfile& profile, double x,
                                 double tol = 1e-12);

}  // namespace geoxray::abel

#endif
