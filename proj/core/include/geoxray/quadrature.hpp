#ifndef GEOXRAY_QUADRATURE_HPP
#define GEOXRAY_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace geoxray::quad {

/// Which endpoints of the interval carry an inverse-square-root factor.
enum class Singularity { None, Left, Right, Both };

struct SingularIntegrand {
  /// The bounded factor g; the full integrand is g(z) times the
  /// inverse-square-root weight selected by `sing`.
  std::function<double(double)> smooth;
  Singularity sing = Singularity::None;
};

/// Thrown when the adaptive refinement budget is exhausted before the
/// requested tolerance is met. Carries the best estimate so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(double best, double bound)
      : std::runtime_error("quadrature did not converge; best estimate " +
                           std::to_string(best) + " +/- " + std::to_string(bound)),
        best_estimate(best),
        error_bound(bound) {}
  double best_estimate;
  double error_bound;
};

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kMaxPanels = std::size_t{1} << 15;

/// Adaptive Gauss-Kronrod integration of a bounded integrand on [lo, hi].
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tol = kDefaultTol,
                          std::size_t max_panels = kMaxPanels);

/// Integrates g(z) * weight(z) on [lo, hi], where weight is
/// (z-lo)^{-1/2}, (hi-z)^{-1/2} or their product as flagged.
/// The singularity is removed by the substitution z = lo + (hi-lo) sin^2(theta)
/// (one-sided analogues for single endpoints), then integrated adaptively.
double integrate_singular(const SingularIntegrand& g, double lo, double hi,
                          double tol = kDefaultTol);

}  // namespace geoxray::quad

#endif
