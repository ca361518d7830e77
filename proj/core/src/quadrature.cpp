#include "geoxray/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace geoxray::quad {
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fc = f(c);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    double f1 = f(c - dx);
    double f2 = f(c + dx);
    result_kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
  }
  result_kronrod *= half;
  result_gauss *= half;
  double err = std::abs(result_kronrod - result_gauss);
  return {result_kronrod, err};
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tol, std::size_t max_panels) {
  if (!(lo < hi)) {
    if (lo == hi) return 0.0;
    return -integrate_adaptive(f, hi, lo, tol, max_panels);
  }
  std::priority_queue<Segment> heap;
  PanelResult whole = gk15(f, lo, hi);
  heap.push({lo, hi, whole.value, whole.error});
  double total_value = whole.value;
  double total_error = whole.error;
  std::size_t panels = 1;
  while (total_error > tol * std::max(1.0, std::abs(total_value)) &&
         total_error > tol) {
    if (panels >= max_panels) throw AccuracyError(total_value, total_error);
    Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at machine resolution; accept what we have.
      heap.push(worst);
      break;
    }
    PanelResult left = gk15(f, worst.a, mid);
    PanelResult right = gk15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
    ++panels;
  }
  return total_value;
}

double integrate_singular(const SingularIntegrand& g, double lo, double hi,
                          double tol) {
  if (!(lo < hi)) throw std::invalid_argument("integrate_singular: lo >= hi");
  if (tol <= 0.0) throw std::invalid_argument("integrate_singular: tol <= 0");
  const double len = hi - lo;
  const double half_pi = std::asin(1.0) * 1.0;  // pi/2
  switch (g.sing) {
    case Singularity::None:
      return integrate_adaptive(g.smooth, lo, hi, tol);
    case Singularity::Left: {
      // z = lo + len sin^2(theta): g(z) (z-lo)^{-1/2} dz = 2 sqrt(len) g(z) cos(theta) dtheta
      auto reg = [&](double theta) {
        double s = std::sin(theta);
        double z = lo + len * s * s;
        return 2.0 * std::sqrt(len) * g.smooth(z) * std::cos(theta);
      };
      return integrate_adaptive(reg, 0.0, half_pi, tol);
    }
    case Singularity::Right: {
      auto reg = [&](double theta) {
        double s = std::sin(theta);
        double z = hi - len * s * s;
        return 2.0 * std::sqrt(len) * g.smooth(z) * std::cos(theta);
      };
      return integrate_adaptive(reg, 0.0, half_pi, tol);
    }
    case Singularity::Both: {
      // z = lo + len sin^2(theta): the weight [(z-lo)(hi-z)]^{-1/2} dz
      // reduces to the constant 2 dtheta.
      auto reg = [&](double theta) {
        double s = std::sin(theta);
        double z = lo + len * s * s;
        return 2.0 * g.smooth(z);
      };
      return integrate_adaptive(reg, 0.0, half_pi, tol);
    }
  }
  return 0.0;  // unreachable
}

}  // namespace geoxray::quad
