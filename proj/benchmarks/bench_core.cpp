#include <benchmark/benchmark.h>

#include <cmath>

#include "geoxray/abel.hpp"
#include "geoxray/boundary.hpp"
#include "geoxray/geodesic.hpp"
#include "geoxray/profile.hpp"
#include "geoxray/quadrature.hpp"
#include "geoxray/xray2d.hpp"

using namespace geoxray;

namespace {

metric::RadialProfile gaussian_profile() {
  return metric::RadialProfile::from_callables(
      [](double r) { return std::exp(-r * r / 2); },
      [](double r) { return -r * std::exp(-r * r / 2); });
}

void BM_SingularQuadrature(benchmark::State& state) {
  quad::SingularIntegrand g{[](double z) { return std::exp(z); },
                            quad::Singularity::Both};
  for (auto _ : state)
    benchmark::DoNotOptimize(quad::integrate_singular(g, 0.0, 1.0, 1e-10));
}
BENCHMARK(BM_SingularQuadrature);

void BM_AbelForward(benchmark::State& state) {
  auto g = gaussian_profile();
  auto f = abel::synthesize_constant(g);
  double s = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(abel::abel_forward(f, g, s));
    s = s < 0.9 ? s + 0.01 : 0.1;
  }
}
BENCHMARK(BM_AbelForward);

void BM_TraceGeodesic(benchmark::State& state) {
  auto g = gaussian_profile();
  Vec2 start, dir;
  metric::chord_launch(g, 0.5, 0.0, start, dir);
  for (auto _ : state)
    benchmark::DoNotOptimize(metric::trace_geodesic(g, start, dir));
}
BENCHMARK(BM_TraceGeodesic);

void BM_LineIntegralBall(benchmark::State& state) {
  auto dom = xray2d::SupportFunction::disc({0, 0}, 1.0);
  auto f = xray2d::ball_density(2, {0, 0}, 1.0).as_density();
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xray2d::line_integral(f, dom, {r, 0.9}));
    r = r < 0.95 ? r + 0.01 : 0.0;
  }
}
BENCHMARK(BM_LineIntegralBall);

void BM_DiscTest(benchmark::State& state) {
  auto dom = xray2d::SupportFunction::disc({0.3, -0.1}, 1.0,
                                           int(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(xray2d::disc_test(dom));
}
BENCHMARK(BM_DiscTest)->Arg(256)->Arg(512)->Arg(1024);

void BM_EstimateII(benchmark::State& state) {
  auto sph = boundary::ImplicitBody3::sphere(1.0);
  std::vector<double> depths{1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 1e-6};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        boundary::estimate_II_chords(sph, {0, 0, 1}, {1, 0, 0}, depths));
}
BENCHMARK(BM_EstimateII);

}  // namespace

BENCHMARK_MAIN();
