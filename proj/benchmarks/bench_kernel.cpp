#include <benchmark/benchmark.h>

#include <random>

#include "cga/entities.hpp"
#include "cga/incidence.hpp"
#include "cga/transforms.hpp"

namespace {

cga::Multivector random_multivector(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cga::Multivector m;
  for (int s = 0; s < cga::Multivector::kSlots; ++s) m[s] = u(rng);
  return m;
}

void GeometricProduct(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const cga::Multivector a = random_multivector(rng), b = random_multivector(rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(GeometricProduct);

void OuterProduct(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const cga::Multivector a = random_multivector(rng), b = random_multivector(rng);
  for (auto _ : state) benchmark::DoNotOptimize(cga::outer_product(a, b));
}
BENCHMARK(OuterProduct);

void MotorSandwich(benchmark::State& state) {
  const cga::Versor D = cga::compose_motor({1, 2, 3}, {{0.6, 0.0, 0.8}, 0.7, {0.5, -1.0, 2.0}});
  const cga::Multivector X = cga::embed_point({0.3, -0.2, 1.5}).mv();
  for (auto _ : state) benchmark::DoNotOptimize(cga::apply_versor(D, X));
}
BENCHMARK(MotorSandwich);

void SphereFromFourPoints(benchmark::State& state) {
  const cga::ConformalPoint a({1, 0, 0}), b({-1, 0.5, 0}), c({0, 1, 0.2}), d({0, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(cga::sphere_params(cga::sphere_through(a, b, c, d)));
}
BENCHMARK(SphereFromFourPoints);

void SphereLineIntersect(benchmark::State& state) {
  const auto sphere = cga::sphere_from_center_radius({0.2, 0.1, -0.3}, 1.5);
  const auto line = cga::line_through(cga::ConformalPoint({-3, 0.4, 0}), cga::ConformalPoint({3, 0.1, 0.5}));
  for (auto _ : state) benchmark::DoNotOptimize(cga::sphere_line_intersect(sphere, line));
}
BENCHMARK(SphereLineIntersect);

}  // namespace

BENCHMARK_MAIN();
