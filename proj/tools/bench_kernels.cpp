// Serial vs OpenMP timings for the batch kernels.
//
//   bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

#include "vsfinger/kernels.hpp"
#include "vsfinger/units.hpp"

namespace {

template <class F>
double best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-22s serial %10.3f ms   omp %10.3f ms   speedup %6.2fx\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace vsf;
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", kernels::max_threads());

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> theta(0.05, 1.5), len(0.5e-3, 10e-3), r1(0.0, 10e-3);
  std::vector<LockGeometry> geoms(400);
  for (auto& g : geoms) g = {theta(rng), 0.1, len(rng), len(rng), r1(rng), 4};

  volatile double sink = 0.0;
  const double s1 = best_of(repeats, [&] { sink = kernels::lever_integrals_serial(geoms, 1e-10)[0]; });
  const double o1 = best_of(repeats, [&] { sink = kernels::lever_integrals_omp(geoms, 1e-10)[0]; });
  row("lever_integrals x400", s1, o1);

  const ForceCurve curve(2.5e-3, {{0.5e6, 0.0}, {1.0e6, 40.5}, {1.5e6, 109.9}, {2.0e6, 179.4}});
  std::vector<double> pressures(2'000'000);
  for (std::size_t i = 0; i < pressures.size(); ++i) {
    pressures[i] = 2.0e6 * static_cast<double>(i) / static_cast<double>(pressures.size() - 1);
  }
  const LockGeometry g = placeholder_geometry();
  const double s2 = best_of(repeats, [&] { sink = kernels::band_grid_serial(curve, g, {}, pressures)[1].hi_nm; });
  const double o2 = best_of(repeats, [&] { sink = kernels::band_grid_omp(curve, g, {}, pressures)[1].hi_nm; });
  row("band_grid x2e6", s2, o2);

  std::vector<ForceCurve> many;
  for (int i = 1; i <= 64; ++i) {
    many.emplace_back(units::mm_to_m(0.1 * i),
                      std::vector<ForceSample>{{0.0, 0.0}, {1.0e6, 5.0 * i}, {2.0e6, 10.0 * i}});
  }
  const auto set = curves::make_curve_set(many);
  const double s3 = best_of(repeats, [&] { sink = kernels::design_sweep_serial(set, g, {}, {}).rows.size(); });
  const double o3 = best_of(repeats, [&] { sink = kernels::design_sweep_omp(set, g, {}, {}).rows.size(); });
  row("design_sweep x64", s3, o3);
  (void)sink;
  return 0;
}
