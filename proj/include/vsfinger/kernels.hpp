#pragma once

// Batch kernels. Each has an OpenMP version used by the toolkit and a serial
// reference kept for tests and benchmarks; both produce bit-identical results
// in the same order.

#include <span>
#include <vector>

#include "vsfinger/core_types.hpp"
#include "vsfinger/force_curves.hpp"

namespace vsf::kernels {

std::vector<double> lever_integrals_serial(std::span<const LockGeometry> geoms, double rel_tol);
std::vector<double> lever_integrals_omp(std::span<const LockGeometry> geoms, double rel_tol);

// M_max band at each pressure. Throws the first (lowest-index) error.
std::vector<curves::MomentBand> band_grid_serial(const ForceCurve& curve, const LockGeometry& geom,
                                                 const curves::FrictionRange& mu,
                                                 std::span<const double> pressures_pa);
std::vector<curves::MomentBand> band_grid_omp(const ForceCurve& curve, const LockGeometry& geom,
                                              const curves::FrictionRange& mu,
                                              std::span<const double> pressures_pa);

curves::SweepReport design_sweep_serial(const curves::CurveSet& set, const LockGeometry& geom,
                                        const curves::StiffnessProfile& profile,
                                        const curves::FrictionRange& mu);
curves::SweepReport design_sweep_omp(const curves::CurveSet& set, const LockGeometry& geom,
                                     const curves::StiffnessProfile& profile,
                                     const curves::FrictionRange& mu);

int max_threads() noexcept;

}  // namespace vsf::kernels
