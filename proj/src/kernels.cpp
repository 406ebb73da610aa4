#include "vsfinger/kernels.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vsfinger/errors.hpp"
#include "vsfinger/lock_model.hpp"

namespace vsf::kernels {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Moment capacity per newton of pressing force at the two friction endpoints.
struct UnitBand {
  double lo;
  double hi;
};

UnitBand unit_band(const LockGeometry& geom, const curves::FrictionRange& mu) {
  if (!(mu.lo <= mu.hi)) throw DomainError("band: mu_lo must be <= mu_hi");
  LockGeometry lo = geom;
  LockGeometry hi = geom;
  lo.mu = mu.lo;
  hi.mu = mu.hi;
  return {lock::max_moment(1.0, lo).m_max_nm, lock::max_moment(1.0, hi).m_max_nm};
}

void check_sweep_inputs(const curves::CurveSet& set, const LockGeometry& geom,
                        const curves::StiffnessProfile& profile, const curves::FrictionRange& mu) {
  if (set.curves.empty()) throw ValidationError("design sweep: empty curve set");
  curves::require_valid(profile);
  require_geometry_ranges(geom);
  if (!(mu.lo <= mu.hi)) throw DomainError("design sweep: mu_lo must be <= mu_hi");
  lock::amplification_factor(geom.theta_rad, mu.hi);
}

void select(curves::SweepReport& report) {
  for (const auto& row : report.rows) {
    if (row.pass()) {
      report.selected_d_m = row.d_m;
      return;
    }
  }
}

}  // namespace

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> lever_integrals_serial(std::span<const LockGeometry> geoms, double rel_tol) {
  std::vector<double> out(geoms.size());
  for (std::size_t i = 0; i < geoms.size(); ++i) out[i] = lock::lever_integral(geoms[i], rel_tol);
  return out;
}

std::vector<double> lever_integrals_omp(std::span<const LockGeometry> geoms, double rel_tol) {
  const auto n = static_cast<std::ptrdiff_t>(geoms.size());
  std::vector<double> out(geoms.size());
  std::vector<std::exception_ptr> errors(geoms.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = lock::lever_integral(geoms[i], rel_tol);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

std::vector<curves::MomentBand> band_grid_serial(const ForceCurve& curve, const LockGeometry& geom,
                                                 const curves::FrictionRange& mu,
                                                 std::span<const double> pressures) {
  const UnitBand unit = unit_band(geom, mu);
  std::vector<curves::MomentBand> out(pressures.size());
  for (std::size_t i = 0; i < pressures.size(); ++i) {
    const double f = curves::interpolate_force(curve, pressures[i]);
    out[i] = {f * unit.lo, f * unit.hi};
  }
  return out;
}

std::vector<curves::MomentBand> band_grid_omp(const ForceCurve& curve, const LockGeometry& geom,
                                              const curves::FrictionRange& mu,
                                              std::span<const double> pressures) {
  const UnitBand unit = unit_band(geom, mu);
  const auto n = static_cast<std::ptrdiff_t>(pressures.size());
  std::vector<curves::MomentBand> out(pressures.size());
  std::vector<std::exception_ptr> errors(pressures.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const double f = curves::interpolate_force(curve, pressures[i]);
      out[i] = {f * unit.lo, f * unit.hi};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

curves::SweepReport design_sweep_serial(const curves::CurveSet& set, const LockGeometry& geom,
                                        const curves::StiffnessProfile& profile,
                                        const curves::FrictionRange& mu) {
  check_sweep_inputs(set, geom, profile, mu);
  curves::SweepReport report;
  for (const auto& c : set.curves) report.rows.push_back(curves::evaluate_design(c, geom, profile, mu));
  select(report);
  return report;
}

curves::SweepReport design_sweep_omp(const curves::CurveSet& set, const LockGeometry& geom,
                                     const curves::StiffnessProfile& profile,
                                     const curves::FrictionRange& mu) {
  check_sweep_inputs(set, geom, profile, mu);
  const auto n = static_cast<std::ptrdiff_t>(set.curves.size());
  curves::SweepReport report;
  report.rows.resize(set.curves.size());
  std::vector<std::exception_ptr> errors(set.curves.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      report.rows[i] = curves::evaluate_design(set.curves[i], geom, profile, mu);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  rethrow_first(errors);
  select(report);
  return report;
}

}  // namespace vsf::kernels
