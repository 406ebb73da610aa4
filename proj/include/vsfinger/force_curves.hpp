#pragma once

// Empirical pressure -> interlock-force curves, one per plate-gap value d,
// and the design sweep that picks d against a stiffness profile.
//
// Curve CSV (UTF-8):
//
//   # free-text provenance lines start with '#'
//   d_mm,pressure_mpa,force_n[,value_kind]
//   2.5,0.50,0.0
//   ...
//
// value_kind is force_n (default) or mmax_nm. mmax_nm rows carry a moment
// capacity instead of a force and are converted to force through a lock
// geometry and a reference friction coefficient at load time.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vsfinger/core_types.hpp"

namespace vsf::curves {

struct CurveSet {
  std::vector<ForceCurve> curves;  // sorted by d, d unique
  std::string provenance;

  // Curve whose d matches within 1 nm. Throws ValidationError if absent.
  const ForceCurve& at(double d_m) const;
};

// Builds a set from curves in any order. Throws ValidationError on duplicate d.
CurveSet make_curve_set(std::vector<ForceCurve> curves, std::string provenance = {});

struct MmaxConversion {
  LockGeometry geometry;
  double mu_ref = 0.0;
};

CurveSet parse_curve_set(std::istream& in, const std::string& source_name,
                         const std::optional<MmaxConversion>& conversion = std::nullopt);
CurveSet load_curve_set(const std::filesystem::path& path,
                        const std::optional<MmaxConversion>& conversion = std::nullopt);

// Piecewise-linear. Below the first sample the lock is not engaged and the
// result is 0; above the last sample throws OutOfRangeError.
double interpolate_force(const ForceCurve& curve, double pressure_pa);

struct MomentBand {
  double lo_nm = 0.0;
  double hi_nm = 0.0;
};

// M_max at mu_lo and mu_hi. M_max is monotone in mu, so the endpoints bound
// the band. Throws AlwaysLockedError if mu_hi leaves the release region.
MomentBand m_max_band(const ForceCurve& curve, const LockGeometry& geom, double mu_lo,
                      double mu_hi, double pressure_pa);

// Same band, forced to zero while pressure is below the engagement pressure.
MomentBand engaged_band(const ForceCurve& curve, const LockGeometry& geom, double mu_lo,
                        double mu_hi, double pressure_pa, double engage_pressure_pa);

struct StiffnessProfile {
  double soft_pressure_pa = 0.75e6;
  double soft_max_moment_nm = 0.2;  // "sufficiently small"; not a measured value
  double grasp_pressure_pa = 1.5e6;
  double grasp_min_moment_nm = 0.6;
};

void require_valid(const StiffnessProfile& profile);

struct FrictionRange {
  double lo = 0.4;
  double hi = 0.7;
};

struct SweepRow {
  double d_m = 0.0;
  double soft_moment_nm = 0.0;   // band upper edge at soft pressure
  double grasp_moment_nm = 0.0;  // band lower edge at grasp pressure
  bool soft_ok = false;
  bool grasp_ok = false;
  std::string note;

  bool pass() const noexcept { return soft_ok && grasp_ok; }
};

struct SweepReport {
  std::vector<SweepRow> rows;       // ascending d
  std::optional<double> selected_d_m;  // smallest passing d, or none
};

// Constraint values for one curve. Out-of-range pressures fail the affected
// constraint with a note instead of throwing.
SweepRow evaluate_design(const ForceCurve& curve, const LockGeometry& geom,
                         const StiffnessProfile& profile, const FrictionRange& mu);

// Evaluates every d (OpenMP-parallel, deterministic order) and selects the
// smallest passing d. Throws AlwaysLockedError if mu.hi is outside the release
// region; an empty set is a ValidationError.
SweepReport design_sweep(const CurveSet& set, const LockGeometry& geom,
                         const StiffnessProfile& profile, const FrictionRange& mu);

}  // namespace vsf::curves
