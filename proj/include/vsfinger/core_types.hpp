#pragma once

// Shared domain types of the variable-stiffness finger toolkit.
//
// Units: every field is SI (m, N, Pa, rad, kg). Conversion from mm / MPa /
// deg happens at the file and CLI boundary (see units.hpp).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vsf {

// Protrusion geometry and friction of one 2-DOF joint unit's interlock.
struct LockGeometry {
  double theta_rad = 0.0;          // protrusion inclination, (0, pi/2)
  double mu = 0.0;                 // static friction between Plates A and B
  double a_m = 0.0;                // width of protrusion top surface
  double b_m = 0.0;                // height of protrusion top surface
  double r1_m = 0.0;               // joint axis to surface origin
  int protrusion_count = 1;

  // cos(theta) - mu*sin(theta); must be > 0 for the lock to ever release.
  double release_margin() const noexcept;
};

enum class IssueKind { Range, AlwaysLocked };

struct GeometryIssue {
  IssueKind kind;
  std::string field;
  std::string message;
};

struct GeometryValidation {
  std::vector<GeometryIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  bool range_ok() const noexcept;
  bool always_locked() const noexcept;
  std::string summary() const;
};

GeometryValidation validate_geometry(const LockGeometry& geom);

// Throws DomainError for range issues. The always-locked condition is left
// to callers that care about it.
void require_geometry_ranges(const LockGeometry& geom);

struct ForceSample {
  double pressure_pa = 0.0;
  double force_n = 0.0;
};

// Pressure -> interlock pressing force for one plate-gap value d.
class ForceCurve {
 public:
  // Throws ValidationError on fewer than 2 samples, non-increasing
  // pressures, negative or non-finite values.
  ForceCurve(double d_m, std::vector<ForceSample> samples);

  double d_m() const noexcept { return d_m_; }
  std::span<const ForceSample> samples() const noexcept { return samples_; }
  double min_pressure_pa() const noexcept { return samples_.front().pressure_pa; }
  double max_pressure_pa() const noexcept { return samples_.back().pressure_pa; }

 private:
  double d_m_;
  std::vector<ForceSample> samples_;
};

// Serial-chain description of the finger.
struct FingerSpec {
  double total_length_m = 0.0;
  int joint_count = 1;
  double root_to_tip_m = 0.0;
  double in_plane_limit_rad = 0.0;      // total over all joints
  double out_of_plane_limit_rad = 0.0;  // total over all joints

  double segment_length_m() const noexcept { return total_length_m / joint_count; }
};

void require_valid(const FingerSpec& spec);

struct GraspScenario {
  double mass_kg = 0.0;
  int finger_count = 3;
  double finger_length_m = 0.0;
  double object_radius_m = 0.0;
  double operating_pressure_pa = 0.0;
};

void require_valid(const GraspScenario& scenario);

// Reference finger: 193.5 mm long, 142 mm lever from the first unit to the
// tip, 135 deg in-plane / 115 deg out-of-plane total range. The joint count
// of 8 is a placeholder.
FingerSpec reference_finger();

// Placeholder interlock geometry (theta 30 deg, mu 0.55, 4 x 3 mm surface,
// r1 5 mm, 4 protrusions). Not measured values.
LockGeometry placeholder_geometry();

// 1.5 kg object, 3 fingers, L = 0.2 m, 1.5 MPa.
GraspScenario reference_scenario();

}  // namespace vsf
