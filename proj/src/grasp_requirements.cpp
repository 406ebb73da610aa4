#include "vsfinger/grasp_requirements.hpp"

#include <cmath>
#include <numbers>

#include "vsfinger/errors.hpp"
#include "vsfinger/units.hpp"

namespace vsf::grasp {

double line_load(const GraspScenario& s) {
  require_valid(s);
  return 2.0 * s.mass_kg * units::kStandardGravity / (s.finger_count * s.finger_length_m);
}

double required_root_moment(const GraspScenario& s) {
  require_valid(s);
  return s.mass_kg * units::kStandardGravity * s.finger_length_m / s.finger_count *
         (1.0 / std::numbers::pi + 0.25);
}

double wrap_radius(double finger_length_m) {
  if (!(finger_length_m > 0.0)) throw DomainError("wrap_radius: finger length must be > 0");
  return finger_length_m / std::numbers::pi;
}

GraspRequirement requirements(const GraspScenario& s) {
  return {line_load(s), required_root_moment(s), wrap_radius(s.finger_length_m)};
}

FeasibilityReport grasp_feasible(const GraspScenario& s, const lock::LockAssessment& assessment) {
  FeasibilityReport r;
  r.required_moment_nm = required_root_moment(s);
  if (assessment.status == lock::LockStatus::AlwaysLocked) {
    r.notes.emplace_back("interlock geometry is always locked; out-of-plane compliance is lost");
  }
  r.margin_nm = assessment.m_max_nm - r.required_moment_nm;
  r.feasible = assessment.m_max_nm >= r.required_moment_nm;
  r.marginal = r.feasible && r.margin_nm < 0.1 * r.required_moment_nm;
  if (r.marginal) {
    r.notes.emplace_back(
        "marginal: holding capacity exceeds the requirement by less than 10%; a grasp with "
        "upward-directed contact forces loads the root joint less than this wrap model");
  }
  return r;
}

}  // namespace vsf::grasp
