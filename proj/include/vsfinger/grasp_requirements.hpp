#pragma once

// Load model for grasping by wrapping: half of each finger bends 90 deg
// out-of-plane, the other half wraps a cylinder of radius R = L/pi, and the
// object weight is carried by a uniform line load p over the wrapped halves.

#include <string>
#include <vector>

#include "vsfinger/core_types.hpp"
#include "vsfinger/lock_model.hpp"

namespace vsf::grasp {

// Rounded design target for the root-joint moment.
inline constexpr double kDesignTargetMomentNm = 0.6;

struct GraspRequirement {
  double line_load_n_per_m = 0.0;
  double required_moment_nm = 0.0;
  double wrap_radius_m = 0.0;
};

// p = 2 m g / (n L)
double line_load(const GraspScenario& scenario);

// M = int_R^{R+L/2} p x dx = m g L / n * (1/pi + 1/4), R = L/pi
double required_root_moment(const GraspScenario& scenario);

double wrap_radius(double finger_length_m);

GraspRequirement requirements(const GraspScenario& scenario);

struct FeasibilityReport {
  bool feasible = false;
  bool marginal = false;       // feasible with margin below 10% of the requirement
  double margin_nm = 0.0;      // m_max - required (may be negative)
  double required_moment_nm = 0.0;
  std::vector<std::string> notes;
};

FeasibilityReport grasp_feasible(const GraspScenario& scenario, const lock::LockAssessment& assessment);

}  // namespace vsf::grasp
