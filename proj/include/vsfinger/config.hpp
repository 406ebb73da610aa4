#pragma once

// Run configuration: a flat INI file with sections. Units are part of the
// key names (theta_deg, a_mm, ...) and converted to SI here. Every key is
// optional and falls back to the built-in reference values.
//
//   [geometry]   theta_deg mu a_mm b_mm r1_mm protrusion_count mu_lo mu_hi
//   [scenario]   mass_kg finger_count finger_length_mm object_radius_mm
//                operating_pressure_mpa
//   [finger]     total_length_mm joint_count root_to_tip_mm
//                in_plane_limit_deg out_of_plane_limit_deg
//   [profile]    soft_pressure_mpa soft_max_moment_nm grasp_pressure_mpa
//                grasp_min_moment_nm
//   [simulation] tau_s dt_s engage_pressure_mpa pressurize_horizon_s
//                design_d_mm schedule
//
// schedule is a ';'-separated phase list, e.g.
//   insert_twist_deg:30; pressurize_mpa:1.0; wrap_mm:63.66; hold_nm:0.5
// insert_twist_deg takes one total or joint_count comma-separated values;
// pressurize and wrap without a value use the scenario's pressure / radius.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vsfinger/core_types.hpp"
#include "vsfinger/finger_sim.hpp"
#include "vsfinger/force_curves.hpp"

namespace vsf::config {

struct RunConfig {
  LockGeometry geometry = placeholder_geometry();
  curves::FrictionRange friction;
  GraspScenario scenario = reference_scenario();
  FingerSpec finger = reference_finger();
  curves::StiffnessProfile profile;
  sim::SimParams sim;
  double design_d_m = 2.5e-3;
  std::vector<sim::Phase> schedule;
};

// Throws ParseError (syntax, with line) or ValidationError naming the field
// path, e.g. "geometry.theta_deg: must be in (0, 90)".
RunConfig parse_config(std::istream& in, const std::string& source_name);
RunConfig load_config(const std::filesystem::path& path);

// Parses the schedule mini-language above.
std::vector<sim::Phase> parse_schedule(const std::string& text, const std::string& field_path);

}  // namespace vsf::config
