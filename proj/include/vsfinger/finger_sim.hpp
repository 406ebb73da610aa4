#pragma once

// Quasi-static finger simulation: serial-chain kinematics of the 2-DOF joint
// units, joint range checks, wrap poses, first-order pressure lag and the
// pressure-gated interlock.
//
// Chain convention: each unit translates by the segment length along local z,
// then rotates about local y (in-plane joint, Plate A to the previous unit's
// Plate B), then about local x (out-of-plane joint, Plate A to Plate B).
// Base frame is the identity; a straight finger points along +z.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Geometry>

#include "vsfinger/core_types.hpp"
#include "vsfinger/errors.hpp"
#include "vsfinger/lock_model.hpp"

namespace vsf::sim {

enum class LockState { Free, Engaged };

const char* to_string(LockState s) noexcept;

struct JointState {
  double in_plane_rad = 0.0;
  double out_of_plane_rad = 0.0;
  LockState lock = LockState::Free;
};

using Pose = Eigen::Isometry3d;

struct ChainPoses {
  std::vector<Pose> unit_poses;  // frame after each unit; unit_poses.back() is the tip
  Pose tip;
};

// Throws ValidationError if joints.size() != spec.joint_count.
ChainPoses forward_kinematics(const FingerSpec& spec, std::span<const JointState> joints);

enum class Axis { InPlane, OutOfPlane };

struct LimitViolation {
  Axis axis;
  int joint_index;  // first joint where the running total exceeds the limit
  double total_rad;
  double limit_rad;

  std::string describe() const;
};

// Total |in-plane| and |out-of-plane| bend against the finger's range. Both
// bounds are closed.
std::vector<LimitViolation> joint_limit_check(const FingerSpec& spec,
                                              std::span<const JointState> joints);

class JointLimitError : public Error {
 public:
  explicit JointLimitError(std::vector<LimitViolation> violations);
  const std::vector<LimitViolation>& violations() const noexcept { return violations_; }

 private:
  std::vector<LimitViolation> violations_;
};

struct WrapPose {
  std::vector<JointState> joints;
  std::vector<LimitViolation> violations;

  bool feasible() const noexcept { return violations.empty(); }
};

// Distal joints (the last joint_count - joint_count/2) each bend in-plane by
// segment_length / object_radius; proximal joints share a 90 deg out-of-plane
// bend. Throws DomainError unless object_radius > 0.
WrapPose wrap_pose(const FingerSpec& spec, double object_radius_m);

// In-plane part of wrap_pose only.
std::vector<double> wrap_in_plane_angles(const FingerSpec& spec, double object_radius_m);

struct PressureTrace {
  std::vector<double> times_s;
  std::vector<double> pressures_pa;
};

// P(t) = reference * (1 - exp(-t / tau)) sampled at t = 0, dt, ... <= horizon.
PressureTrace pressure_step(double reference_pa, double tau_s, double dt_s, double horizon_s);

// First-order approach from start_pa toward reference_pa.
PressureTrace pressure_approach(double start_pa, double reference_pa, double tau_s, double dt_s,
                                double horizon_s);

// 10-90% rise time read off the trace by linear interpolation; nullopt when
// the trace never crosses both levels (e.g. zero reference).
std::optional<double> rise_time_10_90(const PressureTrace& trace, double reference_pa);

struct SimState {
  double time_s = 0.0;
  std::vector<JointState> joints;
  double pressure_pa = 0.0;
  Pose tip_pose = Pose::Identity();
};

SimState make_state(const FingerSpec& spec, std::vector<JointState> joints, double pressure_pa,
                    double time_s = 0.0);

enum class JointStatus { Free, Holds, Slips, AlwaysLocked };

const char* to_string(JointStatus s) noexcept;

struct JointLockReport {
  JointStatus status = JointStatus::Free;
  double applied_moment_nm = 0.0;
  double m_max_nm = 0.0;
};

struct LockUpdate {
  std::vector<JointState> joints;
  std::vector<JointLockReport> reports;
};

// Stateless gate: every joint is Engaged iff pressure >= engage pressure.
// external_moment acts at the root joint; joint i carries the same tip load
// over its lever to the tip, i.e. external * (K-1-i)/(K-1). An engaged joint
// slips when its moment exceeds M_max at the interpolated pressing force.
LockUpdate lock_state_update(const SimState& state, const ForceCurve& curve,
                             const LockGeometry& geom, double engage_pressure_pa,
                             double external_moment_nm);

// Schedule phases.
struct InsertTwist {
  // One value: total out-of-plane bend spread evenly. joint_count values:
  // per-joint targets.
  std::vector<double> out_of_plane_rad;
};
struct Pressurize {
  std::optional<double> reference_pa;  // default: scenario operating pressure
};
struct Wrap {
  std::optional<double> object_radius_m;  // default: scenario object radius
};
struct Hold {
  double external_moment_nm = 0.0;
};

using Phase = std::variant<InsertTwist, Pressurize, Wrap, Hold>;

const char* phase_name(const Phase& p) noexcept;

struct SimParams {
  double tau_s = 0.3;
  double dt_s = 0.01;
  double engage_pressure_pa = 0.5e6;
  double pressurize_horizon_s = 1.5;
};

struct TimelineRow {
  std::string phase;
  SimState state;
  std::vector<JointStatus> status;
};

struct SlipEvent {
  double time_s;
  int joint_index;
  double applied_moment_nm;
  double m_max_nm;
};

struct Timeline {
  std::vector<TimelineRow> rows;
  std::vector<SlipEvent> slips;
  std::vector<std::string> notes;
};

// Throws ValidationError for malformed schedules and JointLimitError when a
// phase drives the chain outside its range.
void validate_schedule(const FingerSpec& spec, std::span<const Phase> schedule);

Timeline simulate_grasp_sequence(const FingerSpec& spec, const GraspScenario& scenario,
                                 const ForceCurve& curve, const LockGeometry& geom,
                                 std::span<const Phase> schedule, const SimParams& params = {});

}  // namespace vsf::sim
