#include "vsfinger/finger_sim.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vsfinger/force_curves.hpp"
#include "vsfinger/units.hpp"

namespace vsf::sim {

namespace {

// Closed bounds with room for the rounding of a sum of per-joint angles.
bool exceeds(double total, double limit) { return total > limit * (1.0 + 1e-12) + 1e-15; }

std::string join_violations(const std::vector<LimitViolation>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << "; ";
    os << v[i].describe();
  }
  return os.str();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const char* to_string(LockState s) noexcept { return s == LockState::Free ? "Free" : "Engaged"; }

const char* to_string(JointStatus s) noexcept {
  switch (s) {
    case JointStatus::Free:
      return "Free";
    case JointStatus::Holds:
      return "Holds";
    case JointStatus::Slips:
      return "Slips";
    case JointStatus::AlwaysLocked:
      return "AlwaysLocked";
  }
  return "?";
}

ChainPoses forward_kinematics(const FingerSpec& spec, std::span<const JointState> joints) {
  require_valid(spec);
  if (joints.size() != static_cast<std::size_t>(spec.joint_count)) {
    throw ValidationError("forward_kinematics: expected " + std::to_string(spec.joint_count) +
                          " joints, got " + std::to_string(joints.size()));
  }
  const double seg = spec.segment_length_m();
  ChainPoses out;
  out.unit_poses.reserve(joints.size());
  Pose frame = Pose::Identity();
  for (const auto& j : joints) {
    frame = frame * Eigen::Translation3d(0.0, 0.0, seg) *
            Eigen::AngleAxisd(j.in_plane_rad, Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(j.out_of_plane_rad, Eigen::Vector3d::UnitX());
    out.unit_poses.push_back(frame);
  }
  out.tip = frame;
  return out;
}

std::string LimitViolation::describe() const {
  std::ostringstream os;
  os << (axis == Axis::InPlane ? "in-plane" : "out-of-plane") << " bend "
     << units::rad_to_deg(total_rad) << " deg exceeds limit " << units::rad_to_deg(limit_rad)
     << " deg at joint " << joint_index;
  return os.str();
}

std::vector<LimitViolation> joint_limit_check(const FingerSpec& spec,
                                              std::span<const JointState> joints) {
  require_valid(spec);
  std::vector<LimitViolation> out;
  double in_sum = 0.0;
  double out_sum = 0.0;
  int in_first = -1;
  int out_first = -1;
  for (std::size_t i = 0; i < joints.size(); ++i) {
    in_sum += std::abs(joints[i].in_plane_rad);
    out_sum += std::abs(joints[i].out_of_plane_rad);
    if (in_first < 0 && exceeds(in_sum, spec.in_plane_limit_rad)) in_first = static_cast<int>(i);
    if (out_first < 0 && exceeds(out_sum, spec.out_of_plane_limit_rad)) {
      out_first = static_cast<int>(i);
    }
  }
  if (in_first >= 0) out.push_back({Axis::InPlane, in_first, in_sum, spec.in_plane_limit_rad});
  if (out_first >= 0) {
    out.push_back({Axis::OutOfPlane, out_first, out_sum, spec.out_of_plane_limit_rad});
  }
  return out;
}

JointLimitError::JointLimitError(std::vector<LimitViolation> violations)
    : Error("joint limit violation: " + join_violations(violations)),
      violations_(std::move(violations)) {}

std::vector<double> wrap_in_plane_angles(const FingerSpec& spec, double object_radius_m) {
  require_valid(spec);
  if (!(object_radius_m > 0.0)) throw DomainError("wrap_pose: object radius must be > 0");
  const int k = spec.joint_count;
  const int proximal = k / 2;
  std::vector<double> angles(static_cast<std::size_t>(k), 0.0);
  const double per_joint = spec.segment_length_m() / object_radius_m;
  for (int i = proximal; i < k; ++i) angles[static_cast<std::size_t>(i)] = per_joint;
  return angles;
}

WrapPose wrap_pose(const FingerSpec& spec, double object_radius_m) {
  const auto in_plane = wrap_in_plane_angles(spec, object_radius_m);
  const int k = spec.joint_count;
  const int proximal = k / 2;
  WrapPose out;
  out.joints.resize(in_plane.size());
  for (std::size_t i = 0; i < in_plane.size(); ++i) out.joints[i].in_plane_rad = in_plane[i];
  for (int i = 0; i < proximal; ++i) {
    out.joints[static_cast<std::size_t>(i)].out_of_plane_rad = (std::numbers::pi / 2.0) / proximal;
  }
  out.violations = joint_limit_check(spec, out.joints);
  return out;
}

PressureTrace pressure_approach(double start, double reference, double tau, double dt,
                                double horizon) {
  if (!(tau > 0.0)) throw DomainError("pressure step: tau must be > 0");
  if (!(dt > 0.0)) throw DomainError("pressure step: dt must be > 0");
  if (!(horizon >= dt)) throw DomainError("pressure step: horizon must be >= dt");
  if (!(start >= 0.0 && reference >= 0.0)) throw DomainError("pressure step: negative pressure");
  const auto n = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
  PressureTrace trace;
  trace.times_s.reserve(n);
  trace.pressures_pa.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double decay = std::exp(-t / tau);
    trace.times_s.push_back(t);
    trace.pressures_pa.push_back(start == 0.0 ? reference * (1.0 - decay)
                                              : reference + (start - reference) * decay);
  }
  return trace;
}

PressureTrace pressure_step(double reference, double tau, double dt, double horizon) {
  return pressure_approach(0.0, reference, tau, dt, horizon);
}

std::optional<double> rise_time_10_90(const PressureTrace& trace, double reference) {
  if (!(reference > 0.0)) return std::nullopt;
  auto crossing = [&](double level) -> std::optional<double> {
    const auto& t = trace.times_s;
    const auto& p = trace.pressures_pa;
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i - 1] < level && p[i] >= level) {
        return t[i - 1] + (level - p[i - 1]) / (p[i] - p[i - 1]) * (t[i] - t[i - 1]);
      }
    }
    return std::nullopt;
  };
  const auto t10 = crossing(0.1 * reference);
  const auto t90 = crossing(0.9 * reference);
  if (!t10 || !t90) return std::nullopt;
  return *t90 - *t10;
}

SimState make_state(const FingerSpec& spec, std::vector<JointState> joints, double pressure_pa,
                    double time_s) {
  SimState s;
  s.time_s = time_s;
  s.pressure_pa = pressure_pa;
  s.tip_pose = forward_kinematics(spec, joints).tip;
  s.joints = std::move(joints);
  return s;
}

LockUpdate lock_state_update(const SimState& state, const ForceCurve& curve,
                             const LockGeometry& geom, double engage_pressure_pa,
                             double external_moment_nm) {
  if (!(external_moment_nm >= 0.0)) throw DomainError("lock update: moment must be >= 0");
  const std::size_t k = state.joints.size();
  LockUpdate out;
  out.joints = state.joints;
  out.reports.resize(k);
  const bool engaged = state.pressure_pa >= engage_pressure_pa;
  for (auto& j : out.joints) j.lock = engaged ? LockState::Engaged : LockState::Free;
  if (!engaged) return out;

  const bool always_locked = !(geom.release_margin() > 0.0);
  double m_max = 0.0;
  if (!always_locked) {
    m_max = lock::max_moment(curves::interpolate_force(curve, state.pressure_pa), geom).m_max_nm;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const double lever = k > 1 ? static_cast<double>(k - 1 - i) / static_cast<double>(k - 1) : 1.0;
    auto& r = out.reports[i];
    r.applied_moment_nm = external_moment_nm * lever;
    r.m_max_nm = m_max;
    if (always_locked) {
      r.status = JointStatus::AlwaysLocked;
    } else {
      r.status = r.applied_moment_nm <= m_max ? JointStatus::Holds : JointStatus::Slips;
    }
  }
  return out;
}

const char* phase_name(const Phase& p) noexcept {
  return std::visit(Overloaded{[](const InsertTwist&) { return "insert_twist"; },
                               [](const Pressurize&) { return "pressurize"; },
                               [](const Wrap&) { return "wrap"; },
                               [](const Hold&) { return "hold"; }},
                    p);
}

void validate_schedule(const FingerSpec& spec, std::span<const Phase> schedule) {
  require_valid(spec);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const std::string where = "schedule[" + std::to_string(i) + "] " + phase_name(schedule[i]);
    std::visit(
        Overloaded{
            [&](const InsertTwist& p) {
              const auto n = p.out_of_plane_rad.size();
              if (n != 1 && n != static_cast<std::size_t>(spec.joint_count)) {
                throw ValidationError(where + ": expected 1 or " +
                                      std::to_string(spec.joint_count) + " angles");
              }
              for (double a : p.out_of_plane_rad) {
                if (!std::isfinite(a)) throw ValidationError(where + ": non-finite angle");
              }
            },
            [&](const Pressurize& p) {
              if (p.reference_pa && !(*p.reference_pa >= 0.0)) {
                throw ValidationError(where + ": reference pressure must be >= 0");
              }
            },
            [&](const Wrap& p) {
              if (p.object_radius_m && !(*p.object_radius_m > 0.0)) {
                throw ValidationError(where + ": object radius must be > 0");
              }
            },
            [&](const Hold& p) {
              if (!(p.external_moment_nm >= 0.0)) {
                throw ValidationError(where + ": external moment must be >= 0");
              }
            }},
        schedule[i]);
  }
}

Timeline simulate_grasp_sequence(const FingerSpec& spec, const GraspScenario& scenario,
                                 const ForceCurve& curve, const LockGeometry& geom,
                                 std::span<const Phase> schedule, const SimParams& params) {
  validate_schedule(spec, schedule);
  require_valid(scenario);
  if (!(params.dt_s > 0.0 && params.tau_s > 0.0 && params.pressurize_horizon_s >= params.dt_s)) {
    throw ValidationError("simulation parameters: need tau > 0, dt > 0, horizon >= dt");
  }
  const auto k = static_cast<std::size_t>(spec.joint_count);
  Timeline tl;
  SimState state = make_state(spec, std::vector<JointState>(k), 0.0);

  auto push = [&](const char* phase, double moment) {
    const LockUpdate upd =
        lock_state_update(state, curve, geom, params.engage_pressure_pa, moment);
    state.joints = upd.joints;
    state.tip_pose = forward_kinematics(spec, state.joints).tip;
    if (auto v = joint_limit_check(spec, state.joints); !v.empty()) throw JointLimitError(v);
    TimelineRow row{phase, state, {}};
    row.status.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      row.status.push_back(upd.reports[i].status);
      if (upd.reports[i].status == JointStatus::Slips) {
        tl.slips.push_back({state.time_s, static_cast<int>(i), upd.reports[i].applied_moment_nm,
                            upd.reports[i].m_max_nm});
      }
    }
    tl.rows.push_back(std::move(row));
  };

  push("initial", 0.0);
  for (const Phase& phase : schedule) {
    std::visit(
        Overloaded{
            [&](const InsertTwist& p) {
              state.time_s += params.dt_s;
              bool blocked = false;
              for (std::size_t i = 0; i < k; ++i) {
                const double target = p.out_of_plane_rad.size() == 1
                                          ? p.out_of_plane_rad[0] / static_cast<double>(k)
                                          : p.out_of_plane_rad[i];
                if (state.joints[i].lock == LockState::Free) {
                  state.joints[i].out_of_plane_rad = target;
                } else {
                  blocked = true;
                }
              }
              if (blocked) tl.notes.emplace_back("insert_twist: engaged joints kept their angle");
              push("insert_twist", 0.0);
            },
            [&](const Pressurize& p) {
              const double ref = p.reference_pa.value_or(scenario.operating_pressure_pa);
              const PressureTrace tr = pressure_approach(state.pressure_pa, ref, params.tau_s,
                                                         params.dt_s, params.pressurize_horizon_s);
              const double t0 = state.time_s;
              for (std::size_t i = 1; i < tr.times_s.size(); ++i) {
                state.time_s = t0 + tr.times_s[i];
                state.pressure_pa = tr.pressures_pa[i];
                push("pressurize", 0.0);
              }
            },
            [&](const Wrap& p) {
              const double radius = p.object_radius_m.value_or(scenario.object_radius_m);
              const auto in_plane = wrap_in_plane_angles(spec, radius);
              state.time_s += params.dt_s;
              for (std::size_t i = 0; i < k; ++i) state.joints[i].in_plane_rad = in_plane[i];
              push("wrap", 0.0);
            },
            [&](const Hold& p) {
              state.time_s += params.dt_s;
              const std::size_t before = tl.slips.size();
              push("hold", p.external_moment_nm);
              if (tl.slips.size() > before) {
                tl.notes.emplace_back(
                    "hold: slipping joints released their out-of-plane angle to the external "
                    "constraint");
              }
            }},
        phase);
  }
  return tl;
}

}  // namespace vsf::sim
