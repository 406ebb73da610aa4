#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vsfinger/errors.hpp"
#include "vsfinger/finger_sim.hpp"
#include "vsfinger/force_curves.hpp"
#include "vsfinger/units.hpp"

using namespace vsf;
using namespace vsf::sim;
using units::deg_to_rad;

namespace {

const std::string kFixture = std::string(VSF_SOURCE_DIR) + "/data/lock_force_curves.csv";

ForceCurve fixture_curve() { return curves::load_curve_set(kFixture).at(2.5e-3); }

std::vector<JointState> uniform(int k, double in_plane, double out_of_plane) {
  return std::vector<JointState>(static_cast<std::size_t>(k), JointState{in_plane, out_of_plane});
}

void check_rotation(const Pose& p) {
  const Eigen::Matrix3d r = p.linear();
  CHECK((r.transpose() * r - Eigen::Matrix3d::Identity()).norm() < 1e-10);
  CHECK(std::abs(r.determinant() - 1.0) < 1e-10);
}

}  // namespace

TEST_CASE("forward kinematics of a straight finger") {
  const auto spec = reference_finger();
  const auto fk = forward_kinematics(spec, uniform(spec.joint_count, 0, 0));
  CHECK((fk.tip.translation() - Eigen::Vector3d(0, 0, spec.total_length_m)).norm() < 1e-15);
  CHECK_THROWS_AS(forward_kinematics(spec, uniform(3, 0, 0)), ValidationError);
}

TEST_CASE("single in-plane rotation turns the tip direction in the xz-plane") {
  FingerSpec spec = reference_finger();
  spec.joint_count = 1;
  const auto fk = forward_kinematics(spec, uniform(1, std::numbers::pi / 2, 0));
  const Eigen::Vector3d dir = fk.tip.linear() * Eigen::Vector3d::UnitZ();
  CHECK((dir - Eigen::Vector3d::UnitX()).norm() < 1e-15);
}

TEST_CASE("uniform 180 deg planar bend matches the complex-exponential arc") {
  for (int k : {2, 3, 5, 8, 16}) {
    FingerSpec spec = reference_finger();
    spec.joint_count = k;
    const double phi = std::numbers::pi / k;
    const auto fk = forward_kinematics(spec, uniform(k, phi, 0));
    const auto oracle = testing::planar_arc_tip_closed_form(spec.segment_length_m(), phi, k);
    const Eigen::Vector3d tip = fk.tip.translation();
    CHECK(std::abs(tip.z() - oracle.real()) < 1e-9);
    CHECK(std::abs(tip.x() - oracle.imag()) < 1e-9);
    CHECK(std::abs(tip.y()) < 1e-12);
    const Eigen::Vector3d dir = fk.tip.linear() * Eigen::Vector3d::UnitZ();
    CHECK((dir + Eigen::Vector3d::UnitZ()).norm() < 1e-12);
  }
}

TEST_CASE("forward kinematics invariants on random configurations") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> ang(-0.4, 0.4);
  std::uniform_int_distribution<int> kd(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    FingerSpec spec = reference_finger();
    spec.joint_count = kd(rng);
    std::vector<JointState> joints(static_cast<std::size_t>(spec.joint_count));
    for (auto& j : joints) j = {ang(rng), ang(rng)};
    const auto fk = forward_kinematics(spec, joints);
    Eigen::Vector3d prev = Eigen::Vector3d::Zero();
    for (const auto& pose : fk.unit_poses) {
      CHECK(std::abs((pose.translation() - prev).norm() - spec.segment_length_m()) < 1e-12);
      check_rotation(pose);
      prev = pose.translation();
    }
    // planar special case
    std::vector<JointState> planar(joints.size());
    std::complex<double> oracle{0, 0};
    double heading = 0.0;
    for (std::size_t i = 0; i < joints.size(); ++i) {
      planar[i].in_plane_rad = joints[i].in_plane_rad;
      oracle += spec.segment_length_m() * std::polar(1.0, heading);
      heading += joints[i].in_plane_rad;
    }
    const Eigen::Vector3d tip = forward_kinematics(spec, planar).tip.translation();
    CHECK(std::abs(tip.z() - oracle.real()) < 1e-9);
    CHECK(std::abs(tip.x() - oracle.imag()) < 1e-9);
  }
}

TEST_CASE("joint_limit_check closed bounds") {
  const auto spec = reference_finger();
  const int k = spec.joint_count;
  CHECK(joint_limit_check(spec, uniform(k, 0, 0)).empty());
  CHECK(joint_limit_check(spec, uniform(k, deg_to_rad(135.0) / k, 0)).empty());
  CHECK(joint_limit_check(spec, uniform(k, 0, deg_to_rad(115.0) / k)).empty());
  CHECK(joint_limit_check(spec, uniform(k, -deg_to_rad(135.0) / k, deg_to_rad(115.0) / k)).empty());

  const auto v = joint_limit_check(spec, uniform(k, 0, deg_to_rad(120.0) / k));
  REQUIRE(v.size() == 1);
  CHECK(v[0].axis == Axis::OutOfPlane);
  CHECK(v[0].joint_index == k - 1);
  CHECK(v[0].describe().find("joint 7") != std::string::npos);

  auto joints = uniform(k, 0, 0);
  joints[2].in_plane_rad = deg_to_rad(136.0);
  const auto w = joint_limit_check(spec, joints);
  REQUIRE(w.size() == 1);
  CHECK(w[0].axis == Axis::InPlane);
  CHECK(w[0].joint_index == 2);
}

TEST_CASE("wrap_pose geometry") {
  const auto spec = reference_finger();
  const double l = spec.total_length_m;
  const auto pose = wrap_pose(spec, l / std::numbers::pi);
  CHECK(pose.feasible());
  double in_total = 0.0, out_total = 0.0;
  for (const auto& j : pose.joints) {
    in_total += j.in_plane_rad;
    out_total += j.out_of_plane_rad;
  }
  CHECK(std::abs(in_total - std::numbers::pi / 2) < 1e-9);
  CHECK(std::abs(out_total - std::numbers::pi / 2) < 1e-9);
  for (int i = 0; i < spec.joint_count / 2; ++i) CHECK(pose.joints[i].in_plane_rad == 0.0);

  for (const auto& j : wrap_pose(spec, 1e9).joints) CHECK(j.in_plane_rad < 1e-9);

  const auto tight = wrap_pose(spec, 0.02);
  CHECK_FALSE(tight.feasible());
  CHECK(tight.violations.front().axis == Axis::InPlane);
  CHECK_THROWS_AS(wrap_pose(spec, 0.0), DomainError);
}

TEST_CASE("pressure_step first-order response") {
  const auto tr = pressure_step(1.0e6, 0.3, 0.001, 3.0);
  REQUIRE(tr.times_s.size() == 3001);
  CHECK(tr.times_s.front() == 0.0);
  CHECK(tr.pressures_pa.front() == 0.0);
  CHECK(std::abs(tr.pressures_pa[300] / 1.0e6 - 0.632) < 1e-3);
  for (std::size_t i = 1; i < tr.pressures_pa.size(); ++i) {
    CHECK(tr.pressures_pa[i] >= tr.pressures_pa[i - 1]);
    CHECK(tr.times_s[i] > tr.times_s[i - 1]);
    CHECK(tr.pressures_pa[i] <= 1.0e6);
  }
  CHECK(tr.pressures_pa.back() > 0.9999e6);
  const auto rise = rise_time_10_90(tr, 1.0e6);
  REQUIRE(rise);
  CHECK(std::abs(*rise - 0.3 * std::log(9.0)) < 1e-5);
  CHECK(std::abs(*rise - 0.659) < 1e-3);

  const auto zero = pressure_step(0.0, 0.3, 0.01, 1.0);
  for (double p : zero.pressures_pa) CHECK(p == 0.0);
  CHECK_FALSE(rise_time_10_90(zero, 0.0));

  CHECK_THROWS_AS(pressure_step(1e6, 0.0, 0.01, 1.0), DomainError);
  CHECK_THROWS_AS(pressure_step(1e6, 0.3, 0.01, 0.001), DomainError);
}

TEST_CASE("lock_state_update gate and slip") {
  const auto spec = reference_finger();
  const auto curve = fixture_curve();
  const LockGeometry g = placeholder_geometry();

  auto low = lock_state_update(make_state(spec, uniform(spec.joint_count, 0, 0.1), 0.3e6), curve, g,
                               0.5e6, 0.5);
  for (const auto& j : low.joints) CHECK(j.lock == LockState::Free);
  for (const auto& r : low.reports) CHECK(r.status == JointStatus::Free);

  const auto hi = lock_state_update(make_state(spec, uniform(spec.joint_count, 0, 0.1), 1.5e6), curve,
                                    g, 0.5e6, 0.5);
  for (const auto& j : hi.joints) CHECK(j.lock == LockState::Engaged);
  for (const auto& r : hi.reports) CHECK(r.status == JointStatus::Holds);
  CHECK(hi.reports[0].m_max_nm > 0.9);
  CHECK(hi.reports[0].m_max_nm < 1.6);

  const auto slip = lock_state_update(make_state(spec, uniform(spec.joint_count, 0, 0.1), 1.5e6),
                                      curve, g, 0.5e6, 2.0);
  CHECK(slip.reports[0].status == JointStatus::Slips);
  CHECK(slip.reports.back().status == JointStatus::Holds);
}

TEST_CASE("lock state depends only on current pressure") {
  const auto spec = reference_finger();
  const auto curve = fixture_curve();
  const LockGeometry g = placeholder_geometry();
  std::vector<double> history{0.1e6, 0.7e6, 0.45e6, 1.2e6, 0.5e6, 0.2e6, 1.9e6};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(history.begin(), history.end(), rng);
    SimState s = make_state(spec, uniform(spec.joint_count, 0, 0), 0.0);
    for (double p : history) {
      s.pressure_pa = p;
      const auto upd = lock_state_update(s, curve, g, 0.5e6, 0.0);
      s.joints = upd.joints;
      const auto fresh = lock_state_update(make_state(spec, uniform(spec.joint_count, 0, 0), p), curve,
                                           g, 0.5e6, 0.0);
      for (std::size_t j = 0; j < s.joints.size(); ++j) CHECK(s.joints[j].lock == fresh.joints[j].lock);
    }
  }
}

TEST_CASE("simulate replays twist, pressurize, wrap") {
  const auto spec = reference_finger();
  const auto curve = fixture_curve();
  const std::vector<Phase> schedule{InsertTwist{{deg_to_rad(30)}}, Pressurize{1.0e6},
                                    Wrap{spec.total_length_m / std::numbers::pi}};
  const auto tl = simulate_grasp_sequence(spec, reference_scenario(), curve, placeholder_geometry(),
                                          schedule);
  const auto& last = tl.rows.back().state;
  double twist = 0.0, wrap = 0.0;
  for (const auto& j : last.joints) {
    twist += j.out_of_plane_rad;
    wrap += j.in_plane_rad;
    CHECK(j.lock == LockState::Engaged);
  }
  CHECK(std::abs(twist - deg_to_rad(30)) < 1e-12);
  CHECK(std::abs(wrap - std::numbers::pi / 2) < 1e-9);
  CHECK(tl.slips.empty());
  for (std::size_t i = 1; i < tl.rows.size(); ++i) {
    CHECK(tl.rows[i].state.time_s > tl.rows[i - 1].state.time_s);
  }
  // the tip pose stored in every row is the forward kinematics of its joints
  for (const auto& row : tl.rows) {
    const auto fk = forward_kinematics(spec, row.state.joints);
    CHECK((fk.tip.matrix() - row.state.tip_pose.matrix()).norm() < 1e-15);
  }
}

TEST_CASE("simulate edge cases") {
  const auto spec = reference_finger();
  const auto curve = fixture_curve();
  const auto g = placeholder_geometry();

  const auto empty = simulate_grasp_sequence(spec, reference_scenario(), curve, g, {});
  REQUIRE(empty.rows.size() == 1);
  CHECK(empty.rows[0].phase == "initial");

  const std::vector<Phase> overload{InsertTwist{{deg_to_rad(30)}}, Pressurize{1.5e6}, Wrap{},
                                    Hold{5.0}};
  const auto tl = simulate_grasp_sequence(spec, reference_scenario(), curve, g, overload);
  REQUIRE_FALSE(tl.slips.empty());
  CHECK(tl.slips.front().joint_index == 0);
  CHECK(tl.rows.back().status[0] == JointStatus::Slips);

  const std::vector<Phase> too_tight{Wrap{0.02}};
  try {
    simulate_grasp_sequence(spec, reference_scenario(), curve, g, too_tight);
    FAIL("expected limit violation");
  } catch (const JointLimitError& e) {
    REQUIRE_FALSE(e.violations().empty());
    CHECK(std::string(e.what()).find("joint") != std::string::npos);
  }

  const std::vector<Phase> bad{InsertTwist{{0.1, 0.2}}};
  CHECK_THROWS_AS(simulate_grasp_sequence(spec, reference_scenario(), curve, g, bad), ValidationError);

  // a twist after locking is refused
  const std::vector<Phase> late{Pressurize{1.0e6}, InsertTwist{{deg_to_rad(30)}}};
  const auto blocked = simulate_grasp_sequence(spec, reference_scenario(), curve, g, late);
  for (const auto& j : blocked.rows.back().state.joints) CHECK(j.out_of_plane_rad == 0.0);
  CHECK_FALSE(blocked.notes.empty());
}
