// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.
//
//   acceptance --cli <vsfinger binary> --source <repo root> --work <scratch dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vsfinger/errors.hpp"
#include "vsfinger/finger_sim.hpp"
#include "vsfinger/force_curves.hpp"
#include "vsfinger/grasp_requirements.hpp"
#include "vsfinger/lock_model.hpp"
#include "vsfinger/units.hpp"

using namespace vsf;
namespace fs = std::filesystem;

namespace {

struct Paths {
  std::string cli;
  fs::path source;
  fs::path work;
};

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream s;
      s.precision(17);
      s << what << ": got " << got << ", want " << want << " +/- " << tol;
      failures.push_back(s.str());
    }
  }
  void rel(double got, double want, double tol, const std::string& what) {
    near(got, want, tol * std::abs(want), what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ForceCurve fixture_curve(const Paths& p, double d_m) {
  return curves::load_curve_set(p.source / "data/lock_force_curves.csv").at(d_m);
}

void required_moment_anchor(const Paths&, Check& c) {
  GraspScenario s = reference_scenario();
  const auto t0 = Clock::now();
  const double m = grasp::required_root_moment(s);
  const double elapsed = seconds_since(t0);
  const double closed = 1.5 * units::kStandardGravity * 0.2 / 3 * (1 / std::numbers::pi + 0.25);
  c.rel(m, closed, 1e-14, "closed form mgL/n(1/pi+1/4)");
  c.rel(m, 0.5575, 1e-3, "tabulated 0.5575 N*m");
  c.expect(std::abs(m - 0.6) / 0.6 <= 0.10, "within 10% of the rounded 0.6 N*m target");
  c.expect(elapsed < 1e-3, "runtime " + fmt("%.3g", elapsed) + " s >= 1 ms");
}

void closed_form_vs_integral(const Paths&, Check& c) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mass(0.0, 5.0), length(0.05, 0.5);
  std::uniform_int_distribution<int> fingers(2, 6);
  const auto t0 = Clock::now();
  for (int i = 0; i < 100; ++i) {
    GraspScenario s = reference_scenario();
    s.mass_kg = mass(rng);
    s.finger_count = fingers(rng);
    s.finger_length_m = length(rng);
    s.object_radius_m = s.finger_length_m / std::numbers::pi;
    const double got = grasp::required_root_moment(s);
    const double want = testing::required_moment_by_quadrature(s.mass_kg, s.finger_count, s.finger_length_m);
    c.rel(got, want, 1e-8, "scenario " + std::to_string(i));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 1.0, "runtime " + fmt("%.3g", elapsed) + " s >= 1 s");
}

void lever_integral_oracle(const Paths&, Check& c) {
  testing::GeometrySampler sampler(3);
  const auto t0 = Clock::now();
  for (int i = 0; i < 100; ++i) {
    const auto g = sampler.next();
    const double got = lock::lever_integral(g);
    const double want = testing::midpoint_lever_integral(g.a_m, g.b_m, g.theta_rad, g.r1_m, 2000);
    c.rel(got, want, 1e-6, "geometry " + std::to_string(i));
  }
  // cos(theta) -> 0: the distance reduces to y + r1.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> len(0.5e-3, 10e-3), r1(0.0, 10e-3);
  const double theta = std::nextafter(std::numbers::pi / 2, 0.0);
  for (int i = 0; i < 20; ++i) {
    const double a = len(rng), b = len(rng), r = r1(rng);
    const double got = lock::lever_integral(a, b, theta, r, {});
    c.rel(got, a * (b * b / 2 + r * b), 1e-9, "boundary case " + std::to_string(i));
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 30.0, "runtime " + fmt("%.3g", elapsed) + " s >= 30 s");
}

void lock_formula_anchors(const Paths&, Check& c) {
  for (double mu : {0.0, 0.1, 0.4, 0.55, 0.7, 1.5}) {
    c.near(lock::amplification_factor(1e-15, mu), mu, 1e-12, "theta->0, mu=" + fmt("%g", mu));
  }
  for (double th : {0.1, 0.5, 1.0, 1.4}) {
    c.rel(lock::amplification_factor(th, 0.0), std::tan(th), 1e-12, "mu=0, theta=" + fmt("%g", th));
  }

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(1e-3, std::numbers::pi / 2 - 1e-3), mu(0.0, 3.0);
  int mismatches = 0;
  for (int i = 0; i < 20000; ++i) {
    double t = th(rng);
    double m = mu(rng);
    if (i % 4 == 0) m = std::cos(t) / std::sin(t);  // on the boundary, up to rounding
    const bool should_lock = std::cos(t) - m * std::sin(t) <= 0.0;
    bool raised = false;
    try {
      (void)lock::amplification_factor(t, m);
    } catch (const AlwaysLockedError&) {
      raised = true;
    }
    if (raised != should_lock) ++mismatches;
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " AlwaysLocked mismatches");

  testing::GeometrySampler sampler(6);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const auto g = sampler.next();
  const double base = lock::max_moment(1.0, g).m_max_nm;
  for (int i = 0; i < 20; ++i) {
    const double k = scale(rng);
    c.rel(lock::max_moment(k, g).m_max_nm, k * base, 1e-12, "linearity at k=" + fmt("%g", k));
  }
}

void design_sweep_reproduction(const Paths& p, Check& c) {
  const auto t0 = Clock::now();
  const auto set = curves::load_curve_set(p.source / "data/lock_force_curves.csv");
  const auto rep = curves::design_sweep(set, placeholder_geometry(), curves::StiffnessProfile{},
                                        curves::FrictionRange{});
  const double elapsed = seconds_since(t0);
  c.expect(rep.selected_d_m.has_value(), "a design was selected");
  if (rep.selected_d_m) c.near(*rep.selected_d_m, 2.5e-3, 1e-12, "selected d");
  c.expect(elapsed < 1.0, "runtime " + fmt("%.3g", elapsed) + " s >= 1 s");
}

void band_consistency(const Paths& p, Check& c) {
  const auto curve = fixture_curve(p, 2.5e-3);
  const auto band = curves::m_max_band(curve, placeholder_geometry(), 0.4, 0.7, 1.5e6);
  c.expect(band.lo_nm <= 1.2 && 1.2 <= band.hi_nm,
           "band [" + fmt("%.4g", band.lo_nm) + ", " + fmt("%.4g", band.hi_nm) + "] contains 1.2");
  const double tip = 1.2 / reference_finger().root_to_tip_m;
  c.expect(fmt("%.3g", tip) == "8.45", "tip force " + fmt("%.3g", tip) + " N reported as 8.45");
}

void below_engagement(const Paths& p, Check& c) {
  const auto set = curves::load_curve_set(p.source / "data/lock_force_curves.csv");
  for (const auto& curve : set.curves) {
    for (double pa : {0.0, 0.1e6, 0.25e6, 0.4e6, 0.499e6}) {
      const auto b = curves::engaged_band(curve, placeholder_geometry(), 0.4, 0.7, pa, 0.5e6);
      c.expect(b.lo_nm == 0.0 && b.hi_nm == 0.0,
               "d=" + fmt("%g", units::m_to_mm(curve.d_m())) + " mm at " + fmt("%g", pa) + " Pa is zero");
    }
  }
}

void pressure_dynamics(const Paths&, Check& c) {
  const double tau = 0.3;
  const auto tr = sim::pressure_step(1.0, tau, 1e-3, 5 * tau);
  const std::size_t at_tau = 300;
  c.near(tr.times_s[at_tau], tau, 1e-12, "sample time");
  c.near(tr.pressures_pa[at_tau], 0.632, 1e-3, "P(tau)/ref");
  const auto rise = sim::rise_time_10_90(tr, 1.0);
  c.expect(rise.has_value(), "rise time available");
  if (rise) {
    c.near(*rise, tau * std::log(9.0), 1e-6, "rise time vs tau ln 9");
    c.near(*rise, 0.659, 5e-4, "rise time 0.659 s");
  }
  bool monotone = true;
  for (std::size_t i = 1; i < tr.pressures_pa.size(); ++i) {
    monotone = monotone && tr.pressures_pa[i] >= tr.pressures_pa[i - 1];
  }
  c.expect(monotone, "monotone trace");
}

void kinematics_invariants(const Paths&, Check& c) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(-0.4, 0.4);
  std::uniform_int_distribution<int> kd(1, 12);
  double worst_rot = 0.0, worst_len = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    FingerSpec spec = reference_finger();
    spec.joint_count = kd(rng);
    std::vector<sim::JointState> joints(static_cast<std::size_t>(spec.joint_count));
    for (auto& j : joints) j = {ang(rng), ang(rng)};
    const auto fk = sim::forward_kinematics(spec, joints);
    Eigen::Vector3d prev = Eigen::Vector3d::Zero();
    for (const auto& pose : fk.unit_poses) {
      const Eigen::Matrix3d r = pose.linear();
      worst_rot = std::max({worst_rot, (r.transpose() * r - Eigen::Matrix3d::Identity()).norm(),
                            std::abs(r.determinant() - 1.0)});
      worst_len = std::max(worst_len, std::abs((pose.translation() - prev).norm() - spec.segment_length_m()));
      prev = pose.translation();
    }
  }
  c.expect(worst_rot < 1e-10, "proper rotation, worst " + fmt("%.3g", worst_rot));
  c.expect(worst_len < 1e-12, "segment length, worst " + fmt("%.3g", worst_len));

  for (int k : {2, 3, 5, 8, 16}) {
    FingerSpec spec = reference_finger();
    spec.joint_count = k;
    for (double total : {0.3, std::numbers::pi / 2, std::numbers::pi}) {
      const double phi = total / k;
      const auto fk = sim::forward_kinematics(spec, std::vector<sim::JointState>(k, {phi, 0.0}));
      const auto want = testing::planar_arc_tip_closed_form(spec.segment_length_m(), phi, k);
      const Eigen::Vector3d tip = fk.tip.translation();
      const double err = std::hypot(tip.z() - want.real(), tip.x() - want.imag(), tip.y());
      c.expect(err < 1e-9, "planar arc k=" + std::to_string(k) + " err " + fmt("%.3g", err));
    }
  }

  const FingerSpec spec = reference_finger();
  const auto wp = sim::wrap_pose(spec, spec.total_length_m / std::numbers::pi);
  double distal = 0.0;
  for (std::size_t i = static_cast<std::size_t>(spec.joint_count / 2); i < wp.joints.size(); ++i) {
    distal += wp.joints[i].in_plane_rad;
  }
  c.near(distal, std::numbers::pi / 2, 1e-9, "distal wrap arc");

  const int k = spec.joint_count;
  const double ip = units::deg_to_rad(135.0), oop = units::deg_to_rad(115.0);
  auto uniform = [k](double a, double b) {
    return std::vector<sim::JointState>(static_cast<std::size_t>(k), sim::JointState{a, b});
  };
  c.expect(sim::joint_limit_check(spec, uniform(ip / k, oop / k)).empty(), "135/115 accepted");
  c.expect(sim::joint_limit_check(spec, uniform(-ip / k, oop / k)).empty(), "-135/115 accepted");
  c.expect(!sim::joint_limit_check(spec, uniform(ip * (1 + 1e-9) / k, 0)).empty(), "above 135 rejected");
  c.expect(!sim::joint_limit_check(spec, uniform(0, oop * (1 + 1e-9) / k)).empty(), "above 115 rejected");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(const Paths& p, Check& c) {
  fs::create_directories(p.work);
  const std::string cfg = (p.source / "configs/reference.ini").string();
  const std::string curves = (p.source / "data/lock_force_curves.csv").string();
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"lock", "lock --config " + cfg + " --pressure 1.5 --curves " + curves + " --d 2.5"},
      {"grasp", "grasp --config " + cfg + " --curves " + curves},
      {"sweep", "sweep --config " + cfg + " --curves " + curves},
      {"step", "step --reference 1.5 --tau 0.3"},
      {"simulate", "simulate --config " + cfg + " --curves " + curves},
  };
  for (const auto& [name, args] : runs) {
    for (const char* fmtname : {"csv", "table"}) {
      std::string outputs[2];
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path file = p.work / (name + "_" + fmtname + "_" + std::to_string(rep) + ".txt");
        const std::string cmd =
            "\"" + p.cli + "\" " + args + " --format " + fmtname + " > \"" + file.string() + "\" 2>&1";
        const int rc = std::system(cmd.c_str());
        c.expect(rc == 0, name + " exited with " + std::to_string(rc));
        outputs[rep] = slurp(file);
      }
      c.expect(!outputs[0].empty(), name + " produced output");
      c.expect(outputs[0] == outputs[1], name + " (" + fmtname + ") outputs differ");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  Paths paths;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--cli") paths.cli = argv[i + 1];
    else if (key == "--source") paths.source = argv[i + 1];
    else if (key == "--work") paths.work = argv[i + 1];
  }
  if (paths.cli.empty() || paths.source.empty() || paths.work.empty()) {
    std::cerr << "usage: acceptance --cli <vsfinger> --source <repo root> --work <dir>\n";
    return 2;
  }

  const std::vector<std::pair<const char*, std::function<void(const Paths&, Check&)>>> criteria = {
      {"required-moment anchor", required_moment_anchor},
      {"closed form vs integral", closed_form_vs_integral},
      {"lever integral oracle", lever_integral_oracle},
      {"lock formula anchors", lock_formula_anchors},
      {"design sweep selects 2.5 mm", design_sweep_reproduction},
      {"moment band at 1.5 MPa", band_consistency},
      {"zero moment below engagement", below_engagement},
      {"pressure dynamics", pressure_dynamics},
      {"kinematics invariants", kinematics_invariants},
      {"CLI determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(paths, c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(t0);
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s %2zu %s (%.3f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, elapsed);
    for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
