#include "vsfinger/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vsfinger/errors.hpp"
#include "vsfinger/units.hpp"

namespace vsf {

namespace {

void range_issue(GeometryValidation& out, std::string field, std::string message) {
  out.issues.push_back({IssueKind::Range, std::move(field), std::move(message)});
}

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i];
  }
  return os.str();
}

}  // namespace

double LockGeometry::release_margin() const noexcept {
  return std::cos(theta_rad) - mu * std::sin(theta_rad);
}

bool GeometryValidation::range_ok() const noexcept {
  return std::none_of(issues.begin(), issues.end(),
                      [](const GeometryIssue& i) { return i.kind == IssueKind::Range; });
}

bool GeometryValidation::always_locked() const noexcept {
  return std::any_of(issues.begin(), issues.end(),
                     [](const GeometryIssue& i) { return i.kind == IssueKind::AlwaysLocked; });
}

std::string GeometryValidation::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].field << ": " << issues[i].message;
  }
  return os.str();
}

GeometryValidation validate_geometry(const LockGeometry& g) {
  GeometryValidation out;
  const double half_pi = std::numbers::pi / 2.0;
  if (!(std::isfinite(g.theta_rad) && g.theta_rad > 0.0 && g.theta_rad < half_pi)) {
    range_issue(out, "theta", "must be in (0, pi/2)");
  }
  if (!(std::isfinite(g.mu) && g.mu > 0.0)) range_issue(out, "mu", "must be > 0");
  if (!(std::isfinite(g.a_m) && g.a_m > 0.0)) range_issue(out, "a", "must be > 0");
  if (!(std::isfinite(g.b_m) && g.b_m > 0.0)) range_issue(out, "b", "must be > 0");
  if (!(std::isfinite(g.r1_m) && g.r1_m >= 0.0)) range_issue(out, "r1", "must be >= 0");
  if (g.protrusion_count < 1) range_issue(out, "protrusion_count", "must be >= 1");

  if (std::isfinite(g.theta_rad) && std::isfinite(g.mu) && !(g.release_margin() > 0.0)) {
    std::ostringstream os;
    os << "cos(theta) - mu*sin(theta) = " << g.release_margin()
       << " <= 0, interlock never releases";
    out.issues.push_back({IssueKind::AlwaysLocked, "theta/mu", os.str()});
  }
  return out;
}

void require_geometry_ranges(const LockGeometry& geom) {
  GeometryValidation v = validate_geometry(geom);
  std::erase_if(v.issues, [](const GeometryIssue& i) { return i.kind != IssueKind::Range; });
  if (!v.ok()) throw DomainError("invalid lock geometry: " + v.summary());
}

ForceCurve::ForceCurve(double d_m, std::vector<ForceSample> samples)
    : d_m_(d_m), samples_(std::move(samples)) {
  if (!(std::isfinite(d_m_) && d_m_ > 0.0)) throw ValidationError("force curve: d must be > 0");
  if (samples_.size() < 2) throw ValidationError("force curve: at least 2 samples required");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.pressure_pa) || s.pressure_pa < 0.0) {
      throw ValidationError("force curve: sample " + std::to_string(i) + " has invalid pressure");
    }
    if (!std::isfinite(s.force_n) || s.force_n < 0.0) {
      throw ValidationError("force curve: sample " + std::to_string(i) + " has negative force");
    }
    if (i > 0 && !(s.pressure_pa > samples_[i - 1].pressure_pa)) {
      throw ValidationError("force curve: pressures not strictly increasing at sample " +
                            std::to_string(i));
    }
  }
}

void require_valid(const FingerSpec& s) {
  std::vector<std::string> issues;
  const double pi = std::numbers::pi;
  if (!(s.total_length_m > 0.0)) issues.emplace_back("total_length must be > 0");
  if (s.joint_count < 1) issues.emplace_back("joint_count must be >= 1");
  if (!(s.root_to_tip_m > 0.0)) issues.emplace_back("root_to_tip must be > 0");
  if (!(s.in_plane_limit_rad > 0.0 && s.in_plane_limit_rad < pi)) {
    issues.emplace_back("in_plane_limit must be in (0, pi)");
  }
  if (!(s.out_of_plane_limit_rad > 0.0 && s.out_of_plane_limit_rad < pi)) {
    issues.emplace_back("out_of_plane_limit must be in (0, pi)");
  }
  if (!issues.empty()) throw ValidationError("invalid finger spec: " + join_issues(issues));
}

void require_valid(const GraspScenario& s) {
  std::vector<std::string> issues;
  if (!(std::isfinite(s.mass_kg) && s.mass_kg >= 0.0)) issues.emplace_back("mass must be >= 0");
  if (s.finger_count < 2) issues.emplace_back("finger_count must be >= 2");
  if (!(s.finger_length_m > 0.0)) issues.emplace_back("finger_length must be > 0");
  if (!(std::isfinite(s.object_radius_m) && s.object_radius_m >= 0.0)) {
    issues.emplace_back("object_radius must be >= 0");
  }
  if (!(std::isfinite(s.operating_pressure_pa) && s.operating_pressure_pa >= 0.0)) {
    issues.emplace_back("operating_pressure must be >= 0");
  }
  if (!issues.empty()) throw ValidationError("invalid grasp scenario: " + join_issues(issues));
}

FingerSpec reference_finger() {
  using namespace units;
  return {mm_to_m(193.5), 8, mm_to_m(142.0), deg_to_rad(135.0), deg_to_rad(115.0)};
}

LockGeometry placeholder_geometry() {
  using namespace units;
  return {deg_to_rad(30.0), 0.55, mm_to_m(4.0), mm_to_m(3.0), mm_to_m(5.0), 4};
}

GraspScenario reference_scenario() {
  using namespace units;
  return {1.5, 3, 0.2, 0.2 / std::numbers::pi, mpa_to_pa(1.5)};
}

}  // namespace vsf
