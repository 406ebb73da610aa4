#include "vsfinger/lock_model.hpp"

#include <cmath>
#include <numbers>

#include "vsfinger/errors.hpp"

namespace vsf::lock {

namespace {

void require_open_theta(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw DomainError("stress_transform: theta must be in (0, pi/2)");
  }
}

}  // namespace

NormalFrictionStress stress_transform(const XiEtaStress& s, double theta) {
  require_open_theta(theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return {s.sigma_xi_pa * st + s.sigma_eta_pa * ct, s.sigma_xi_pa * ct - s.sigma_eta_pa * st};
}

XiEtaStress stress_transform(const NormalFrictionStress& s, double theta) {
  require_open_theta(theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  return {s.sigma_n_pa * st + s.sigma_r_pa * ct, s.sigma_n_pa * ct - s.sigma_r_pa * st};
}

double distance_to_axis(double x, double y, double theta, double r1) {
  if (x < 0.0 || y < 0.0) throw DomainError("distance_to_axis: x and y must be >= 0");
  return std::hypot(x * std::cos(theta), y + r1);
}

double lever_integral(double a, double b, double theta, double r1, const quad::Options& opt) {
  if (!(opt.rel_tol > 0.0 && opt.rel_tol <= 1e-3)) {
    throw DomainError("lever_integral: rel_tol must be in (0, 1e-3]");
  }
  if (a < 0.0 || b < 0.0 || r1 < 0.0) throw DomainError("lever_integral: negative dimension");
  if (a == 0.0 || b == 0.0) return 0.0;
  const double ct = std::cos(theta);
  auto integrand = [ct, r1](double x, double y) { return std::hypot(x * ct, y + r1); };
  // d(a/2, b/2) * a * b is within a small factor of D for any admissible geometry.
  const double scale = a * b * integrand(0.5 * a, 0.5 * b);
  return quad::simpson_2d(integrand, a, b, scale, opt);
}

double lever_integral(const LockGeometry& geom, double rel_tol) {
  require_geometry_ranges(geom);
  quad::Options opt;
  opt.rel_tol = rel_tol;
  return lever_integral(geom.a_m, geom.b_m, geom.theta_rad, geom.r1_m, opt);
}

double amplification_factor(double theta, double mu) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double denom = ct - mu * st;
  if (!(denom > 0.0)) {
    throw AlwaysLockedError("cos(theta) - mu*sin(theta) <= 0: interlock never releases");
  }
  return (st + mu * ct) / denom;
}

const char* to_string(LockStatus s) noexcept {
  switch (s) {
    case LockStatus::Holds:
      return "Holds";
    case LockStatus::Slips:
      return "Slips";
    case LockStatus::AlwaysLocked:
      return "AlwaysLocked";
  }
  return "?";
}

LockAssessment max_moment(double force_n, const LockGeometry& geom, double rel_tol) {
  if (!(force_n >= 0.0)) throw DomainError("max_moment: force must be >= 0");
  require_geometry_ranges(geom);
  LockAssessment out;
  out.amplification = amplification_factor(geom.theta_rad, geom.mu);
  out.lever_integral_m3 = lever_integral(geom, rel_tol);
  out.m_max_nm = force_n * out.amplification * out.lever_integral_m3 / (geom.a_m * geom.b_m);
  out.status = LockStatus::Holds;
  return out;
}

LockStatus slip_check(double applied, const LockAssessment& capacity) {
  if (capacity.status == LockStatus::AlwaysLocked) return LockStatus::AlwaysLocked;
  return applied <= capacity.m_max_nm ? LockStatus::Holds : LockStatus::Slips;
}

LockStatus slip_check(double applied, double force_n, const LockGeometry& geom) {
  if (!(applied >= 0.0)) throw DomainError("slip_check: applied moment must be >= 0");
  if (!(geom.release_margin() > 0.0)) return LockStatus::AlwaysLocked;
  return slip_check(applied, max_moment(force_n, geom));
}

}  // namespace vsf::lock
