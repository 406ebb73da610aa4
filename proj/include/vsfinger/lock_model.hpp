#pragma once

// Quasi-static self-locking analysis of the 2-DOF joint unit.
//
// A pressing force F between Plates A and B, acting on n inclined protrusions
// of top surface a x b, holds an out-of-plane moment up to
//
//   M_max = F * (sin t + mu cos t) / (cos t - mu sin t) * D / (a b),
//   D     = int_0^a int_0^b sqrt((x cos t)^2 + (y + r1)^2) dy dx,
//
// assuming uniform contact stress on each protrusion surface. When
// cos t - mu sin t <= 0 the interlock never releases (always locked).
//
// Naming note: the force decomposition labels sigma_N "friction" and sigma_R
// "normal" per unit area, yet the no-slip condition reads R <= mu N. The
// algebra downstream of that condition is self-consistent and is implemented
// as written; the labels are kept as they are.

#include "vsfinger/core_types.hpp"
#include "vsfinger/quadrature.hpp"

namespace vsf::lock {

struct XiEtaStress {
  double sigma_xi_pa = 0.0;
  double sigma_eta_pa = 0.0;
};

struct NormalFrictionStress {
  double sigma_n_pa = 0.0;
  double sigma_r_pa = 0.0;
};

// sigma_N = sigma_xi sin t + sigma_eta cos t, sigma_R = sigma_xi cos t - sigma_eta sin t.
// The matrix is its own inverse, so the two overloads are the same map.
// Throws DomainError unless theta is in (0, pi/2).
NormalFrictionStress stress_transform(const XiEtaStress& s, double theta_rad);
XiEtaStress stress_transform(const NormalFrictionStress& s, double theta_rad);

// Distance from (x, y) on the protrusion surface to the joint axis.
double distance_to_axis(double x_m, double y_m, double theta_rad, double r1_m);

// D over [0, a] x [0, b]. rel_tol must lie in (0, 1e-3].
double lever_integral(const LockGeometry& geom, double rel_tol = 1e-10);
double lever_integral(double a_m, double b_m, double theta_rad, double r1_m,
                      const quad::Options& opt);

// (sin t + mu cos t) / (cos t - mu sin t). Throws AlwaysLockedError when the
// denominator is <= 0.
double amplification_factor(double theta_rad, double mu);

enum class LockStatus { Holds, Slips, AlwaysLocked };

const char* to_string(LockStatus s) noexcept;

struct LockAssessment {
  double m_max_nm = 0.0;
  double amplification = 0.0;
  double lever_integral_m3 = 0.0;
  LockStatus status = LockStatus::Holds;
};

// Capacity of the interlock under pressing force F (status is Holds, i.e.
// evaluated against zero applied moment).
LockAssessment max_moment(double force_n, const LockGeometry& geom, double rel_tol = 1e-10);

// Closed boundary: applied == m_max holds.
LockStatus slip_check(double applied_moment_nm, double force_n, const LockGeometry& geom);
LockStatus slip_check(double applied_moment_nm, const LockAssessment& capacity);

}  // namespace vsf::lock
