#pragma once

// Internal computation is SI (m, N, Pa, rad). The helpers below are the only
// place where interface units (mm, MPa, deg) are converted.

#include <numbers>

namespace vsf::units {

inline constexpr double kStandardGravity = 9.80665;  // m/s^2

constexpr double mm_to_m(double mm) noexcept { return mm * 1e-3; }
constexpr double m_to_mm(double m) noexcept { return m * 1e3; }
constexpr double mpa_to_pa(double mpa) noexcept { return mpa * 1e6; }
constexpr double pa_to_mpa(double pa) noexcept { return pa * 1e-6; }
constexpr double deg_to_rad(double deg) noexcept { return deg * (std::numbers::pi / 180.0); }
constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / std::numbers::pi); }

}  // namespace vsf::units
