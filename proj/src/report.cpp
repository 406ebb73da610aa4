#include "vsfinger/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "vsfinger/kernels.hpp"
#include "vsfinger/units.hpp"

namespace vsf::report {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void Table::write(std::ostream& os, Format format) const {
  if (format == Format::Csv) {
    auto line = [&os](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
      }
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return;
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], r[i].size());
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << "  ";
      os << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

Table sweep_table(const curves::SweepReport& report, const curves::StiffnessProfile& profile) {
  using units::m_to_mm;
  using units::pa_to_mpa;
  Table t;
  t.header = {"d_mm",           "soft_pressure_mpa", "soft_moment_nm", "soft_ok",
              "grasp_pressure_mpa", "grasp_moment_nm", "grasp_ok",      "pass", "note"};
  for (const auto& r : report.rows) {
    t.rows.push_back({num(m_to_mm(r.d_m)), num(pa_to_mpa(profile.soft_pressure_pa)),
                      num(r.soft_moment_nm), r.soft_ok ? "yes" : "no",
                      num(pa_to_mpa(profile.grasp_pressure_pa)), num(r.grasp_moment_nm),
                      r.grasp_ok ? "yes" : "no", r.pass() ? "yes" : "no", r.note});
  }
  return t;
}

Table trace_table(const sim::PressureTrace& trace) {
  Table t;
  t.header = {"time_s", "pressure_mpa"};
  for (std::size_t i = 0; i < trace.times_s.size(); ++i) {
    t.rows.push_back({num(trace.times_s[i]), num(units::pa_to_mpa(trace.pressures_pa[i]))});
  }
  return t;
}

Table timeline_table(const sim::Timeline& tl) {
  Table t;
  t.header = {"time_s", "phase", "pressure_mpa", "tip_x_mm", "tip_y_mm", "tip_z_mm"};
  const std::size_t k = tl.rows.empty() ? 0 : tl.rows.front().state.joints.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::string p = "j" + std::to_string(j) + "_";
    t.header.push_back(p + "in_plane_deg");
    t.header.push_back(p + "out_of_plane_deg");
    t.header.push_back(p + "lock");
    t.header.push_back(p + "status");
  }
  for (const auto& row : tl.rows) {
    const auto& s = row.state;
    const Eigen::Vector3d tip = s.tip_pose.translation();
    std::vector<std::string> cells{num(s.time_s),
                                   row.phase,
                                   num(units::pa_to_mpa(s.pressure_pa)),
                                   num(units::m_to_mm(tip.x())),
                                   num(units::m_to_mm(tip.y())),
                                   num(units::m_to_mm(tip.z()))};
    for (std::size_t j = 0; j < s.joints.size(); ++j) {
      cells.push_back(num(units::rad_to_deg(s.joints[j].in_plane_rad)));
      cells.push_back(num(units::rad_to_deg(s.joints[j].out_of_plane_rad)));
      cells.push_back(sim::to_string(s.joints[j].lock));
      cells.push_back(sim::to_string(row.status[j]));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void write_band_svg(std::ostream& os, const curves::CurveSet& set, const LockGeometry& geom,
                    const curves::FrictionRange& mu, int samples) {
  constexpr double kW = 640.0, kH = 420.0, kLeft = 60.0, kRight = 20.0, kTop = 20.0, kBottom = 50.0;
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

  double p_max = 0.0;
  for (const auto& c : set.curves) p_max = std::max(p_max, c.max_pressure_pa());
  struct Series {
    std::vector<double> p;
    std::vector<curves::MomentBand> band;
  };
  std::vector<Series> series;
  double m_max = 0.0;
  for (const auto& c : set.curves) {
    Series s;
    for (int i = 0; i <= samples; ++i) s.p.push_back(c.max_pressure_pa() * i / samples);
    s.band = kernels::band_grid_omp(c, geom, mu, s.p);
    for (const auto& b : s.band) m_max = std::max(m_max, b.hi_nm);
    series.push_back(std::move(s));
  }
  if (m_max <= 0.0) m_max = 1.0;
  if (p_max <= 0.0) p_max = 1.0;
  auto x = [&](double p) { return kLeft + (kW - kLeft - kRight) * p / p_max; };
  auto y = [&](double m) { return kH - kBottom - (kH - kTop - kBottom) * m / m_max; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kW) << "\" height=\""
     << num(kH) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y(0)) << "\" x2=\"" << num(kW - kRight)
     << "\" y2=\"" << num(y(0)) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y(0)) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(kTop) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << num(kW / 2) << "\" y=\"" << num(kH - 12) << "\" text-anchor=\"middle\">"
     << "pressure [MPa] (max " << num(units::pa_to_mpa(p_max)) << ")</text>\n";
  os << "<text x=\"16\" y=\"" << num(kH / 2) << "\" transform=\"rotate(-90 16 " << num(kH / 2)
     << ")\" text-anchor=\"middle\">M_max [Nm] (max " << num(m_max) << ")</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kColors[i % std::size(kColors)];
    os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.3\" stroke=\"" << color
       << "\" points=\"";
    for (std::size_t k = 0; k < s.p.size(); ++k) {
      os << num(x(s.p[k])) << ',' << num(y(s.band[k].hi_nm)) << ' ';
    }
    for (std::size_t k = s.p.size(); k-- > 0;) {
      os << num(x(s.p[k])) << ',' << num(y(s.band[k].lo_nm)) << (k ? " " : "");
    }
    os << "\"/>\n";
    os << "<text x=\"" << num(kLeft + 10) << "\" y=\"" << num(kTop + 16 * (i + 1)) << "\" fill=\""
       << color << "\">d = " << num(units::m_to_mm(set.curves[i].d_m())) << " mm</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace vsf::report
