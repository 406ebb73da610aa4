#include "vsfinger/force_curves.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "vsfinger/errors.hpp"
#include "vsfinger/kernels.hpp"
#include "vsfinger/lock_model.hpp"
#include "vsfinger/units.hpp"

namespace vsf::curves {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line,
                    const char* column) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ParseError(source, line, std::string("column ") + column + ": not a number: '" + text + "'");
  }
  return value;
}

std::string fields_to_string(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct Row {
  double pressure_mpa;
  double value;
  bool is_moment;
  std::size_t line;
};

}  // namespace

const ForceCurve& CurveSet::at(double d_m) const {
  for (const auto& c : curves) {
    if (std::abs(c.d_m() - d_m) <= 1e-9) return c;
  }
  throw ValidationError("curve set has no curve for d = " + std::to_string(units::m_to_mm(d_m)) +
                        " mm");
}

CurveSet make_curve_set(std::vector<ForceCurve> curves, std::string provenance) {
  std::sort(curves.begin(), curves.end(),
            [](const ForceCurve& a, const ForceCurve& b) { return a.d_m() < b.d_m(); });
  for (std::size_t i = 1; i < curves.size(); ++i) {
    if (std::abs(curves[i].d_m() - curves[i - 1].d_m()) <= 1e-9) {
      throw ValidationError("curve set: duplicate d value");
    }
  }
  return {std::move(curves), std::move(provenance)};
}

CurveSet parse_curve_set(std::istream& in, const std::string& source,
                         const std::optional<MmaxConversion>& conversion) {
  std::string line;
  std::string provenance;
  std::size_t line_no = 0;
  bool have_header = false;
  bool has_kind_column = false;
  std::map<double, std::vector<Row>> groups;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (!provenance.empty()) provenance += '\n';
      provenance += trim(std::string_view(t).substr(1));
      continue;
    }
    const auto fields = split_fields(t);
    if (!have_header) {
      const bool base = fields.size() >= 3 && fields[0] == "d_mm" && fields[1] == "pressure_mpa" &&
                        fields[2] == "force_n";
      has_kind_column = fields.size() == 4 && fields[3] == "value_kind";
      if (!base || (fields.size() == 4 && !has_kind_column) || fields.size() > 4) {
        throw ParseError(source, line_no,
                         "expected header 'd_mm,pressure_mpa,force_n[,value_kind]'");
      }
      have_header = true;
      continue;
    }
    const std::size_t expected = has_kind_column ? 4 : 3;
    if (fields.size() != expected) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(expected) + " fields, got " +
                           std::to_string(fields.size()));
    }
    const double d_mm = parse_number(fields[0], source, line_no, "d_mm");
    const double p_mpa = parse_number(fields[1], source, line_no, "pressure_mpa");
    const double value = parse_number(fields[2], source, line_no, "force_n");
    bool is_moment = false;
    if (has_kind_column) {
      if (fields[3] == "mmax_nm") {
        is_moment = true;
      } else if (fields[3] != "force_n" && !fields[3].empty()) {
        throw ParseError(source, line_no, "value_kind must be force_n or mmax_nm");
      }
    }
    if (!(d_mm > 0.0)) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": d_mm must be > 0");
    }
    if (p_mpa < 0.0) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": negative pressure");
    }
    if (value < 0.0) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": negative force");
    }
    groups[d_mm].push_back({p_mpa, value, is_moment, line_no});
  }
  if (!have_header) throw ParseError(source, std::max<std::size_t>(line_no, 1), "empty curve file");
  if (groups.empty()) throw ParseError(source, line_no, "curve file has no data rows");

  std::optional<double> newton_per_nm;  // force per unit moment capacity
  std::vector<ForceCurve> curves;
  for (auto& [d_mm, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.pressure_mpa < b.pressure_mpa; });
    std::vector<ForceSample> samples;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      if (i > 0 && r.pressure_mpa == rows[i - 1].pressure_mpa) {
        throw ValidationError(source + ":" + std::to_string(r.line) +
                              ": pressure not strictly increasing for d_mm=" + fields_to_string(d_mm) +
                              " (duplicate of line " + std::to_string(rows[i - 1].line) + ")");
      }
      double force = r.value;
      if (r.is_moment) {
        if (!conversion) {
          throw ValidationError(source + ":" + std::to_string(r.line) +
                                ": mmax_nm rows need a lock geometry and reference mu to convert");
        }
        if (!newton_per_nm) {
          LockGeometry g = conversion->geometry;
          g.mu = conversion->mu_ref;
          newton_per_nm = 1.0 / lock::max_moment(1.0, g).m_max_nm;
        }
        force = r.value * *newton_per_nm;
      }
      samples.push_back({units::mpa_to_pa(r.pressure_mpa), force});
    }
    if (samples.size() < 2) {
      throw ValidationError(source + ":" + std::to_string(rows.front().line) +
                            ": curve d_mm=" + fields_to_string(d_mm) + " has fewer than 2 samples");
    }
    curves.emplace_back(units::mm_to_m(d_mm), std::move(samples));
  }
  return make_curve_set(std::move(curves), std::move(provenance));
}

CurveSet load_curve_set(const std::filesystem::path& path,
                        const std::optional<MmaxConversion>& conversion) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open curve file: " + path.string());
  return parse_curve_set(in, path.string(), conversion);
}

double interpolate_force(const ForceCurve& curve, double p) {
  if (!(p >= 0.0)) throw DomainError("interpolate_force: pressure must be >= 0");
  const auto s = curve.samples();
  if (p < s.front().pressure_pa) return 0.0;
  if (p > s.back().pressure_pa) {
    throw OutOfRangeError("interpolate_force: pressure " + std::to_string(units::pa_to_mpa(p)) +
                          " MPa above last sample " +
                          std::to_string(units::pa_to_mpa(s.back().pressure_pa)) + " MPa");
  }
  auto hi = std::lower_bound(s.begin(), s.end(), p, [](const ForceSample& x, double v) {
    return x.pressure_pa < v;
  });
  if (hi->pressure_pa == p) return hi->force_n;
  auto lo = hi - 1;
  const double t = (p - lo->pressure_pa) / (hi->pressure_pa - lo->pressure_pa);
  return lo->force_n + t * (hi->force_n - lo->force_n);
}

MomentBand m_max_band(const ForceCurve& curve, const LockGeometry& geom, double mu_lo,
                      double mu_hi, double p) {
  if (!(mu_lo <= mu_hi)) throw DomainError("m_max_band: mu_lo must be <= mu_hi");
  const double force = interpolate_force(curve, p);
  LockGeometry lo = geom;
  LockGeometry hi = geom;
  lo.mu = mu_lo;
  hi.mu = mu_hi;
  return {lock::max_moment(force, lo).m_max_nm, lock::max_moment(force, hi).m_max_nm};
}

MomentBand engaged_band(const ForceCurve& curve, const LockGeometry& geom, double mu_lo,
                        double mu_hi, double p, double engage_p) {
  if (p < engage_p) {
    LockGeometry hi = geom;
    hi.mu = mu_hi;
    lock::amplification_factor(hi.theta_rad, hi.mu);  // always-locked still reported
    return {0.0, 0.0};
  }
  return m_max_band(curve, geom, mu_lo, mu_hi, p);
}

void require_valid(const StiffnessProfile& p) {
  if (!(p.soft_pressure_pa >= 0.0 && p.soft_pressure_pa < p.grasp_pressure_pa)) {
    throw ValidationError("stiffness profile: soft pressure must be >= 0 and below grasp pressure");
  }
  if (!(p.soft_max_moment_nm >= 0.0 && p.grasp_min_moment_nm >= 0.0)) {
    throw ValidationError("stiffness profile: thresholds must be >= 0");
  }
}

SweepRow evaluate_design(const ForceCurve& curve, const LockGeometry& geom,
                         const StiffnessProfile& profile, const FrictionRange& mu) {
  SweepRow row;
  row.d_m = curve.d_m();
  try {
    row.soft_moment_nm = m_max_band(curve, geom, mu.lo, mu.hi, profile.soft_pressure_pa).hi_nm;
    row.soft_ok = row.soft_moment_nm <= profile.soft_max_moment_nm;
  } catch (const OutOfRangeError&) {
    row.soft_moment_nm = std::nan("");
    row.note = "soft pressure beyond sampled range";
  }
  try {
    row.grasp_moment_nm = m_max_band(curve, geom, mu.lo, mu.hi, profile.grasp_pressure_pa).lo_nm;
    row.grasp_ok = row.grasp_moment_nm > profile.grasp_min_moment_nm;
  } catch (const OutOfRangeError&) {
    row.grasp_moment_nm = std::nan("");
    if (!row.note.empty()) row.note += "; ";
    row.note += "grasp pressure beyond sampled range";
  }
  return row;
}

SweepReport design_sweep(const CurveSet& set, const LockGeometry& geom,
                         const StiffnessProfile& profile, const FrictionRange& mu) {
  return kernels::design_sweep_omp(set, geom, profile, mu);
}

}  // namespace vsf::curves
