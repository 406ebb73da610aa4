#include "vsfinger/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vsfinger/errors.hpp"
#include "vsfinger/units.hpp"

namespace vsf::config {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_number(const std::string& raw, const std::string& path) {
  const std::string text = trim(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ValidationError(path + ": not a number: '" + raw + "'");
  }
  return v;
}

int to_int(const std::string& raw, const std::string& path) {
  const std::string text = trim(raw);
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError(path + ": not an integer: '" + raw + "'");
  }
  return v;
}

// Reads the keys of one section, rejecting unknown ones.
class Section {
 public:
  Section(const pt::ptree& root, std::string name, std::set<std::string> allowed)
      : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) {
      for (const auto& [key, node] : *child) {
        if (!allowed.contains(key)) throw ValidationError(name_ + "." + key + ": unknown key");
        values_[key] = node.data();
      }
    }
  }

  void number(const char* key, double& target, double scale = 1.0) const {
    if (auto it = values_.find(key); it != values_.end()) {
      target = to_number(it->second, path(key)) * scale;
    }
  }

  void integer(const char* key, int& target) const {
    if (auto it = values_.find(key); it != values_.end()) target = to_int(it->second, path(key));
  }

  bool has(const char* key) const { return values_.contains(key); }

  const std::string* text(const char* key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  std::string path(const char* key) const { return name_ + "." + key; }

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
};

void require(bool ok, const std::string& path, const char* what) {
  if (!ok) throw ValidationError(path + ": " + what);
}

}  // namespace

std::vector<sim::Phase> parse_schedule(const std::string& text, const std::string& path) {
  std::vector<sim::Phase> out;
  std::stringstream ss(text);
  std::string item;
  std::size_t index = 0;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::string where = path + "[" + std::to_string(index++) + "]";
    const auto colon = item.find(':');
    const std::string name = trim(item.substr(0, colon));
    const std::string arg = colon == std::string::npos ? std::string{} : trim(item.substr(colon + 1));
    if (name == "insert_twist_deg") {
      require(!arg.empty(), where, "insert_twist_deg needs at least one angle");
      sim::InsertTwist p;
      std::stringstream as(arg);
      std::string a;
      while (std::getline(as, a, ',')) {
        p.out_of_plane_rad.push_back(units::deg_to_rad(to_number(a, where)));
      }
      out.emplace_back(std::move(p));
    } else if (name == "pressurize_mpa" || name == "pressurize") {
      sim::Pressurize p;
      if (!arg.empty()) {
        require(name == "pressurize_mpa", where, "value needs the unit key pressurize_mpa");
        p.reference_pa = units::mpa_to_pa(to_number(arg, where));
      }
      out.emplace_back(p);
    } else if (name == "wrap_mm" || name == "wrap") {
      sim::Wrap p;
      if (!arg.empty()) {
        require(name == "wrap_mm", where, "value needs the unit key wrap_mm");
        p.object_radius_m = units::mm_to_m(to_number(arg, where));
      }
      out.emplace_back(p);
    } else if (name == "hold_nm") {
      require(!arg.empty(), where, "hold_nm needs an external moment");
      out.emplace_back(sim::Hold{to_number(arg, where)});
    } else {
      throw ValidationError(where + ": unknown phase '" + name + "'");
    }
  }
  return out;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source, e.line(), e.message());
  }
  const std::set<std::string> sections{"geometry", "scenario", "finger", "profile", "simulation"};
  for (const auto& [name, node] : root) {
    if (!sections.contains(name)) {
      throw ValidationError(node.empty() ? name + ": key outside any section"
                                         : name + ": unknown section");
    }
  }

  using namespace units;
  RunConfig cfg;

  const Section geo(root, "geometry",
                    {"theta_deg", "mu", "a_mm", "b_mm", "r1_mm", "protrusion_count", "mu_lo", "mu_hi"});
  geo.number("theta_deg", cfg.geometry.theta_rad, deg_to_rad(1.0));
  geo.number("mu", cfg.geometry.mu);
  geo.number("a_mm", cfg.geometry.a_m, 1e-3);
  geo.number("b_mm", cfg.geometry.b_m, 1e-3);
  geo.number("r1_mm", cfg.geometry.r1_m, 1e-3);
  geo.integer("protrusion_count", cfg.geometry.protrusion_count);
  geo.number("mu_lo", cfg.friction.lo);
  geo.number("mu_hi", cfg.friction.hi);
  {
    const auto v = validate_geometry(cfg.geometry);
    static const std::map<std::string, std::string> key_of{
        {"theta", "theta_deg"}, {"mu", "mu"},       {"a", "a_mm"},
        {"b", "b_mm"},          {"r1", "r1_mm"},    {"protrusion_count", "protrusion_count"}};
    for (const auto& issue : v.issues) {
      if (issue.kind != IssueKind::Range) continue;
      std::string msg = issue.message;
      if (issue.field == "theta") msg = "must be in (0, 90)";
      throw ValidationError("geometry." + key_of.at(issue.field) + ": " + msg);
    }
    require(cfg.friction.lo > 0.0, geo.path("mu_lo"), "must be > 0");
    require(cfg.friction.lo <= cfg.friction.hi, geo.path("mu_hi"), "must be >= mu_lo");
  }

  const Section sc(root, "scenario",
                   {"mass_kg", "finger_count", "finger_length_mm", "object_radius_mm",
                    "operating_pressure_mpa"});
  sc.number("mass_kg", cfg.scenario.mass_kg);
  sc.integer("finger_count", cfg.scenario.finger_count);
  sc.number("finger_length_mm", cfg.scenario.finger_length_m, 1e-3);
  cfg.scenario.object_radius_m = cfg.scenario.finger_length_m / std::numbers::pi;
  sc.number("object_radius_mm", cfg.scenario.object_radius_m, 1e-3);
  sc.number("operating_pressure_mpa", cfg.scenario.operating_pressure_pa, 1e6);
  require(cfg.scenario.mass_kg >= 0.0, sc.path("mass_kg"), "must be >= 0");
  require(cfg.scenario.finger_count >= 2, sc.path("finger_count"), "must be >= 2");
  require(cfg.scenario.finger_length_m > 0.0, sc.path("finger_length_mm"), "must be > 0");
  require(cfg.scenario.object_radius_m >= 0.0, sc.path("object_radius_mm"), "must be >= 0");
  require(cfg.scenario.operating_pressure_pa >= 0.0, sc.path("operating_pressure_mpa"),
          "must be >= 0");

  const Section fi(root, "finger",
                   {"total_length_mm", "joint_count", "root_to_tip_mm", "in_plane_limit_deg",
                    "out_of_plane_limit_deg"});
  fi.number("total_length_mm", cfg.finger.total_length_m, 1e-3);
  fi.integer("joint_count", cfg.finger.joint_count);
  fi.number("root_to_tip_mm", cfg.finger.root_to_tip_m, 1e-3);
  fi.number("in_plane_limit_deg", cfg.finger.in_plane_limit_rad, deg_to_rad(1.0));
  fi.number("out_of_plane_limit_deg", cfg.finger.out_of_plane_limit_rad, deg_to_rad(1.0));
  require(cfg.finger.total_length_m > 0.0, fi.path("total_length_mm"), "must be > 0");
  require(cfg.finger.joint_count >= 1, fi.path("joint_count"), "must be >= 1");
  require(cfg.finger.root_to_tip_m > 0.0, fi.path("root_to_tip_mm"), "must be > 0");
  const double pi = std::numbers::pi;
  require(cfg.finger.in_plane_limit_rad > 0.0 && cfg.finger.in_plane_limit_rad < pi,
          fi.path("in_plane_limit_deg"), "must be in (0, 180)");
  require(cfg.finger.out_of_plane_limit_rad > 0.0 && cfg.finger.out_of_plane_limit_rad < pi,
          fi.path("out_of_plane_limit_deg"), "must be in (0, 180)");

  const Section pr(root, "profile",
                   {"soft_pressure_mpa", "soft_max_moment_nm", "grasp_pressure_mpa",
                    "grasp_min_moment_nm"});
  pr.number("soft_pressure_mpa", cfg.profile.soft_pressure_pa, 1e6);
  pr.number("soft_max_moment_nm", cfg.profile.soft_max_moment_nm);
  pr.number("grasp_pressure_mpa", cfg.profile.grasp_pressure_pa, 1e6);
  pr.number("grasp_min_moment_nm", cfg.profile.grasp_min_moment_nm);
  require(cfg.profile.soft_pressure_pa >= 0.0, pr.path("soft_pressure_mpa"), "must be >= 0");
  require(cfg.profile.soft_pressure_pa < cfg.profile.grasp_pressure_pa,
          pr.path("grasp_pressure_mpa"), "must exceed soft_pressure_mpa");
  require(cfg.profile.soft_max_moment_nm >= 0.0, pr.path("soft_max_moment_nm"), "must be >= 0");
  require(cfg.profile.grasp_min_moment_nm >= 0.0, pr.path("grasp_min_moment_nm"), "must be >= 0");

  const Section si(root, "simulation",
                   {"tau_s", "dt_s", "engage_pressure_mpa", "pressurize_horizon_s", "design_d_mm",
                    "schedule"});
  si.number("tau_s", cfg.sim.tau_s);
  si.number("dt_s", cfg.sim.dt_s);
  si.number("engage_pressure_mpa", cfg.sim.engage_pressure_pa, 1e6);
  si.number("pressurize_horizon_s", cfg.sim.pressurize_horizon_s);
  si.number("design_d_mm", cfg.design_d_m, 1e-3);
  require(cfg.sim.tau_s > 0.0, si.path("tau_s"), "must be > 0");
  require(cfg.sim.dt_s > 0.0, si.path("dt_s"), "must be > 0");
  require(cfg.sim.engage_pressure_pa >= 0.0, si.path("engage_pressure_mpa"), "must be >= 0");
  require(cfg.sim.pressurize_horizon_s >= cfg.sim.dt_s, si.path("pressurize_horizon_s"),
          "must be >= dt_s");
  require(cfg.design_d_m > 0.0, si.path("design_d_mm"), "must be > 0");
  if (const std::string* s = si.text("schedule")) {
    cfg.schedule = parse_schedule(*s, si.path("schedule"));
    try {
      sim::validate_schedule(cfg.finger, cfg.schedule);
    } catch (const ValidationError& e) {
      throw ValidationError(si.path("schedule") + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path.string());
  return parse_config(in, path.string());
}

}  // namespace vsf::config
