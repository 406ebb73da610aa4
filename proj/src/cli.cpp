#include "vsfinger/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "vsfinger/config.hpp"
#include "vsfinger/errors.hpp"
#include "vsfinger/finger_sim.hpp"
#include "vsfinger/force_curves.hpp"
#include "vsfinger/grasp_requirements.hpp"
#include "vsfinger/lock_model.hpp"
#include "vsfinger/report.hpp"
#include "vsfinger/units.hpp"

namespace vsf::cli {

namespace {

using report::num;
using report::Table;

struct Options {
  std::string config_path;
  std::string curves_path;
  std::string out_path;
  std::string format = "table";

  std::optional<double> force_n;
  std::optional<double> pressure_mpa;
  std::optional<double> d_mm;
  std::optional<double> m_max_nm;
  std::string svg_path;
  double reference_mpa = 1.0;
  std::optional<double> tau_s;
  std::optional<double> dt_s;
  std::optional<double> horizon_s;
  std::optional<std::string> schedule;
};

// Data goes to --out when given (summary to the console), otherwise data goes
// to the console and the summary to the error stream.
class Sink {
 public:
  Sink(const Options& opt, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    format_ = opt.format == "csv" ? report::Format::Csv : report::Format::Table;
    if (!opt.out_path.empty()) {
      file_.open(opt.out_path, std::ios::binary);
      if (!file_) throw Error("cannot open output file: " + opt.out_path);
      format_ = report::Format::Csv;
    }
  }

  std::ostream& data() { return file_.is_open() ? static_cast<std::ostream&>(file_) : out_; }
  std::ostream& summary() { return file_.is_open() ? out_ : err_; }
  void table(const Table& t) { t.write(data(), format_); }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::ofstream file_;
  report::Format format_;
};

config::RunConfig load(const Options& opt) {
  return opt.config_path.empty() ? config::RunConfig{} : config::load_config(opt.config_path);
}

curves::CurveSet load_curves(const Options& opt, const config::RunConfig& cfg) {
  if (opt.curves_path.empty()) throw ValidationError("--curves FILE is required");
  return curves::load_curve_set(opt.curves_path,
                                curves::MmaxConversion{cfg.geometry, cfg.geometry.mu});
}

double design_d(const Options& opt, const config::RunConfig& cfg) {
  return opt.d_mm ? units::mm_to_m(*opt.d_mm) : cfg.design_d_m;
}

void kv(Table& t, std::string name, std::string value, std::string unit) {
  t.rows.push_back({std::move(name), std::move(value), std::move(unit)});
}

int cmd_lock(const Options& opt, Sink& sink, std::ostream& err) {
  if (opt.force_n.has_value() == opt.pressure_mpa.has_value()) {
    throw ValidationError("lock: give exactly one of --force N or --pressure MPa");
  }
  const auto cfg = load(opt);
  const LockGeometry& g = cfg.geometry;
  Table t;
  t.header = {"quantity", "value", "unit"};
  kv(t, "release_margin", num(g.release_margin()), "-");

  const auto validation = validate_geometry(g);
  if (validation.always_locked()) {
    kv(t, "status", "AlwaysLocked", "-");
    sink.table(t);
    err << "lock: always locked: " << validation.summary()
        << "; the joint keeps its out-of-plane angle at any pressure\n";
    return kAnalyticalFailure;
  }

  double force = 0.0;
  bool engaged = true;
  if (opt.force_n) {
    if (!(*opt.force_n >= 0.0)) throw ValidationError("--force must be >= 0");
    force = *opt.force_n;
  } else {
    const double p = units::mpa_to_pa(*opt.pressure_mpa);
    if (!(p >= 0.0)) throw ValidationError("--pressure must be >= 0");
    const auto set = load_curves(opt, cfg);
    const double d = design_d(opt, cfg);
    kv(t, "d", num(units::m_to_mm(d)), "mm");
    kv(t, "pressure", num(*opt.pressure_mpa), "MPa");
    engaged = p >= cfg.sim.engage_pressure_pa;
    force = engaged ? curves::interpolate_force(set.at(d), p) : 0.0;
    kv(t, "engaged", engaged ? "yes" : "no", "-");
  }
  const auto capacity = lock::max_moment(force, g);
  auto at_mu = [&](double mu) {
    LockGeometry gm = g;
    gm.mu = mu;
    return lock::max_moment(force, gm);
  };
  const auto lo = at_mu(cfg.friction.lo);
  const auto hi = at_mu(cfg.friction.hi);

  kv(t, "force", num(force), "N");
  kv(t, "mu", num(g.mu), "-");
  kv(t, "amplification", num(capacity.amplification), "-");
  kv(t, "lever_integral_D", num(capacity.lever_integral_m3), "m^3");
  kv(t, "m_max", num(capacity.m_max_nm), "N*m");
  kv(t, "mu_lo", num(cfg.friction.lo), "-");
  kv(t, "mu_hi", num(cfg.friction.hi), "-");
  kv(t, "m_max_band_lo", num(lo.m_max_nm), "N*m");
  kv(t, "m_max_band_hi", num(hi.m_max_nm), "N*m");
  kv(t, "tip_force_band_lo", num(lo.m_max_nm / cfg.finger.root_to_tip_m), "N");
  kv(t, "tip_force_band_hi", num(hi.m_max_nm / cfg.finger.root_to_tip_m), "N");
  kv(t, "status", "OK", "-");
  sink.table(t);
  return kOk;
}

int cmd_grasp(const Options& opt, Sink& sink) {
  const auto cfg = load(opt);
  const auto& s = cfg.scenario;
  const auto req = grasp::requirements(s);
  Table t;
  t.header = {"quantity", "value", "unit"};
  kv(t, "mass", num(s.mass_kg), "kg");
  kv(t, "finger_count", std::to_string(s.finger_count), "-");
  kv(t, "finger_length", num(s.finger_length_m), "m");
  kv(t, "line_load", num(req.line_load_n_per_m), "N/m");
  kv(t, "required_moment", num(req.required_moment_nm), "N*m");
  kv(t, "design_target_moment", num(grasp::kDesignTargetMomentNm), "N*m");
  kv(t, "wrap_radius", num(req.wrap_radius_m), "m");

  std::optional<lock::LockAssessment> assessment;
  if (opt.m_max_nm) {
    assessment = lock::LockAssessment{*opt.m_max_nm, 0.0, 0.0, lock::LockStatus::Holds};
  } else if (!opt.curves_path.empty()) {
    const auto set = load_curves(opt, cfg);
    const auto band = curves::engaged_band(set.at(design_d(opt, cfg)), cfg.geometry, cfg.friction.lo,
                                           cfg.friction.hi, s.operating_pressure_pa,
                                           cfg.sim.engage_pressure_pa);
    assessment = lock::LockAssessment{band.lo_nm, 0.0, 0.0, lock::LockStatus::Holds};
  }
  int code = kOk;
  if (assessment) {
    const auto f = grasp::grasp_feasible(s, *assessment);
    kv(t, "m_max", num(assessment->m_max_nm), "N*m");
    kv(t, "margin", num(f.margin_nm), "N*m");
    kv(t, "feasible", f.feasible ? "yes" : "no", "-");
    kv(t, "marginal", f.marginal ? "yes" : "no", "-");
    for (const auto& n : f.notes) kv(t, "note", n, "-");
    if (!f.feasible) code = kAnalyticalFailure;
  }
  sink.table(t);
  return code;
}

int cmd_sweep(const Options& opt, Sink& sink) {
  const auto cfg = load(opt);
  const auto set = load_curves(opt, cfg);
  const auto rep = curves::design_sweep(set, cfg.geometry, cfg.profile, cfg.friction);
  sink.table(report::sweep_table(rep, cfg.profile));
  if (!opt.svg_path.empty()) {
    std::ofstream svg(opt.svg_path, std::ios::binary);
    if (!svg) throw Error("cannot open svg file: " + opt.svg_path);
    report::write_band_svg(svg, set, cfg.geometry, cfg.friction);
  }
  if (!rep.selected_d_m) {
    sink.summary() << "no feasible design\n";
    return kAnalyticalFailure;
  }
  sink.summary() << "selected_d_mm " << num(units::m_to_mm(*rep.selected_d_m)) << '\n';
  return kOk;
}

int cmd_step(const Options& opt, Sink& sink) {
  const auto cfg = load(opt);
  const double tau = opt.tau_s.value_or(cfg.sim.tau_s);
  const double dt = opt.dt_s.value_or(cfg.sim.dt_s);
  if (!(tau > 0.0)) throw ValidationError("--tau must be > 0");
  if (!(opt.reference_mpa >= 0.0)) throw ValidationError("--reference must be >= 0");
  const double horizon = opt.horizon_s.value_or(5.0 * tau);
  const double ref = units::mpa_to_pa(opt.reference_mpa);
  const auto trace = sim::pressure_step(ref, tau, dt, horizon);
  sink.table(report::trace_table(trace));
  const auto measured = sim::rise_time_10_90(trace, ref);
  auto& s = sink.summary();
  s << "time_constant_s " << num(tau) << '\n';
  s << "rise_time_10_90_s " << num(tau * std::log(9.0)) << '\n';
  s << "rise_time_10_90_trace_s " << (measured ? num(*measured) : std::string("n/a")) << '\n';
  s << "pressure_at_tau_mpa " << num(units::pa_to_mpa(ref * (1.0 - std::exp(-1.0)))) << '\n';
  return kOk;
}

int cmd_simulate(const Options& opt, Sink& sink, std::ostream& err) {
  auto cfg = load(opt);
  if (opt.schedule) {
    cfg.schedule = config::parse_schedule(*opt.schedule, "--schedule");
  }
  const auto set = load_curves(opt, cfg);
  const ForceCurve& curve = set.at(design_d(opt, cfg));
  sim::Timeline tl;
  try {
    tl = sim::simulate_grasp_sequence(cfg.finger, cfg.scenario, curve, cfg.geometry, cfg.schedule,
                                      cfg.sim);
  } catch (const sim::JointLimitError& e) {
    err << "simulate: aborted: " << e.what() << '\n';
    for (const auto& v : e.violations()) err << "  joint " << v.joint_index << ": " << v.describe() << '\n';
    return kAnalyticalFailure;
  }
  sink.table(report::timeline_table(tl));
  auto& s = sink.summary();
  const auto& last = tl.rows.back();
  s << "final_time_s " << num(last.state.time_s) << '\n';
  s << "final_pressure_mpa " << num(units::pa_to_mpa(last.state.pressure_pa)) << '\n';
  for (std::size_t j = 0; j < last.state.joints.size(); ++j) {
    s << "joint " << j << " lock " << sim::to_string(last.state.joints[j].lock) << " status "
      << sim::to_string(last.status[j]) << '\n';
  }
  for (const auto& ev : tl.slips) {
    s << "slip t=" << num(ev.time_s) << " joint " << ev.joint_index << " applied "
      << num(ev.applied_moment_nm) << " N*m > m_max " << num(ev.m_max_nm) << " N*m\n";
  }
  for (const auto& n : tl.notes) s << "note " << n << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-stiffness soft finger analysis toolkit", "vsfinger"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "INI run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_path, "write CSV data to PATH");
    sub->add_option("--format", opt.format, "console format")
        ->check(CLI::IsMember({"csv", "table"}));
  };
  auto add_curves = [&](CLI::App* sub) {
    sub->add_option("--curves", opt.curves_path, "force-curve CSV")->check(CLI::ExistingFile);
  };

  auto* lock = app.add_subcommand("lock", "interlock capacity: amplification, D, M_max");
  add_common(lock);
  add_curves(lock);
  lock->add_option("--force", opt.force_n, "pressing force F [N]");
  lock->add_option("--pressure", opt.pressure_mpa, "drive pressure [MPa] (needs --curves)");
  lock->add_option("--d", opt.d_mm, "plate gap d [mm]");

  auto* grasp = app.add_subcommand("grasp", "load requirement and feasibility");
  add_common(grasp);
  add_curves(grasp);
  grasp->add_option("--m-max", opt.m_max_nm, "holding capacity to test [N*m]");
  grasp->add_option("--d", opt.d_mm, "plate gap d [mm]");

  auto* sweep = app.add_subcommand("sweep", "select d against the stiffness profile");
  add_common(sweep);
  add_curves(sweep);
  sweep->add_option("--svg", opt.svg_path, "write M_max band plot");

  auto* step = app.add_subcommand("step", "first-order pressure step response");
  add_common(step);
  step->add_option("--reference", opt.reference_mpa, "reference pressure [MPa]");
  step->add_option("--tau", opt.tau_s, "time constant [s]");
  step->add_option("--dt", opt.dt_s, "sample interval [s]");
  step->add_option("--horizon", opt.horizon_s, "trace length [s] (default 5 tau)");

  auto* simulate = app.add_subcommand("simulate", "quasi-static grasp sequence");
  add_common(simulate);
  add_curves(simulate);
  simulate->add_option("--d", opt.d_mm, "plate gap d [mm]");
  simulate->add_option("--schedule", opt.schedule, "phase list, overrides the config schedule");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Sink sink(opt, out, err);
    if (*lock) return cmd_lock(opt, sink, err);
    if (*grasp) return cmd_grasp(opt, sink);
    if (*sweep) return cmd_sweep(opt, sink);
    if (*step) return cmd_step(opt, sink);
    return cmd_simulate(opt, sink, err);
  } catch (const AlwaysLockedError& e) {
    err << "error: " << e.what() << '\n';
    return kAnalyticalFailure;
  } catch (const sim::JointLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kAnalyticalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace vsf::cli
