#pragma once

// Output formatting. Numbers are printed with 9 significant digits so that
// identical inputs give byte-identical files.

#include <iosfwd>
#include <string>
#include <vector>

#include "vsfinger/finger_sim.hpp"
#include "vsfinger/force_curves.hpp"

namespace vsf::report {

std::string num(double v);

enum class Format { Csv, Table };

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, Format format) const;
};

Table sweep_table(const curves::SweepReport& report, const curves::StiffnessProfile& profile);
Table trace_table(const sim::PressureTrace& trace);

// time_s, phase, pressure_mpa, tip xyz (mm), then per joint: in-plane and
// out-of-plane angle (deg), lock state and lock status.
Table timeline_table(const sim::Timeline& timeline);

// M_max band vs pressure for every curve in the set, as a standalone SVG.
void write_band_svg(std::ostream& os, const curves::CurveSet& set, const LockGeometry& geom,
                    const curves::FrictionRange& mu, int samples_per_curve = 60);

}  // namespace vsf::report
