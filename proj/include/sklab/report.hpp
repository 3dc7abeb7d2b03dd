#pragma once

// Text artifacts: CSV tables (UTF-8, comma, header row), minimal SVG
// log-log plots for decay curves, and the stable config hash stamped on
// every output.

#include <iosfwd>
#include <string>
#include <vector>

#include "sklab/prob_bounds.hpp"

namespace sklab {

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

// log-log polyline plot of one or more positive curves
void write_svg_loglog(std::ostream& out, const std::vector<pb::DecayCurve>& curves, int width = 640,
                      int height = 420);

// FNV-1a over the canonical config string; stable across runs/platforms
std::string config_hash(const std::string& canonical);

} // namespace sklab
