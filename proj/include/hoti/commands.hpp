#pragma once

#include "hoti/config.hpp"

#include <string>
#include <vector>

namespace hoti {

// Files of one run are written as <stem>.csv, <stem>.json and <stem>.svg.
// An explicit --out path ending in .csv/.json/.svg is reduced to its stem;
// otherwise the stem is <out_dir>/<command>.
std::string output_stem(const std::string& command, const std::string& out, const std::string& out_dir);

struct CommandResult {
  std::vector<std::string> files;
  std::string summary; // compact JSON
};

CommandResult run_butterfly(const RunConfig& cfg, const std::string& stem);
CommandResult run_phase_map(const RunConfig& cfg, const std::string& stem);
CommandResult run_aniso_map(const RunConfig& cfg, const std::string& stem);
CommandResult run_steady(const RunConfig& cfg, const std::string& stem);
CommandResult run_r_sweep(const RunConfig& cfg, const std::string& stem);
CommandResult run_device_plan(const RunConfig& cfg, const std::string& stem);

CommandResult run_command(const std::string& command, const RunConfig& cfg, const std::string& stem);

// Linearly interpolated positions where the curve crosses the level.
std::vector<double> level_crossings(const std::vector<double>& x, const std::vector<double>& y, double level);

} // namespace hoti
