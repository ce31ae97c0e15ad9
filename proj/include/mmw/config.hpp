#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmw/geometry.hpp"
#include "mmw/metrics.hpp"
#include "mmw/scheduler.hpp"

namespace mmw {

/// Thermal noise over a 2.16 GHz channel with a 6 dB noise figure, in watts.
double default_noise_watts();

/// Simulation configuration. Internal units are SI (radians, watts, seconds,
/// meters); the config file ingests angles in degrees and powers in dBm.
struct SimConfig {
  int n_links = 10;
  double area_side = 10.0;       // m
  double min_separation = 0.1;   // m
  double carrier = 60e9;         // Hz, descriptive; see path_loss_ref_db
  double p_max = 2.5e-3;         // W
  double noise = default_noise_watts();  // W
  double side_lobe = 0.1;
  double sector_tx = deg_to_rad(90.0);
  double sector_rx = deg_to_rad(90.0);
  double slot_time = 1e-3;       // s
  // Pilot-to-slot ratios: the tradeoff sweep runs all of them; every other
  // experiment uses the first entry.
  std::vector<double> pilot_ratios = {0.005, 0.01, 0.02};
  int n_topologies = 100;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  double path_loss_exponent = 2.0;
  double path_loss_ref_db = 68.0;  // free space at 60 GHz, 1 m
  double shadow_sigma_db = 0.0;
  int sweep_points = 200;
  int contour_points = 61;
  std::vector<int> compare_links = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  int oracle_cap = 12;
  int oracle_grid = 16;
  int mis_cap = 24;
  int threads = 1;

  double primary_ratio() const { return pilot_ratios.front(); }
  SlotTiming timing(double pilot_ratio) const { return {pilot_ratio * slot_time, slot_time}; }
  AlignmentParams alignment(double pilot_ratio) const {
    return {sector_tx, sector_rx, pilot_ratio * slot_time, slot_time};
  }
  LinkProfile link_profile() const { return {sector_tx, sector_rx, side_lobe}; }
  PathLossModel path_loss() const {
    return {path_loss_exponent, path_loss_ref_db, shadow_sigma_db};
  }
  OracleOptions oracle_options() const {
    OracleOptions opt;
    opt.cap = oracle_cap;
    opt.grid_resolution = oracle_grid;
    opt.mis_cap = mis_cap;
    return opt;
  }

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Parses the flat `key = value` format ('#' starts a comment). Unknown and
/// duplicate keys are rejected. See the README for the key list and units.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

}  // namespace mmw
