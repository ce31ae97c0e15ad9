#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmw/config.hpp"

namespace mmw {

struct SweepPoint {
  double product = 0.0;     // beamwidth product, radians^2
  double pilot_ratio = 0.0;
  double rate = 0.0;
  bool at_optimum = false;  // grid point closest to the solver's optimum
};

/// Single-link alignment-throughput tradeoff: rate over a log grid of
/// beamwidth products, one curve per configured pilot ratio.
/// Requires n_links == 1.
std::vector<SweepPoint> run_tradeoff_sweep(const SimConfig& cfg);

struct ContourPoint {
  double beam_tx = 0.0;  // radians
  double beam_rx = 0.0;  // radians
  bool feasible = false;
  double rate = 0.0;
};

struct ContourResult {
  std::vector<ContourPoint> grid;
  std::vector<ContourPoint> level_set;  // points within 0.1% of the best rate
  double best_rate = 0.0;
};

/// Single-link rate over a linear (beam_tx, beam_rx) grid inside the sectors.
/// Requires n_links == 1.
ContourResult run_contour(const SimConfig& cfg);

struct CompareRecord {
  int n_links = 0;
  int topology = 0;
  std::uint64_t seed = 0;
  std::string scheduler;
  double rate = 0.0;
};

struct CompareSummary {
  int n_links = 0;
  std::string scheduler;
  double mean = 0.0;
  double std_error = 0.0;
  double gain_over_single_pct = 0.0;
};

struct ComparisonResult {
  std::vector<CompareRecord> records;
  std::vector<CompareSummary> summary;
};

/// Monte Carlo scheduler comparison over seeded random topologies for each
/// link count in compare_links. Throughput is always the true-interference
/// value. Topology seeds are derive_seed(seed, n_links, topology_index), so
/// results are independent of execution order and thread count. Link counts
/// above oracle_cap run without the oracle (with a warning on stderr).
ComparisonResult run_comparison(const SimConfig& cfg);

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows);
void write_contour_csv(std::ostream& out, const std::vector<ContourPoint>& rows);
void write_level_set_csv(std::ostream& out, const std::vector<ContourPoint>& rows);
void write_compare_summary_csv(std::ostream& out, const std::vector<CompareSummary>& rows);
void write_compare_records_csv(std::ostream& out, const std::vector<CompareRecord>& rows);

}  // namespace mmw
