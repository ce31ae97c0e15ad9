#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mmw/metrics.hpp"
#include "mmw/single_link.hpp"

namespace mmw {

/// Sector-level link qualities gathered over orthogonal measurement channels:
/// every device transmits at p_max with its sector beam, so cross-channel
/// interference is absent during the round.
struct SectorMeasurements {
  std::vector<double> snr;  // snr[i]: own-link SNR of link i
  Matrix inr;               // inr[j][i]: interference-to-noise from tx j at rx i; diag 0
};

SectorMeasurements sector_measurements(const Topology& topology, double p_max, double noise);

/// Links that must not transmit simultaneously. Adjacency is symmetric and
/// self-loop free; vertex count is capped at 32 by the mask representation.
class ConflictGraph {
 public:
  explicit ConflictGraph(int n);

  int size() const { return n_; }
  void add_edge(int a, int b);
  bool has_edge(int a, int b) const;
  std::uint32_t neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int edge_count() const;

 private:
  int n_ = 0;
  std::vector<std::uint32_t> adj_;
};

/// Marks a pair conflicting unless both links tolerate each other's measured
/// sector-level interference in both directions (sqrt(SNR) >= INR, all four
/// inequalities).
ConflictGraph build_conflict_graph(const SectorMeasurements& meas);

/// All maximal independent sets, enumerated as maximal cliques of the
/// complement graph with pivoting. Output sets are sorted internally and the
/// list is in lexicographic order. Throws when the vertex count exceeds `cap`
/// (the enumeration is exponential in general).
std::vector<std::vector<int>> maximal_independent_sets(const ConflictGraph& graph, int cap = 24);

struct WeightedSet {
  std::vector<int> members;
  double weight = 0.0;
};

/// Maximal independent set with the largest total weight; ties prefer fewer
/// members, then the lexicographically smaller set.
WeightedSet best_independent_set(const ConflictGraph& graph, std::span<const double> weights,
                                 int cap = 24);

/// Conservative scheduling: conflicts estimated from sector-level
/// measurements, then the best independent set activated with per-link
/// optimized beams. predicted_rate is the interference-free objective;
/// rate is evaluated under the true interference model.
Schedule schedule_overestimation(const Topology& topology, SlotTiming timing, double p_max,
                                 double noise, int mis_cap = 24);

/// Aggressive scheduling: every link activated with its individually optimal
/// beams, assuming interference will be negligible; rate reports the true
/// (interference-afflicted) throughput.
Schedule schedule_underestimation(const Topology& topology, SlotTiming timing, double p_max,
                                  double noise);

/// Baseline: only the link with the highest sector-level SNR transmits.
Schedule schedule_single_link(const Topology& topology, SlotTiming timing, double p_max,
                              double noise);

struct OracleOptions {
  int cap = 12;              // maximum link count (subset enumeration is 2^N)
  int grid_resolution = 16;  // log-grid points per link's beamwidth product
  int max_passes = 64;       // coordinate-ascent pass bound per subset
  int mis_cap = 24;          // forwarded to the protocol candidates
};

/// Topology-aware reference: enumerates every activation subset, runs
/// block-coordinate ascent on per-link beamwidth products over a log grid
/// (powers at p_max), and also admits the three protocol solutions as
/// candidates, so its value dominates them by construction.
Schedule schedule_oracle(const Topology& topology, SlotTiming timing, double p_max,
                         double noise, const OracleOptions& options = {});

/// Text format: header `R=<rate>`, then `id beam_tx beam_rx power` per entry.
void save_schedule(std::ostream& out, const Schedule& schedule);
Schedule load_schedule(std::istream& in);

}  // namespace mmw
