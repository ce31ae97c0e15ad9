#pragma once

// Shared fixtures and independent oracles for the unit and acceptance suites.
// Oracles here re-derive expected values from first principles and must stay
// independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mmw/config.hpp"
#include "mmw/geometry.hpp"
#include "mmw/scheduler.hpp"
#include "mmw/single_link.hpp"

namespace test_support {

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Randomized single-link problems with an interior optimum: moderate pilot
// overhead, realistic SNR scales, narrow-ish side lobes.
inline mmw::SingleLinkProblem random_problem(mmw::Rng& rng) {
  mmw::SingleLinkProblem prob;
  const double sector_tx = rng.uniform(mmw::deg_to_rad(30.0), mmw::deg_to_rad(150.0));
  const double sector_rx = rng.uniform(mmw::deg_to_rad(30.0), mmw::deg_to_rad(150.0));
  const double ratio = std::exp(rng.uniform(std::log(0.002), std::log(0.05)));
  prob.min_product = sector_tx * sector_rx * ratio;
  prob.snr_scale = std::exp(rng.uniform(std::log(10.0), std::log(1e5)));
  prob.side_lobe = rng.uniform(0.0, 0.3);
  prob.slot_over_pilot = 1.0 / ratio;
  return prob;
}

// Scenario used throughout: 10 x 10 m area, 90-degree sectors, 2.5 mW,
// 60 GHz free-space intercept, defaults elsewhere.
inline mmw::SimConfig scenario_config() {
  mmw::SimConfig cfg;
  cfg.side_lobe = 0.1;
  return cfg;
}

inline mmw::Topology random_topology(int n_links, std::uint64_t seed,
                                     const mmw::SimConfig& cfg = scenario_config()) {
  return mmw::generate_topology(n_links, cfg.area_side, cfg.min_separation, seed,
                                cfg.link_profile(), cfg.path_loss());
}

// Subset brute force over all 2^n vertex sets: independent and maximal.
inline std::vector<std::vector<int>> brute_force_mis(const mmw::ConflictGraph& graph) {
  const int n = graph.size();
  std::vector<std::vector<int>> sets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    for (int a = 0; a < n && independent; ++a) {
      if ((mask >> a & 1u) == 0) continue;
      for (int b = a + 1; b < n && independent; ++b) {
        if ((mask >> b & 1u) != 0 && graph.has_edge(a, b)) independent = false;
      }
    }
    if (!independent) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if ((mask >> v & 1u) != 0) continue;
      bool compatible = true;
      for (int a = 0; a < n && compatible; ++a) {
        if ((mask >> a & 1u) != 0 && graph.has_edge(a, v)) compatible = false;
      }
      if (compatible) maximal = false;
    }
    if (!maximal) continue;
    std::vector<int> set;
    for (int v = 0; v < n; ++v) {
      if ((mask >> v & 1u) != 0) set.push_back(v);
    }
    sets.push_back(set);
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

inline mmw::ConflictGraph random_graph(mmw::Rng& rng, int n, double edge_prob) {
  mmw::ConflictGraph graph(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.uniform() < edge_prob) graph.add_edge(a, b);
    }
  }
  return graph;
}

// Central finite difference of the simplified throughput.
inline double derivative_fd(double product, const mmw::SingleLinkProblem& prob) {
  const double h = 1e-6 * product;
  return (mmw::simplified_throughput(product + h, prob) -
          mmw::simplified_throughput(product - h, prob)) / (2.0 * h);
}

}  // namespace test_support
