#include "mmw/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "mmw/single_link.hpp"

namespace mmw {

namespace {

constexpr double level_set_tol = 1e-3;  // relative band below the best rate

Topology single_link_topology(const SimConfig& cfg) {
  if (cfg.n_links != 1) {
    throw std::invalid_argument("this experiment expects a single-link configuration "
                                "(set n_links = 1)");
  }
  return generate_topology(1, cfg.area_side, cfg.min_separation,
                           derive_seed(cfg.seed, 1, 0), cfg.link_profile(), cfg.path_loss());
}

}  // namespace

std::vector<SweepPoint> run_tradeoff_sweep(const SimConfig& cfg) {
  cfg.validate();
  const Topology topo = single_link_topology(cfg);
  const double channel_gain = topo.channel_gain(0, 0);
  std::vector<SweepPoint> rows;
  rows.reserve(cfg.pilot_ratios.size() * static_cast<std::size_t>(cfg.sweep_points));
  for (double ratio : cfg.pilot_ratios) {
    const SingleLinkProblem prob = make_single_link_problem(
        cfg.alignment(ratio), channel_gain, cfg.p_max, cfg.noise, cfg.side_lobe);
    const ProductSolution sol = optimal_beamwidth_product(prob);
    const std::size_t points = static_cast<std::size_t>(cfg.sweep_points);
    const double lo = prob.product_min();
    const double hi = prob.product_max();
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    const double target = std::log(std::clamp(sol.product, lo, hi));
    std::size_t nearest = 0;
    double nearest_gap = std::numeric_limits<double>::infinity();
    const std::size_t first = rows.size();
    for (std::size_t k = 0; k < points; ++k) {
      double product = lo * std::exp(step * static_cast<double>(k));
      if (k + 1 == points) {
        product = hi;
      }
      rows.push_back({product, ratio, simplified_throughput(product, prob), false});
      const double gap = std::abs(std::log(product) - target);
      if (gap < nearest_gap) {
        nearest_gap = gap;
        nearest = k;
      }
    }
    rows[first + nearest].at_optimum = true;
  }
  return rows;
}

ContourResult run_contour(const SimConfig& cfg) {
  cfg.validate();
  const Topology topo = single_link_topology(cfg);
  const double ratio = cfg.primary_ratio();
  const SlotTiming timing = cfg.timing(ratio);
  const AlignmentParams params = cfg.alignment(ratio);

  ContourResult result;
  const std::size_t points = static_cast<std::size_t>(cfg.contour_points);
  result.grid.reserve(points * points);
  Schedule schedule;
  schedule.entries.push_back({0, 0.0, 0.0, cfg.p_max});
  for (std::size_t a = 0; a < points; ++a) {
    const double beam_tx = cfg.sector_tx * static_cast<double>(a + 1) /
                           static_cast<double>(points);
    for (std::size_t b = 0; b < points; ++b) {
      const double beam_rx = cfg.sector_rx * static_cast<double>(b + 1) /
                             static_cast<double>(points);
      ContourPoint point{beam_tx, beam_rx, feasible_beamwidths(params, beam_tx, beam_rx), 0.0};
      if (point.feasible) {
        schedule.entries[0].beam_tx = beam_tx;
        schedule.entries[0].beam_rx = beam_rx;
        point.rate = link_throughput(0, schedule, topo, timing, cfg.noise,
                                     AlignmentModel::continuous);
        result.best_rate = std::max(result.best_rate, point.rate);
      }
      result.grid.push_back(point);
    }
  }
  for (const ContourPoint& point : result.grid) {
    if (point.feasible && point.rate >= result.best_rate * (1.0 - level_set_tol)) {
      result.level_set.push_back(point);
    }
  }
  return result;
}

ComparisonResult run_comparison(const SimConfig& cfg) {
  cfg.validate();
  const double ratio = cfg.primary_ratio();
  const SlotTiming timing = cfg.timing(ratio);

  std::vector<bool> oracle_enabled;
  oracle_enabled.reserve(cfg.compare_links.size());
  for (int n : cfg.compare_links) {
    const bool enabled = n <= cfg.oracle_cap;
    if (!enabled) {
      std::cerr << "warning: oracle omitted for n_links=" << n
                << " (exceeds oracle_cap=" << cfg.oracle_cap << ")\n";
    }
    oracle_enabled.push_back(enabled);
  }

  struct Task {
    std::size_t n_index;
    int topology;
  };
  std::vector<Task> tasks;
  tasks.reserve(cfg.compare_links.size() * static_cast<std::size_t>(cfg.n_topologies));
  for (std::size_t ni = 0; ni < cfg.compare_links.size(); ++ni) {
    for (int t = 0; t < cfg.n_topologies; ++t) {
      tasks.push_back({ni, t});
    }
  }

  // One slot per task and scheduler; workers never touch shared accumulators,
  // so aggregation below is order-independent.
  constexpr std::size_t n_schedulers = 4;
  const char* names[n_schedulers] = {"oracle", "under", "over", "single"};
  std::vector<std::array<double, n_schedulers>> slots(
      tasks.size(), {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, 0.0});

  auto run_task = [&](std::size_t task_index) {
    const Task& task = tasks[task_index];
    const int n = cfg.compare_links[task.n_index];
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(task.topology));
    const Topology topo = generate_topology(n, cfg.area_side, cfg.min_separation, seed,
                                            cfg.link_profile(), cfg.path_loss());
    auto& out = slots[task_index];
    if (oracle_enabled[task.n_index]) {
      out[0] = schedule_oracle(topo, timing, cfg.p_max, cfg.noise, cfg.oracle_options()).rate;
    }
    out[1] = schedule_underestimation(topo, timing, cfg.p_max, cfg.noise).rate;
    out[2] = schedule_overestimation(topo, timing, cfg.p_max, cfg.noise, cfg.mis_cap).rate;
    out[3] = schedule_single_link(topo, timing, cfg.p_max, cfg.noise).rate;
  };

  const std::size_t n_threads = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.threads), tasks.size());
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      run_task(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) {
            return;
          }
          run_task(i);
        }
      });
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  ComparisonResult result;
  for (std::size_t task_index = 0; task_index < tasks.size(); ++task_index) {
    const Task& task = tasks[task_index];
    const int n = cfg.compare_links[task.n_index];
    const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(task.topology));
    for (std::size_t s = 0; s < n_schedulers; ++s) {
      if (s == 0 && !oracle_enabled[task.n_index]) {
        continue;
      }
      result.records.push_back({n, task.topology, seed, names[s], slots[task_index][s]});
    }
  }

  for (std::size_t ni = 0; ni < cfg.compare_links.size(); ++ni) {
    const int n = cfg.compare_links[ni];
    std::array<double, n_schedulers> mean{};
    std::array<double, n_schedulers> sq{};
    const std::size_t base = ni * static_cast<std::size_t>(cfg.n_topologies);
    const double count = static_cast<double>(cfg.n_topologies);
    for (int t = 0; t < cfg.n_topologies; ++t) {
      for (std::size_t s = 0; s < n_schedulers; ++s) {
        const double rate = slots[base + static_cast<std::size_t>(t)][s];
        mean[s] += rate;
        sq[s] += rate * rate;
      }
    }
    for (std::size_t s = 0; s < n_schedulers; ++s) {
      mean[s] /= count;
      sq[s] = sq[s] / count - mean[s] * mean[s];
    }
    const double single_mean = mean[3];
    for (std::size_t s = 0; s < n_schedulers; ++s) {
      if (s == 0 && !oracle_enabled[ni]) {
        continue;
      }
      CompareSummary summary;
      summary.n_links = n;
      summary.scheduler = names[s];
      summary.mean = mean[s];
      summary.std_error = cfg.n_topologies > 1
          ? std::sqrt(std::max(0.0, sq[s]) * count / (count - 1.0) / count)
          : 0.0;
      summary.gain_over_single_pct =
          single_mean > 0.0 ? (mean[s] / single_mean - 1.0) * 100.0 : 0.0;
      result.summary.push_back(summary);
    }
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& rows) {
  out << "phi,tp_ratio,throughput,solver_opt\n";
  for (const SweepPoint& row : rows) {
    out << format_double(row.product) << ',' << format_double(row.pilot_ratio) << ','
        << format_double(row.rate) << ',' << (row.at_optimum ? 1 : 0) << '\n';
  }
}

void write_contour_csv(std::ostream& out, const std::vector<ContourPoint>& rows) {
  out << "phi_t,phi_r,feasible,throughput\n";
  for (const ContourPoint& row : rows) {
    out << format_double(row.beam_tx) << ',' << format_double(row.beam_rx) << ','
        << (row.feasible ? 1 : 0) << ',' << format_double(row.rate) << '\n';
  }
}

void write_level_set_csv(std::ostream& out, const std::vector<ContourPoint>& rows) {
  out << "phi_t,phi_r,throughput\n";
  for (const ContourPoint& row : rows) {
    out << format_double(row.beam_tx) << ',' << format_double(row.beam_rx) << ','
        << format_double(row.rate) << '\n';
  }
}

void write_compare_summary_csv(std::ostream& out, const std::vector<CompareSummary>& rows) {
  out << "n_links,scheduler,mean_R,stderr,gain_over_single_pct\n";
  for (const CompareSummary& row : rows) {
    out << row.n_links << ',' << row.scheduler << ',' << format_double(row.mean) << ','
        << format_double(row.std_error) << ',' << format_double(row.gain_over_single_pct)
        << '\n';
  }
}

void write_compare_records_csv(std::ostream& out, const std::vector<CompareRecord>& rows) {
  out << "n_links,topology,seed,scheduler,R\n";
  for (const CompareRecord& row : rows) {
    out << row.n_links << ',' << row.topology << ',' << row.seed << ',' << row.scheduler
        << ',' << format_double(row.rate) << '\n';
  }
}

}  // namespace mmw
