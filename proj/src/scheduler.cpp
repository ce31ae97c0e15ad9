#include "mmw/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mmw {

namespace {

std::vector<LinkPlan> solo_plans(const Topology& topology, SlotTiming timing, double p_max,
                                 double noise) {
  std::vector<LinkPlan> plans;
  plans.reserve(static_cast<std::size_t>(topology.size()));
  for (int i = 0; i < topology.size(); ++i) {
    const Link& link = topology.link(i);
    plans.push_back(plan_link(link_alignment(link, timing), topology.channel_gain(i, i),
                              p_max, noise, link.side_lobe));
  }
  return plans;
}

Schedule make_schedule(std::span<const int> members, std::span<const LinkPlan> plans,
                       double p_max) {
  Schedule schedule;
  schedule.entries.reserve(members.size());
  for (int i : members) {
    const LinkPlan& plan = plans[static_cast<std::size_t>(i)];
    schedule.entries.push_back({i, plan.beams.tx, plan.beams.rx, p_max});
  }
  return schedule;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    const int v = std::countr_zero(mask);
    out.push_back(v);
    mask &= mask - 1;
  }
  return out;
}

// true when (rate_a, set_a) should replace (rate_b, set_b): higher rate, ties
// by fewer members, then lexicographically smaller set.
bool better_candidate(double rate_a, const std::vector<int>& set_a, double rate_b,
                      const std::vector<int>& set_b) {
  if (rate_a != rate_b) {
    return rate_a > rate_b;
  }
  if (set_a.size() != set_b.size()) {
    return set_a.size() < set_b.size();
  }
  return set_a < set_b;
}

}  // namespace

SectorMeasurements sector_measurements(const Topology& topology, double p_max, double noise) {
  if (!(p_max > 0.0) || !(noise > 0.0)) {
    throw std::invalid_argument("power and noise must be positive");
  }
  const int n = topology.size();
  SectorMeasurements meas;
  meas.snr.resize(static_cast<std::size_t>(n));
  meas.inr = make_matrix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Link& rx = topology.link(i);
    meas.snr[static_cast<std::size_t>(i)] = p_max *
        directivity_gain(topology.angle_tx(i, i), rx.sector_tx, rx.side_lobe) *
        topology.channel_gain(i, i) *
        directivity_gain(topology.angle_rx(i, i), rx.sector_rx, rx.side_lobe) / noise;
    for (int j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      const Link& tx = topology.link(j);
      meas.inr[j][i] = p_max *
          directivity_gain(topology.angle_tx(j, i), tx.sector_tx, tx.side_lobe) *
          topology.channel_gain(j, i) *
          directivity_gain(topology.angle_rx(j, i), rx.sector_rx, rx.side_lobe) / noise;
    }
  }
  return meas;
}

ConflictGraph::ConflictGraph(int n) : n_(n) {
  if (n < 0 || n > 32) {
    throw std::invalid_argument("conflict graph supports 0..32 vertices");
  }
  adj_.assign(static_cast<std::size_t>(n), 0u);
}

void ConflictGraph::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) {
    throw std::invalid_argument("conflict graph edge endpoints invalid");
  }
  adj_[static_cast<std::size_t>(a)] |= 1u << b;
  adj_[static_cast<std::size_t>(b)] |= 1u << a;
}

bool ConflictGraph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) {
    throw std::invalid_argument("conflict graph vertex out of range");
  }
  return a != b && (adj_[static_cast<std::size_t>(a)] >> b & 1u) != 0;
}

int ConflictGraph::edge_count() const {
  int total = 0;
  for (std::uint32_t mask : adj_) {
    total += std::popcount(mask);
  }
  return total / 2;
}

ConflictGraph build_conflict_graph(const SectorMeasurements& meas) {
  const int n = static_cast<int>(meas.snr.size());
  if (meas.inr.size() != meas.snr.size()) {
    throw std::invalid_argument("measurement dimensions disagree");
  }
  ConflictGraph graph(n);
  for (int i = 0; i < n; ++i) {
    const double margin_i = std::sqrt(meas.snr[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      const double margin_j = std::sqrt(meas.snr[static_cast<std::size_t>(j)]);
      const bool independent = margin_i >= meas.inr[j][i] && margin_i >= meas.inr[i][j] &&
                               margin_j >= meas.inr[i][j] && margin_j >= meas.inr[j][i];
      if (!independent) {
        graph.add_edge(i, j);
      }
    }
  }
  return graph;
}

std::vector<std::vector<int>> maximal_independent_sets(const ConflictGraph& graph, int cap) {
  const int n = graph.size();
  if (n > cap) {
    throw std::invalid_argument("vertex count exceeds the enumeration cap");
  }
  if (n == 0) {
    return {};
  }
  // Independent sets of the graph are cliques of its complement.
  const std::uint32_t all = n == 32 ? ~0u : (1u << n) - 1u;
  std::vector<std::uint32_t> comp(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    comp[static_cast<std::size_t>(v)] = all & ~graph.neighbors(v) & ~(1u << v);
  }

  std::vector<std::uint32_t> found;
  auto expand = [&](auto&& self, std::uint32_t r, std::uint32_t p, std::uint32_t x) -> void {
    if (p == 0 && x == 0) {
      found.push_back(r);
      return;
    }
    // Pivot on the candidate covering most of P.
    int pivot = -1;
    int best_cover = -1;
    for (std::uint32_t px = p | x; px != 0; px &= px - 1) {
      const int u = std::countr_zero(px);
      const int cover = std::popcount(p & comp[static_cast<std::size_t>(u)]);
      if (cover > best_cover) {
        best_cover = cover;
        pivot = u;
      }
    }
    std::uint32_t ext = p & ~comp[static_cast<std::size_t>(pivot)];
    while (ext != 0) {
      const int v = std::countr_zero(ext);
      const std::uint32_t bit = 1u << v;
      ext &= ext - 1;
      self(self, r | bit, p & comp[static_cast<std::size_t>(v)],
           x & comp[static_cast<std::size_t>(v)]);
      p &= ~bit;
      x |= bit;
    }
  };
  expand(expand, 0u, all, 0u);

  std::vector<std::vector<int>> sets;
  sets.reserve(found.size());
  for (std::uint32_t mask : found) {
    sets.push_back(mask_to_set(mask));
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

WeightedSet best_independent_set(const ConflictGraph& graph, std::span<const double> weights,
                                 int cap) {
  if (static_cast<int>(weights.size()) != graph.size()) {
    throw std::invalid_argument("weight count must match the vertex count");
  }
  WeightedSet best;
  bool have = false;
  for (const std::vector<int>& set : maximal_independent_sets(graph, cap)) {
    double weight = 0.0;
    for (int v : set) {
      weight += weights[static_cast<std::size_t>(v)];
    }
    if (!have || better_candidate(weight, set, best.weight, best.members)) {
      best = {set, weight};
      have = true;
    }
  }
  return best;
}

Schedule schedule_overestimation(const Topology& topology, SlotTiming timing, double p_max,
                                 double noise, int mis_cap) {
  const SectorMeasurements meas = sector_measurements(topology, p_max, noise);
  const ConflictGraph graph = build_conflict_graph(meas);
  const std::vector<LinkPlan> plans = solo_plans(topology, timing, p_max, noise);
  std::vector<double> rates;
  rates.reserve(plans.size());
  for (const LinkPlan& plan : plans) {
    rates.push_back(plan.rate);
  }
  const WeightedSet chosen = best_independent_set(graph, rates, mis_cap);
  Schedule schedule = make_schedule(chosen.members, plans, p_max);
  schedule.predicted_rate = chosen.weight;
  schedule.rate = network_throughput(schedule, topology, timing, noise);
  return schedule;
}

Schedule schedule_underestimation(const Topology& topology, SlotTiming timing, double p_max,
                                  double noise) {
  const std::vector<LinkPlan> plans = solo_plans(topology, timing, p_max, noise);
  std::vector<int> members(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    members[i] = static_cast<int>(i);
  }
  Schedule schedule = make_schedule(members, plans, p_max);
  for (const LinkPlan& plan : plans) {
    schedule.predicted_rate += plan.rate;
  }
  schedule.rate = network_throughput(schedule, topology, timing, noise);
  return schedule;
}

Schedule schedule_single_link(const Topology& topology, SlotTiming timing, double p_max,
                              double noise) {
  if (topology.size() < 1) {
    throw std::invalid_argument("scheduling requires at least one link");
  }
  const SectorMeasurements meas = sector_measurements(topology, p_max, noise);
  int winner = 0;
  for (int i = 1; i < topology.size(); ++i) {
    if (meas.snr[static_cast<std::size_t>(i)] > meas.snr[static_cast<std::size_t>(winner)]) {
      winner = i;
    }
  }
  const Link& link = topology.link(winner);
  const LinkPlan plan = plan_link(link_alignment(link, timing),
                                  topology.channel_gain(winner, winner), p_max, noise,
                                  link.side_lobe);
  Schedule schedule;
  schedule.entries.push_back({winner, plan.beams.tx, plan.beams.rx, p_max});
  schedule.predicted_rate = plan.rate;
  schedule.rate = network_throughput(schedule, topology, timing, noise);
  return schedule;
}

Schedule schedule_oracle(const Topology& topology, SlotTiming timing, double p_max,
                         double noise, const OracleOptions& options) {
  const int n = topology.size();
  if (n > options.cap || n > 24) {
    throw std::invalid_argument("link count exceeds the oracle cap");
  }
  if (n < 1) {
    throw std::invalid_argument("scheduling requires at least one link");
  }
  if (options.grid_resolution < 2) {
    throw std::invalid_argument("oracle grid needs at least two points");
  }
  const std::vector<LinkPlan> plans = solo_plans(topology, timing, p_max, noise);

  // Per-link log grid over the feasible product interval, plus the grid index
  // closest to the link's solo optimum as the ascent start.
  const std::size_t res = static_cast<std::size_t>(options.grid_resolution);
  std::vector<std::vector<double>> grids(static_cast<std::size_t>(n));
  std::vector<std::size_t> start(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Link& link = topology.link(i);
    const AlignmentParams params = link_alignment(link, timing);
    const double lo = params.sector_tx * params.sector_rx * params.pilot_ratio() *
                      (1.0 + 1e-9);
    const double hi = params.sector_tx * params.sector_rx;
    std::vector<double>& grid = grids[static_cast<std::size_t>(i)];
    grid.resize(res);
    const double step = std::log(hi / lo) / static_cast<double>(res - 1);
    for (std::size_t k = 0; k < res; ++k) {
      grid[k] = lo * std::exp(step * static_cast<double>(k));
    }
    grid.back() = hi;
    const double target = std::log(std::clamp(plans[static_cast<std::size_t>(i)].product, lo, hi));
    std::size_t best_k = 0;
    for (std::size_t k = 1; k < res; ++k) {
      if (std::abs(std::log(grid[k]) - target) < std::abs(std::log(grid[best_k]) - target)) {
        best_k = k;
      }
    }
    start[static_cast<std::size_t>(i)] = best_k;
  }

  Schedule scratch;
  auto evaluate = [&](std::uint32_t mask, std::span<const std::size_t> idx) {
    scratch.entries.clear();
    for (std::uint32_t m = mask; m != 0; m &= m - 1) {
      const int i = std::countr_zero(m);
      const Link& link = topology.link(i);
      const BeamPair beams = split_product(grids[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]],
                                           link.sector_tx, link.sector_rx);
      scratch.entries.push_back({i, beams.tx, beams.rx, p_max});
    }
    return network_throughput(scratch, topology, timing, noise);
  };

  double best_rate = -1.0;
  std::vector<int> best_set;
  std::vector<std::size_t> best_idx;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  const std::uint32_t subsets = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask <= subsets; ++mask) {
    idx = start;
    double current = evaluate(mask, idx);
    for (int pass = 0; pass < options.max_passes; ++pass) {
      bool improved = false;
      for (std::uint32_t m = mask; m != 0; m &= m - 1) {
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(m));
        const std::size_t keep = idx[i];
        std::size_t pick = keep;
        for (std::size_t k = 0; k < res; ++k) {
          if (k == keep) {
            continue;
          }
          idx[i] = k;
          const double rate = evaluate(mask, idx);
          if (rate > current) {
            current = rate;
            pick = k;
          }
        }
        idx[i] = pick;
        improved |= pick != keep;
      }
      if (!improved) {
        break;
      }
    }
    const std::vector<int> set = mask_to_set(mask);
    if (better_candidate(current, set, best_rate, best_set)) {
      best_rate = current;
      best_set = set;
      best_idx = idx;
    }
  }

  Schedule best;
  for (int i : best_set) {
    const Link& link = topology.link(i);
    const BeamPair beams = split_product(grids[static_cast<std::size_t>(i)][best_idx[static_cast<std::size_t>(i)]],
                                         link.sector_tx, link.sector_rx);
    best.entries.push_back({i, beams.tx, beams.rx, p_max});
  }
  best.rate = network_throughput(best, topology, timing, noise);

  // Admit the protocol solutions so the oracle dominates them by construction.
  const Schedule pool[] = {
      schedule_overestimation(topology, timing, p_max, noise, options.mis_cap),
      schedule_underestimation(topology, timing, p_max, noise),
      schedule_single_link(topology, timing, p_max, noise),
  };
  for (const Schedule& candidate : pool) {
    std::vector<int> set;
    set.reserve(candidate.entries.size());
    for (const ScheduleEntry& e : candidate.entries) {
      set.push_back(e.link);
    }
    if (better_candidate(candidate.rate, set, best.rate, best_set)) {
      best = candidate;
      best_set = set;
    }
  }
  best.predicted_rate = best.rate;
  return best;
}

void save_schedule(std::ostream& out, const Schedule& schedule) {
  out << "R=" << format_double(schedule.rate) << '\n';
  for (const ScheduleEntry& e : schedule.entries) {
    out << e.link << ' ' << format_double(e.beam_tx) << ' ' << format_double(e.beam_rx)
        << ' ' << format_double(e.power) << '\n';
  }
}

Schedule load_schedule(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("R=", 0) != 0) {
    throw std::runtime_error("schedule file: missing R= header");
  }
  Schedule schedule;
  const std::string rate_text = line.substr(2);
  auto parse_double = [](std::string_view text, const char* what) {
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw std::runtime_error(std::string("schedule file: bad ") + what);
    }
    return value;
  };
  schedule.rate = parse_double(rate_text, "rate");
  schedule.predicted_rate = schedule.rate;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::size_t pos = 0;
    std::vector<std::string_view> fields;
    const std::string_view view(line);
    while (pos < view.size()) {
      while (pos < view.size() && view[pos] == ' ') ++pos;
      std::size_t end = pos;
      while (end < view.size() && view[end] != ' ') ++end;
      if (end > pos) fields.push_back(view.substr(pos, end - pos));
      pos = end;
    }
    if (fields.size() != 4) {
      throw std::runtime_error("schedule file: entry lines need 4 fields");
    }
    ScheduleEntry entry;
    entry.link = static_cast<int>(parse_double(fields[0], "link id"));
    entry.beam_tx = parse_double(fields[1], "beam_tx");
    entry.beam_rx = parse_double(fields[2], "beam_rx");
    entry.power = parse_double(fields[3], "power");
    schedule.entries.push_back(entry);
  }
  return schedule;
}

}  // namespace mmw
