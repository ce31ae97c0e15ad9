#include "mmw/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mmw {

namespace {

// Relative slack against sqrt/product roundoff when beams come from splitting
// a beamwidth product.
constexpr double feasibility_tol = 1e-12;

const ScheduleEntry& require_entry(int link, const Schedule& schedule) {
  const ScheduleEntry* entry = schedule.find(link);
  if (entry == nullptr) {
    throw std::invalid_argument("link is not active in the schedule");
  }
  return *entry;
}

}  // namespace

AlignmentParams link_alignment(const Link& link, SlotTiming timing) {
  return {link.sector_tx, link.sector_rx, timing.pilot_time, timing.slot_time};
}

const ScheduleEntry* Schedule::find(int link) const {
  for (const ScheduleEntry& e : entries) {
    if (e.link == link) {
      return &e;
    }
  }
  return nullptr;
}

double sinr(int link, const Schedule& schedule, const Topology& topology, double noise) {
  if (!(noise > 0.0)) {
    throw std::invalid_argument("noise power must be positive");
  }
  const ScheduleEntry& own = require_entry(link, schedule);
  const Link& rx = topology.link(link);
  const double signal = own.power *
      directivity_gain(topology.angle_tx(link, link), own.beam_tx, rx.side_lobe) *
      topology.channel_gain(link, link) *
      directivity_gain(topology.angle_rx(link, link), own.beam_rx, rx.side_lobe);
  double interference = 0.0;
  for (const ScheduleEntry& e : schedule.entries) {
    if (e.link == link) {
      continue;
    }
    const Link& tx = topology.link(e.link);
    interference += e.power *
        directivity_gain(topology.angle_tx(e.link, link), e.beam_tx, tx.side_lobe) *
        topology.channel_gain(e.link, link) *
        directivity_gain(topology.angle_rx(e.link, link), own.beam_rx, rx.side_lobe);
  }
  return signal / (interference + noise);
}

double link_throughput(int link, const Schedule& schedule, const Topology& topology,
                       SlotTiming timing, double noise, AlignmentModel model) {
  const ScheduleEntry& entry = require_entry(link, schedule);
  const AlignmentParams params = link_alignment(topology.link(link), timing);
  validate(params);
  const double floor = params.pilot_ratio() * params.sector_tx * params.sector_rx;
  if (!(entry.beam_tx > 0.0) || entry.beam_tx > params.sector_tx ||
      !(entry.beam_rx > 0.0) || entry.beam_rx > params.sector_rx ||
      entry.beam_tx * entry.beam_rx < floor * (1.0 - feasibility_tol)) {
    throw std::domain_error("scheduled beamwidths are infeasible for the link");
  }
  const double tau = alignment_time(params, entry.beam_tx, entry.beam_rx, model);
  const double fraction = std::max(0.0, 1.0 - tau / timing.slot_time);
  if (fraction == 0.0) {
    return 0.0;
  }
  return fraction * std::log2(1.0 + sinr(link, schedule, topology, noise));
}

double network_throughput(const Schedule& schedule, const Topology& topology,
                          SlotTiming timing, double noise, AlignmentModel model) {
  double total = 0.0;
  for (const ScheduleEntry& e : schedule.entries) {
    total += link_throughput(e.link, schedule, topology, timing, noise, model);
  }
  return total;
}

}  // namespace mmw
