#pragma once

#include <vector>

#include "mmw/antenna.hpp"
#include "mmw/geometry.hpp"

namespace mmw {

/// Slot timing shared by every link; per-link sector widths complete the
/// alignment parameters (see link_alignment).
struct SlotTiming {
  double pilot_time = 0.0;  // seconds
  double slot_time = 0.0;   // seconds

  double pilot_ratio() const { return pilot_time / slot_time; }
};

AlignmentParams link_alignment(const Link& link, SlotTiming timing);

struct ScheduleEntry {
  int link = 0;
  double beam_tx = 0.0;  // radians
  double beam_rx = 0.0;  // radians
  double power = 0.0;    // watts
};

/// A set of concurrently active links with their chosen beams and powers.
struct Schedule {
  std::vector<ScheduleEntry> entries;  // sorted by link id
  double predicted_rate = 0.0;  // objective the scheduler believed when choosing
  double rate = 0.0;            // throughput under the true interference model

  bool active(int link) const { return find(link) != nullptr; }
  const ScheduleEntry* find(int link) const;
};

/// Signal-to-interference-plus-noise ratio at the receiver of `link`, with all
/// antenna gains evaluated at the topology's stored angles. Throws
/// std::invalid_argument if the link is not active in the schedule.
double sinr(int link, const Schedule& schedule, const Topology& topology, double noise);

/// Slot-normalized throughput of one active link: the slot fraction left after
/// alignment times the Shannon rate at the link's SINR. Beams that cannot
/// finish aligning within the slot yield zero.
double link_throughput(int link, const Schedule& schedule, const Topology& topology,
                       SlotTiming timing, double noise,
                       AlignmentModel model = AlignmentModel::discrete);

/// Sum of link_throughput over all active links.
double network_throughput(const Schedule& schedule, const Topology& topology,
                          SlotTiming timing, double noise,
                          AlignmentModel model = AlignmentModel::discrete);

}  // namespace mmw
