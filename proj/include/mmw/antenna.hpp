#pragma once

#include "mmw/util.hpp"

namespace mmw {

/// Ideal sectored pattern: a constant main-lobe gain inside the beamwidth and a
/// constant side-lobe gain elsewhere. The main-lobe level is fixed by keeping
/// the total radiated power constant (gain integrates to 2*pi over the circle).
struct SectoredAntenna {
  double beamwidth = two_pi;  // radians, (0, 2*pi]
  double side_lobe = 0.0;     // dimensionless, [0, 1)
  double boresight = 0.0;     // radians, [0, 2*pi)

  /// Gain toward a direction given relative to boresight.
  double gain(double angle) const;
};

/// Pilot-based alignment search parameters of one link.
struct AlignmentParams {
  double sector_tx = 0.0;   // radians
  double sector_rx = 0.0;   // radians
  double pilot_time = 0.0;  // seconds
  double slot_time = 0.0;   // seconds

  double pilot_ratio() const { return pilot_time / slot_time; }
};

/// Throws std::invalid_argument unless 0 < pilot_time < slot_time and
/// sector widths lie in (0, 2*pi].
void validate(const AlignmentParams& params);

enum class AlignmentModel {
  discrete,    // integer pilot counts (ceiling)
  continuous,  // smooth approximation used inside optimizers
};

/// Main-lobe gain of the sectored pattern.
double main_lobe_gain(double beamwidth, double side_lobe);

/// Gain at `angle` off boresight; serves both the transmit and receive side.
/// Throws std::domain_error for beamwidth outside (0, 2*pi] or side_lobe
/// outside [0, 1).
double directivity_gain(double angle, double beamwidth, double side_lobe);

/// Number of pilot directions needed to cover `sector` with beams of width
/// `beamwidth`. Tolerant ceiling: quotients that are integers up to rounding
/// error do not get bumped to the next count.
long pilot_count(double sector, double beamwidth);

/// Duration of the exhaustive beam search over both sides of a link.
/// Throws std::domain_error if a beamwidth is nonpositive or exceeds its sector.
double alignment_time(const AlignmentParams& params, double beam_tx, double beam_rx,
                      AlignmentModel model = AlignmentModel::discrete);

/// True iff both beams fit their sectors and the beamwidth product is wide
/// enough for the search to finish within the slot.
bool feasible_beamwidths(const AlignmentParams& params, double beam_tx, double beam_rx);

}  // namespace mmw
