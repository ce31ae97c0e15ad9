#include "mmw/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace mmw {

namespace {

void check_pattern(double beamwidth, double side_lobe) {
  if (!(beamwidth > 0.0) || beamwidth > two_pi) {
    throw std::domain_error("beamwidth must lie in (0, 2*pi]");
  }
  if (!(side_lobe >= 0.0) || side_lobe >= 1.0) {
    throw std::domain_error("side-lobe gain must lie in [0, 1)");
  }
}

}  // namespace

double SectoredAntenna::gain(double angle) const {
  return directivity_gain(angle, beamwidth, side_lobe);
}

void validate(const AlignmentParams& params) {
  if (!(params.pilot_time > 0.0) || !(params.pilot_time < params.slot_time)) {
    throw std::invalid_argument("pilot time must lie in (0, slot time)");
  }
  if (!(params.sector_tx > 0.0) || params.sector_tx > two_pi ||
      !(params.sector_rx > 0.0) || params.sector_rx > two_pi) {
    throw std::invalid_argument("sector widths must lie in (0, 2*pi]");
  }
}

double main_lobe_gain(double beamwidth, double side_lobe) {
  check_pattern(beamwidth, side_lobe);
  return (two_pi - (two_pi - beamwidth) * side_lobe) / beamwidth;
}

double directivity_gain(double angle, double beamwidth, double side_lobe) {
  check_pattern(beamwidth, side_lobe);
  const double off = std::abs(wrap_angle(angle));
  return off <= 0.5 * beamwidth ? main_lobe_gain(beamwidth, side_lobe) : side_lobe;
}

long pilot_count(double sector, double beamwidth) {
  const double ratio = sector / beamwidth;
  // The 1e-9 slack absorbs roundoff in the quotient when the ratio is an
  // exact integer, so e.g. (pi/2) / (pi/6) still counts 3 pilots.
  const long count = static_cast<long>(std::ceil(ratio - 1e-9));
  return count < 1 ? 1 : count;
}

double alignment_time(const AlignmentParams& params, double beam_tx, double beam_rx,
                      AlignmentModel model) {
  validate(params);
  if (!(beam_tx > 0.0) || beam_tx > params.sector_tx ||
      !(beam_rx > 0.0) || beam_rx > params.sector_rx) {
    throw std::domain_error("data beamwidth must lie in (0, sector width]");
  }
  if (model == AlignmentModel::continuous) {
    return (params.sector_tx / beam_tx) * (params.sector_rx / beam_rx) * params.pilot_time;
  }
  return static_cast<double>(pilot_count(params.sector_tx, beam_tx)) *
         static_cast<double>(pilot_count(params.sector_rx, beam_rx)) * params.pilot_time;
}

bool feasible_beamwidths(const AlignmentParams& params, double beam_tx, double beam_rx) {
  validate(params);
  if (!(beam_tx > 0.0) || !(beam_rx > 0.0)) {
    return false;
  }
  return beam_tx <= params.sector_tx && beam_rx <= params.sector_rx &&
         beam_tx * beam_rx >= params.pilot_ratio() * params.sector_tx * params.sector_rx;
}

}  // namespace mmw
