#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mmw/antenna.hpp"
#include "mmw/util.hpp"

namespace mmw {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Vec2 a, Vec2 b);
/// Angle of the direction from `from` to `to`, in (-pi, pi].
double direction(Vec2 from, Vec2 to);

/// Distance-based power gain: gain_dB = -(ref_loss_db + 10*exponent*log10(d)).
/// The default intercept matches free space at 60 GHz and 1 m.
struct PathLossModel {
  double exponent = 2.0;
  double ref_loss_db = 68.0;
  double shadow_sigma_db = 0.0;  // log-normal shadowing, applied per pair at build time
};

/// Linear power gain at `distance_m` meters; shadowing is not included here.
/// Throws std::domain_error for nonpositive distance.
double path_gain(double distance_m, const PathLossModel& model = {});

/// Free-space reference loss at 1 m for a carrier frequency, in dB.
double fspl_ref_db(double carrier_hz);

struct Link {
  int id = 0;
  Vec2 tx_pos;
  Vec2 rx_pos;
  double sector_tx = 0.0;  // radians
  double sector_rx = 0.0;  // radians
  double beam_tx = 0.0;    // radians, current data beams
  double beam_rx = 0.0;    // radians
  double power = 0.0;      // watts
  double side_lobe = 0.0;

  double boresight_tx() const { return direction(tx_pos, rx_pos); }
  double boresight_rx() const { return direction(rx_pos, tx_pos); }
  SectoredAntenna tx_antenna() const { return {beam_tx, side_lobe, boresight_tx()}; }
  SectoredAntenna rx_antenna() const { return {beam_rx, side_lobe, boresight_rx()}; }
};

/// Radio parameters shared by all links of a generated topology.
struct LinkProfile {
  double sector_tx = 0.0;
  double sector_rx = 0.0;
  double side_lobe = 0.0;
};

struct AngleTables {
  Matrix tx;  // tx[i][j]: angle at transmitter i toward receiver j, off boresight
  Matrix rx;  // rx[i][j]: angle at receiver j toward transmitter i, off boresight
};

/// Signed off-boresight angles for every transmitter/receiver pair, each
/// normalized to (-pi, pi]. Boresights point at the own pair, so the
/// diagonals are exactly zero.
AngleTables relative_angles(std::span<const Link> links);

class Topology {
 public:
  Topology() = default;

  /// Builds gain and angle tables from link positions. `shadow_seed` drives
  /// the per-pair shadowing draws when the model's sigma is positive.
  static Topology from_links(std::vector<Link> links, const PathLossModel& model,
                             std::uint64_t shadow_seed = 0);

  /// Assembles a topology from explicit tables (validated); used for synthetic
  /// scenarios where gains or angles are prescribed rather than derived.
  static Topology from_parts(std::vector<Link> links, Matrix channel_gain,
                             AngleTables angles);

  int size() const { return static_cast<int>(links_.size()); }
  const Link& link(int i) const { return links_.at(static_cast<std::size_t>(i)); }
  const std::vector<Link>& links() const { return links_; }

  /// Power gain from transmitter of link `tx` to receiver of link `rx`.
  double channel_gain(int tx, int rx) const { return gain_[tx][rx]; }
  /// Angle at transmitter `tx` toward receiver `rx`, off the tx boresight.
  double angle_tx(int tx, int rx) const { return angles_.tx[tx][rx]; }
  /// Angle at receiver `rx` toward transmitter `tx`, off the rx boresight.
  double angle_rx(int tx, int rx) const { return angles_.rx[tx][rx]; }

  /// Line-oriented text format: header `N`, then `id tx_x tx_y rx_x rx_y`
  /// per link, positions in meters with 6 decimal places.
  void save(std::ostream& out) const;
  std::string to_text() const;
  static Topology load(std::istream& in, const LinkProfile& profile,
                       const PathLossModel& model);

 private:
  std::vector<Link> links_;
  Matrix gain_;
  AngleTables angles_;
};

/// Draws transmitter and receiver positions uniformly in an `area_side` square.
/// Placements where any transmitter sits closer than `min_separation` to any
/// receiver are redrawn; gives up after a bounded number of attempts.
/// Deterministic given `seed`.
Topology generate_topology(int n_links, double area_side, double min_separation,
                           std::uint64_t seed, const LinkProfile& profile,
                           const PathLossModel& model = {});

}  // namespace mmw
