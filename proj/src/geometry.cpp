#include "mmw/geometry.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mmw {

namespace {

constexpr std::uint64_t shadow_stream = 0x7368616477ull;  // distinct stream tag
constexpr int max_placement_attempts = 10000;

void check_link(const Link& link, int expected_id) {
  if (link.id != expected_id) {
    throw std::invalid_argument("link ids must equal their index, in order");
  }
  if (!(link.sector_tx > 0.0) || link.sector_tx > two_pi ||
      !(link.sector_rx > 0.0) || link.sector_rx > two_pi) {
    throw std::invalid_argument("link sector widths must lie in (0, 2*pi]");
  }
  if (!(link.beam_tx > 0.0) || link.beam_tx > two_pi ||
      !(link.beam_rx > 0.0) || link.beam_rx > two_pi) {
    throw std::invalid_argument("link beamwidths must lie in (0, 2*pi]");
  }
  if (!(link.side_lobe >= 0.0) || link.side_lobe >= 1.0) {
    throw std::invalid_argument("link side-lobe gain must lie in [0, 1)");
  }
  if (link.power < 0.0) {
    throw std::invalid_argument("link power must be nonnegative");
  }
}

double parse_field(std::string_view text, const char* what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::runtime_error(std::string("topology file: bad ") + what);
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

}  // namespace

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double direction(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

double path_gain(double distance_m, const PathLossModel& model) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path gain requires a positive distance");
  }
  const double loss_db = model.ref_loss_db + 10.0 * model.exponent * std::log10(distance_m);
  return db_to_linear(-loss_db);
}

double fspl_ref_db(double carrier_hz) {
  if (!(carrier_hz > 0.0)) {
    throw std::domain_error("carrier frequency must be positive");
  }
  const double wavelength = 299792458.0 / carrier_hz;
  return 20.0 * std::log10(4.0 * pi / wavelength);
}

AngleTables relative_angles(std::span<const Link> links) {
  const std::size_t n = links.size();
  AngleTables tables{make_matrix(n), make_matrix(n)};
  std::vector<double> bore_tx(n);
  std::vector<double> bore_rx(n);
  for (std::size_t i = 0; i < n; ++i) {
    bore_tx[i] = links[i].boresight_tx();
    bore_rx[i] = links[i].boresight_rx();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tables.tx[i][j] = wrap_angle(direction(links[i].tx_pos, links[j].rx_pos) - bore_tx[i]);
      tables.rx[i][j] = wrap_angle(direction(links[j].rx_pos, links[i].tx_pos) - bore_rx[j]);
    }
  }
  return tables;
}

Topology Topology::from_links(std::vector<Link> links, const PathLossModel& model,
                              std::uint64_t shadow_seed) {
  Topology topo;
  const std::size_t n = links.size();
  for (std::size_t i = 0; i < n; ++i) {
    check_link(links[i], static_cast<int>(i));
  }
  topo.links_ = std::move(links);
  topo.angles_ = relative_angles(topo.links_);
  topo.gain_ = make_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      topo.gain_[i][j] = path_gain(distance(topo.links_[i].tx_pos, topo.links_[j].rx_pos), model);
    }
  }
  if (model.shadow_sigma_db > 0.0) {
    Rng rng(shadow_seed);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        topo.gain_[i][j] *= db_to_linear(model.shadow_sigma_db * rng.normal());
      }
    }
  }
  return topo;
}

Topology Topology::from_parts(std::vector<Link> links, Matrix channel_gain, AngleTables angles) {
  Topology topo;
  const std::size_t n = links.size();
  for (std::size_t i = 0; i < n; ++i) {
    check_link(links[i], static_cast<int>(i));
  }
  auto check_square = [n](const Matrix& m, const char* what) {
    if (m.size() != n) throw std::invalid_argument(std::string(what) + ": wrong row count");
    for (const auto& row : m) {
      if (row.size() != n) throw std::invalid_argument(std::string(what) + ": wrong column count");
    }
  };
  check_square(channel_gain, "channel gain table");
  check_square(angles.tx, "tx angle table");
  check_square(angles.rx, "rx angle table");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(channel_gain[i][j] > 0.0)) {
        throw std::invalid_argument("channel gains must be positive");
      }
      if (angles.tx[i][j] <= -pi || angles.tx[i][j] > pi ||
          angles.rx[i][j] <= -pi || angles.rx[i][j] > pi) {
        throw std::invalid_argument("angles must be normalized to (-pi, pi]");
      }
    }
  }
  topo.links_ = std::move(links);
  topo.gain_ = std::move(channel_gain);
  topo.angles_ = std::move(angles);
  return topo;
}

void Topology::save(std::ostream& out) const {
  out << size() << '\n';
  for (const Link& l : links_) {
    out << l.id << ' ' << format_fixed(l.tx_pos.x, 6) << ' ' << format_fixed(l.tx_pos.y, 6)
        << ' ' << format_fixed(l.rx_pos.x, 6) << ' ' << format_fixed(l.rx_pos.y, 6) << '\n';
  }
}

std::string Topology::to_text() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

Topology Topology::load(std::istream& in, const LinkProfile& profile,
                        const PathLossModel& model) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("topology file: missing header line");
  }
  const auto header = split_fields(line);
  if (header.size() != 1) {
    throw std::runtime_error("topology file: header must be a single link count");
  }
  const int n = static_cast<int>(parse_field(header[0], "link count"));
  if (n < 0) {
    throw std::runtime_error("topology file: negative link count");
  }
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("topology file: truncated link list");
    }
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw std::runtime_error("topology file: link lines need 5 fields");
    }
    Link l;
    l.id = static_cast<int>(parse_field(fields[0], "link id"));
    if (l.id != i) {
      throw std::runtime_error("topology file: link ids must be 0..N-1 in order");
    }
    l.tx_pos = {parse_field(fields[1], "tx x"), parse_field(fields[2], "tx y")};
    l.rx_pos = {parse_field(fields[3], "rx x"), parse_field(fields[4], "rx y")};
    l.sector_tx = profile.sector_tx;
    l.sector_rx = profile.sector_rx;
    l.beam_tx = profile.sector_tx;
    l.beam_rx = profile.sector_rx;
    l.side_lobe = profile.side_lobe;
    links.push_back(l);
  }
  return from_links(std::move(links), model);
}

Topology generate_topology(int n_links, double area_side, double min_separation,
                           std::uint64_t seed, const LinkProfile& profile,
                           const PathLossModel& model) {
  if (n_links < 1) {
    throw std::invalid_argument("topology needs at least one link");
  }
  if (!(area_side > 0.0)) {
    throw std::invalid_argument("area side must be positive");
  }
  if (!(min_separation >= 0.0)) {
    throw std::invalid_argument("minimum separation must be nonnegative");
  }
  Rng rng(seed);
  std::vector<Link> links;
  links.reserve(static_cast<std::size_t>(n_links));
  for (int i = 0; i < n_links; ++i) {
    int attempts = 0;
    for (;;) {
      if (++attempts > max_placement_attempts) {
        throw std::runtime_error("topology generation: placement kept violating the "
                                 "minimum separation; parameters are degenerate");
      }
      const Vec2 tx{area_side * rng.uniform(), area_side * rng.uniform()};
      const Vec2 rx{area_side * rng.uniform(), area_side * rng.uniform()};
      if (distance(tx, rx) < min_separation) {
        continue;
      }
      bool clear = true;
      for (const Link& other : links) {
        if (distance(tx, other.rx_pos) < min_separation ||
            distance(other.tx_pos, rx) < min_separation) {
          clear = false;
          break;
        }
      }
      if (!clear) {
        continue;
      }
      Link l;
      l.id = i;
      l.tx_pos = tx;
      l.rx_pos = rx;
      l.sector_tx = profile.sector_tx;
      l.sector_rx = profile.sector_rx;
      l.beam_tx = profile.sector_tx;
      l.beam_rx = profile.sector_rx;
      l.side_lobe = profile.side_lobe;
      links.push_back(l);
      break;
    }
  }
  return Topology::from_links(std::move(links), model, derive_seed(seed, shadow_stream, 0));
}

}  // namespace mmw
