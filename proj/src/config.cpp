#include "mmw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <set>
#include <stdexcept>

namespace mmw {

double default_noise_watts() {
  const double dbm = -174.0 + 10.0 * std::log10(2.16e9) + 6.0;
  return dbm_to_watts(dbm);
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("config: " + what);
  };
  if (n_links < 1) fail("n_links must be at least 1");
  if (!(area_side > 0.0)) fail("area_side_m must be positive");
  if (!(min_separation >= 0.0)) fail("min_separation_m must be nonnegative");
  if (min_separation >= area_side) fail("min_separation_m must be below area_side_m");
  if (!(carrier > 0.0)) fail("carrier_hz must be positive");
  if (!(p_max > 0.0)) fail("p_max_dbm maps to a nonpositive power");
  if (!(noise > 0.0)) fail("noise_dbm maps to a nonpositive power");
  if (!(side_lobe >= 0.0) || side_lobe >= 1.0) fail("side_lobe must lie in [0, 1)");
  if (!(sector_tx > 0.0) || sector_tx > two_pi) fail("sector_tx_deg must lie in (0, 360]");
  if (!(sector_rx > 0.0) || sector_rx > two_pi) fail("sector_rx_deg must lie in (0, 360]");
  if (!(slot_time > 0.0)) fail("slot_s must be positive");
  if (pilot_ratios.empty()) fail("pilot_ratios must not be empty");
  for (double r : pilot_ratios) {
    if (!(r > 0.0) || !(r < 1.0)) fail("pilot ratios must lie in (0, 1)");
  }
  if (n_topologies < 1) fail("n_topologies must be at least 1");
  if (!(path_loss_exponent > 0.0)) fail("path_loss_exponent must be positive");
  if (!(shadow_sigma_db >= 0.0)) fail("shadow_sigma_db must be nonnegative");
  if (sweep_points < 2) fail("sweep_points must be at least 2");
  if (contour_points < 2) fail("contour_points must be at least 2");
  if (compare_links.empty()) fail("compare_links must not be empty");
  for (int n : compare_links) {
    if (n < 1) fail("compare_links entries must be at least 1");
  }
  if (oracle_cap < 1 || oracle_cap > 24) fail("oracle_cap must lie in [1, 24]");
  if (oracle_grid < 2) fail("oracle_grid must be at least 2");
  if (mis_cap < 1 || mis_cap > 32) fail("mis_cap must lie in [1, 32]");
  if (threads < 1) fail("threads must be at least 1");
}

namespace {

std::string_view trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t' ||
                         text[end - 1] == '\r')) --end;
  return text.substr(begin, end - begin);
}

double parse_number(std::string_view text, const std::string& key) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: bad numeric value for " + key);
  }
  return value;
}

long parse_integer(std::string_view text, const std::string& key) {
  long value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("config: bad integer value for " + key);
  }
  return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    const std::string_view item = trim(text.substr(pos, end - pos));
    if (!item.empty()) {
      out.push_back(item);
    }
    if (comma == std::string_view::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  using Setter = std::function<void(SimConfig&, std::string_view, const std::string&)>;
  auto number = [](double SimConfig::* field, double scale = 1.0) {
    return [field, scale](SimConfig& c, std::string_view v, const std::string& k) {
      c.*field = parse_number(v, k) * scale;
    };
  };
  auto angle_deg = [](double SimConfig::* field) {
    return [field](SimConfig& c, std::string_view v, const std::string& k) {
      c.*field = deg_to_rad(parse_number(v, k));
    };
  };
  auto power_dbm = [](double SimConfig::* field) {
    return [field](SimConfig& c, std::string_view v, const std::string& k) {
      c.*field = dbm_to_watts(parse_number(v, k));
    };
  };
  auto integer = [](int SimConfig::* field) {
    return [field](SimConfig& c, std::string_view v, const std::string& k) {
      c.*field = static_cast<int>(parse_integer(v, k));
    };
  };
  const std::map<std::string, Setter, std::less<>> setters = {
      {"n_links", integer(&SimConfig::n_links)},
      {"area_side_m", number(&SimConfig::area_side)},
      {"min_separation_m", number(&SimConfig::min_separation)},
      {"carrier_hz", number(&SimConfig::carrier)},
      {"p_max_dbm", power_dbm(&SimConfig::p_max)},
      {"noise_dbm", power_dbm(&SimConfig::noise)},
      {"side_lobe", number(&SimConfig::side_lobe)},
      {"sector_tx_deg", angle_deg(&SimConfig::sector_tx)},
      {"sector_rx_deg", angle_deg(&SimConfig::sector_rx)},
      {"slot_s", number(&SimConfig::slot_time)},
      {"pilot_ratios",
       [](SimConfig& c, std::string_view v, const std::string& k) {
         c.pilot_ratios.clear();
         for (std::string_view item : split_list(v)) {
           c.pilot_ratios.push_back(parse_number(item, k));
         }
       }},
      {"n_topologies", integer(&SimConfig::n_topologies)},
      {"seed",
       [](SimConfig& c, std::string_view v, const std::string& k) {
         const long value = parse_integer(v, k);
         if (value < 0) {
           throw std::invalid_argument("config: seed must be nonnegative");
         }
         c.seed = static_cast<std::uint64_t>(value);
       }},
      {"out_dir",
       [](SimConfig& c, std::string_view v, const std::string&) {
         c.out_dir = std::string(v);
       }},
      {"path_loss_exponent", number(&SimConfig::path_loss_exponent)},
      {"path_loss_ref_db", number(&SimConfig::path_loss_ref_db)},
      {"shadow_sigma_db", number(&SimConfig::shadow_sigma_db)},
      {"sweep_points", integer(&SimConfig::sweep_points)},
      {"contour_points", integer(&SimConfig::contour_points)},
      {"compare_links",
       [](SimConfig& c, std::string_view v, const std::string& k) {
         c.compare_links.clear();
         for (std::string_view item : split_list(v)) {
           c.compare_links.push_back(static_cast<int>(parse_integer(item, k)));
         }
       }},
      {"oracle_cap", integer(&SimConfig::oracle_cap)},
      {"oracle_grid", integer(&SimConfig::oracle_grid)},
      {"mis_cap", integer(&SimConfig::mis_cap)},
      {"threads", integer(&SimConfig::threads)},
  };

  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) {
      continue;
    }
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                  " is not of the form key = value");
    }
    const std::string key{trim(view.substr(0, eq))};
    const std::string_view value = trim(view.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    }
    it->second(cfg, value, key);
  }
  cfg.validate();
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path);
  }
  return parse_config(in);
}

}  // namespace mmw
