#include "mmw/util.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mmw {

double wrap_angle(double angle) {
  double r = std::fmod(angle + pi, two_pi);
  if (r <= 0.0) {
    r += two_pi;
  }
  return r - pi;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double value) { return 10.0 * std::log10(value); }

double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

double watts_to_dbm(double watts) { return linear_to_db(watts / 1e-3); }

namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, fmt, precision);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_double(double value, int significant) {
  return to_chars_string(value, std::chars_format::general, significant);
}

std::string format_fixed(double value, int decimals) {
  return to_chars_string(value, std::chars_format::fixed, decimals);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ counter);
}

double Rng::uniform() {
  // 53 random bits mapped to [0, 1); exact and platform-independent.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

Matrix make_matrix(std::size_t n, double fill) {
  return Matrix(n, std::vector<double>(n, fill));
}

}  // namespace mmw
