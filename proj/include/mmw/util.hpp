#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace mmw {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

/// Normalize an angle to (-pi, pi].
double wrap_angle(double angle);

constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

double db_to_linear(double db);
double linear_to_db(double value);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Locale-independent float formatting, `significant` significant digits.
std::string format_double(double value, int significant = 9);
/// Locale-independent fixed-point formatting.
std::string format_fixed(double value, int decimals);

std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based seed derivation: seeds depend only on (base, stream, counter),
/// never on execution order, so derived runs are parallel-safe and reproducible.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t counter);

/// Deterministic random source. The engine (mt19937_64) and the uniform/normal
/// mappings are pinned here instead of using std:: distributions, whose output
/// is implementation-defined; sequences are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // standard normal, Box-Muller
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

using Matrix = std::vector<std::vector<double>>;
Matrix make_matrix(std::size_t n, double fill = 0.0);

}  // namespace mmw
