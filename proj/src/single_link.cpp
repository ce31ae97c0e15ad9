#include "mmw/single_link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mmw {

namespace {

constexpr double ln2 = 0.693147180559945309417232121458;
constexpr double bracket_eps = 1e-9;    // offset of the lower bisection bracket
constexpr double solver_rel_tol = 1e-10;

void check_problem(const SingleLinkProblem& prob) {
  if (!(prob.min_product > 0.0) || !(prob.snr_scale > 0.0) ||
      !(prob.slot_over_pilot > 1.0) ||
      !(prob.side_lobe >= 0.0) || prob.side_lobe >= 1.0) {
    throw std::invalid_argument("invalid single-link problem parameters");
  }
}

void check_product(double product, const SingleLinkProblem& prob) {
  if (!(product >= prob.product_min()) || !(product <= prob.product_max())) {
    throw std::domain_error("beamwidth product outside the feasible interval");
  }
}

// Squared combined main-lobe excess over the side lobes, (2*pi - 2*pi*z)^2.
double lobe_term(const SingleLinkProblem& prob) {
  const double a = two_pi * (1.0 - prob.side_lobe);
  return a * a;
}

}  // namespace

SingleLinkProblem make_single_link_problem(const AlignmentParams& params, double channel_gain,
                                           double p_max, double noise, double side_lobe) {
  validate(params);
  if (!(channel_gain > 0.0) || !(p_max > 0.0) || !(noise > 0.0)) {
    throw std::invalid_argument("channel gain, power, and noise must be positive");
  }
  if (!(side_lobe >= 0.0) || side_lobe >= 1.0) {
    throw std::invalid_argument("side-lobe gain must lie in [0, 1)");
  }
  SingleLinkProblem prob;
  prob.min_product = params.sector_tx * params.sector_rx * params.pilot_ratio();
  prob.snr_scale = channel_gain * p_max / noise;
  prob.side_lobe = side_lobe;
  prob.slot_over_pilot = params.slot_time / params.pilot_time;
  return prob;
}

double simplified_throughput(double product, const SingleLinkProblem& prob) {
  check_problem(prob);
  check_product(product, prob);
  const double z = prob.side_lobe;
  const double snr = prob.snr_scale * (z * z + lobe_term(prob) / product);
  return (1.0 - prob.min_product / product) * std::log2(1.0 + snr);
}

double throughput_derivative(double product, const SingleLinkProblem& prob) {
  check_problem(prob);
  check_product(product, prob);
  const double z = prob.side_lobe;
  const double a = lobe_term(prob);
  const double s = 1.0 + prob.snr_scale * z * z + prob.snr_scale * a / product;
  const double p2 = product * product;
  return prob.min_product / p2 * std::log2(s) -
         (1.0 - prob.min_product / product) * prob.snr_scale * a / (p2 * ln2 * s);
}

double root_residual(double product, const SingleLinkProblem& prob) {
  check_problem(prob);
  check_product(product, prob);
  const double z = prob.side_lobe;
  const double a = prob.snr_scale * lobe_term(prob);
  const double base = 1.0 + prob.snr_scale * z * z;
  const double lhs = prob.min_product * std::log2(base + a / product);
  const double rhs = a * (product - prob.min_product) / (ln2 * (base * product + a));
  return lhs - rhs;
}

ProductSolution optimal_beamwidth_product(const SingleLinkProblem& prob) {
  check_problem(prob);
  double lo = prob.product_min() * (1.0 + bracket_eps);
  double hi = prob.product_max();
  if (!(lo < hi)) {
    throw std::invalid_argument("degenerate feasible interval");
  }
  const double res_lo = root_residual(lo, prob);
  const double res_hi = root_residual(hi, prob);
  if (!(res_lo > 0.0) || !(res_hi < 0.0)) {
    // No interior sign change: the maximum sits on the boundary.
    const double r_lo = simplified_throughput(lo, prob);
    const double r_hi = simplified_throughput(hi, prob);
    return {r_hi >= r_lo ? hi : lo, true};
  }
  // The residual is strictly decreasing, so plain bisection converges to the
  // unique crossing.
  for (int iter = 0; iter < 200 && (hi - lo) > solver_rel_tol * 0.5 * (hi + lo); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (root_residual(mid, prob) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false};
}

BeamPair split_product(double product, double sector_tx, double sector_rx) {
  if (!(product > 0.0) || !(sector_tx > 0.0) || !(sector_rx > 0.0)) {
    throw std::domain_error("product and sector widths must be positive");
  }
  if (product > sector_tx * sector_rx * (1.0 + 1e-12)) {
    throw std::domain_error("beamwidth product exceeds the sector product");
  }
  double tx = std::sqrt(product);
  double rx = tx;
  if (tx > sector_tx) {
    tx = sector_tx;
    rx = product / sector_tx;
  } else if (rx > sector_rx) {
    rx = sector_rx;
    tx = product / sector_rx;
  }
  // Final clamp absorbs the one-ulp overshoot of the division above.
  return {std::min(tx, sector_tx), std::min(rx, sector_rx)};
}

double solo_link_rate(const AlignmentParams& params, double channel_gain, double power,
                      double noise, double side_lobe, BeamPair beams, AlignmentModel model) {
  const double tau = alignment_time(params, beams.tx, beams.rx, model);
  const double fraction = std::max(0.0, 1.0 - tau / params.slot_time);
  if (fraction == 0.0 || power == 0.0) {
    return 0.0;
  }
  const double snr = channel_gain * power / noise *
                     directivity_gain(0.0, beams.tx, side_lobe) *
                     directivity_gain(0.0, beams.rx, side_lobe);
  return fraction * std::log2(1.0 + snr);
}

LinkPlan plan_link(const AlignmentParams& params, double channel_gain, double p_max,
                   double noise, double side_lobe) {
  const SingleLinkProblem prob =
      make_single_link_problem(params, channel_gain, p_max, noise, side_lobe);
  const ProductSolution sol = optimal_beamwidth_product(prob);
  const double sector_product = params.sector_tx * params.sector_rx;
  const BeamPair continuous = split_product(std::min(sol.product, sector_product),
                                            params.sector_tx, params.sector_rx);

  auto bracket_counts = [](double sector, double beam) {
    const double ratio = sector / beam;
    long lo = static_cast<long>(std::floor(ratio));
    long hi = static_cast<long>(std::ceil(ratio));
    lo = std::max(lo, 1L);
    hi = std::max(hi, lo);
    return std::pair<long, long>{lo, hi};
  };
  const auto [t_lo, t_hi] = bracket_counts(params.sector_tx, continuous.tx);
  const auto [r_lo, r_hi] = bracket_counts(params.sector_rx, continuous.rx);

  std::vector<BeamPair> candidates{continuous};
  const double max_pilots = params.slot_time / params.pilot_time * (1.0 + 1e-12);
  for (long kt : {t_lo, t_hi}) {
    for (long kr : {r_lo, r_hi}) {
      if (static_cast<double>(kt) * static_cast<double>(kr) > max_pilots) {
        continue;  // search could not finish within the slot
      }
      candidates.push_back({params.sector_tx / static_cast<double>(kt),
                            params.sector_rx / static_cast<double>(kr)});
    }
  }

  LinkPlan plan;
  plan.product = sol.product;
  plan.boundary = sol.boundary;
  plan.rate = -1.0;
  for (const BeamPair& beams : candidates) {
    const double rate = solo_link_rate(params, channel_gain, p_max, noise, side_lobe, beams,
                                       AlignmentModel::discrete);
    if (rate > plan.rate) {
      plan.rate = rate;
      plan.beams = beams;
    }
  }
  plan.rate_continuous = solo_link_rate(params, channel_gain, p_max, noise, side_lobe,
                                        continuous, AlignmentModel::continuous);
  return plan;
}

}  // namespace mmw
