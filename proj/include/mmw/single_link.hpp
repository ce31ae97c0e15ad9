#pragma once

#include "mmw/antenna.hpp"
#include "mmw/metrics.hpp"

namespace mmw {

/// Interference-free beamwidth selection reduced to the single decision
/// variable `product` = beam_tx * beam_rx. The throughput surrogate depends on
/// the beams only through this product (exactly when the side lobe vanishes).
struct SingleLinkProblem {
  double min_product = 0.0;      // sector_tx * sector_rx * pilot_ratio; alignment fills the slot here
  double snr_scale = 0.0;        // channel_gain * p_max / noise
  double side_lobe = 0.0;
  double slot_over_pilot = 0.0;  // slot_time / pilot_time

  double product_min() const { return min_product; }
  double product_max() const { return min_product * slot_over_pilot; }
};

SingleLinkProblem make_single_link_problem(const AlignmentParams& params, double channel_gain,
                                           double p_max, double noise, double side_lobe);

/// Surrogate throughput at a beamwidth product, continuous alignment model.
/// Throws std::domain_error outside [product_min, product_max].
double simplified_throughput(double product, const SingleLinkProblem& prob);

/// Closed-form derivative of simplified_throughput with respect to the product.
double throughput_derivative(double product, const SingleLinkProblem& prob);

/// Root function with the same sign as the derivative but strictly decreasing
/// over the feasible interval, so bisection brackets are guaranteed.
double root_residual(double product, const SingleLinkProblem& prob);

struct ProductSolution {
  double product = 0.0;
  /// Set when the derivative does not change sign on the interval; the
  /// solution is then the better feasible endpoint instead of an interior root.
  bool boundary = false;
};

/// Unique interior stationary point of the surrogate, found by bisection to
/// 1e-10 relative tolerance; falls back to the better endpoint when no
/// interior root exists.
ProductSolution optimal_beamwidth_product(const SingleLinkProblem& prob);

struct BeamPair {
  double tx = 0.0;
  double rx = 0.0;
};

/// Symmetric split of a beamwidth product, clipped to the sector bounds with
/// the product carried by the other factor when clipping occurs.
/// Throws std::domain_error when the product exceeds sector_tx * sector_rx.
BeamPair split_product(double product, double sector_tx, double sector_rx);

/// Exact interference-free rate of one link at given beams and power.
double solo_link_rate(const AlignmentParams& params, double channel_gain, double power,
                      double noise, double side_lobe, BeamPair beams,
                      AlignmentModel model = AlignmentModel::discrete);

/// Full single-link decision: continuous optimum, then the best choice under
/// the integer-pilot model among the split point and the sector/k lattice
/// beams whose pilot counts bracket it.
struct LinkPlan {
  double product = 0.0;         // continuous-model optimum
  bool boundary = false;
  BeamPair beams;               // selected beams (integer-pilot model)
  double rate = 0.0;            // solo rate of `beams`, discrete alignment
  double rate_continuous = 0.0; // solo rate at the continuous split, continuous alignment
};

LinkPlan plan_link(const AlignmentParams& params, double channel_gain, double p_max,
                   double noise, double side_lobe);

}  // namespace mmw
