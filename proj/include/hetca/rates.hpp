#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hetca/config.hpp"
#include "hetca/derived.hpp"
#include "hetca/quadrature.hpp"

namespace hetca {

/// UE ergodic rate in nats/s with its per-(band,tier) breakdown.
struct RateReport {
  double total = 0.0;                                  // nats/s
  std::vector<std::vector<double>> per_band_tier;      // [tier][band], nats/s
  std::string method;

  double total_bits() const { return total / M_LN2; }
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// UE ergodic rate of a single-tier multi-band network (exact
/// size-biased cell constant 9/7). Requires exactly one tier.
RateReport single_tier_rate(const NetworkConfig& config,
                            const QuadratureSettings& settings = {});

/// Peak rate sum_i q(alpha_i) B_i over the tier's bands: the
/// interference-limited rate with b_i = B_i, theta_i = 1, p_i = 1.
/// Independent of BS density and transmit powers.
RateReport peak_rate(const NetworkConfig& config,
                     const QuadratureSettings& settings = {});

/// General single-flow UE ergodic rate for K tiers and M bands.
RateReport single_flow_rate(const NetworkConfig& config,
                            const QuadratureSettings& settings = {});

/// Orthogonal deployment special case (M = K, tier k on band k).
RateReport orthogonal_rate(const NetworkConfig& config,
                           const QuadratureSettings& settings = {});

/// Cochannel deployment special case (M = 1).
RateReport cochannel_rate(const NetworkConfig& config,
                          const QuadratureSettings& settings = {});

struct DeploymentComparison {
  double rate_1_band_K_tier = 0.0;
  double rate_K_band_1_tier = 0.0;
  double rate_K_K_orthogonal = 0.0;
  double rate_K_K_cochannel = 0.0;
  double density_ratio = 0.0;  // sum_k lambda_k / (K lambda_1)
};

/// Fully-loaded, unbiased, equal-band comparison of the four canonical
/// deployments. Throws PreconditionError naming any failed assumption.
DeploymentComparison deployment_comparison(const NetworkConfig& config,
                                           const QuadratureSettings& settings = {});

}  // namespace hetca
