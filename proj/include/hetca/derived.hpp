#pragma once

#include <cstddef>
#include <vector>

#include "hetca/config.hpp"
#include "hetca/kernels.hpp"
#include "hetca/quadrature.hpp"

namespace hetca {

struct DerivedPerTier {
  std::size_t k_star = 0;  // min-alpha band among the tier's bands
  double G = 0.0;          // int_0^inf r h_k(r) dr, m^2
  double pi = 0.0;         // coverage fraction
  double mean_users = 0.0; // N-bar_k, size-biased mean UE count per cell
};

struct DerivedPerBandTier {
  double load = 0.0;       // theta_{i,k}
  double admission = 0.0;  // p_{i,k}
  double noise = 0.0;      // w_{i,k}, W
  double mean_connecting = 0.0;  // L_{i,k} = 2 pi lambda^(u) G_k
};

struct DerivedState {
  std::vector<DerivedPerTier> per_tier;
  std::vector<std::vector<DerivedPerBandTier>> per_band_tier;  // [tier][band]
};

/// Per-tier coverage pi_k = 2 pi lambda_k G_k.
std::vector<double> coverage(const NetworkConfig& config,
                             const QuadratureSettings& settings = {});

/// theta_{i,k} = min(2 pi b_{i,k} lambda^(u) G_k / B_i, 1) on used pairs.
std::vector<std::vector<double>> load_matrix(const NetworkConfig& config,
                                             const std::vector<double>& tier_G);

/// Size-biased mean UE count per cell: exact 9 lambda^(u) / (7 lambda)
/// when there is a single tier, else 1 + 1.28 pi_k lambda^(u) / lambda_k.
std::vector<double> mean_cell_users(const NetworkConfig& config,
                                    const std::vector<double>& cov);

/// p_{i,k}: 1 on under-loaded used pairs, B_i/(b_{i,k} N-bar_k) otherwise,
/// 0 on unused pairs. Clamped to [0,1].
std::vector<std::vector<double>> admission_matrix(
    const NetworkConfig& config, const std::vector<double>& mean_users);

DerivedState compute_derived(const NetworkConfig& config,
                             const QuadratureSettings& settings = {});

/// pdf of the serving-BS distance conditioned on association with tier k:
/// f(r) = 2 pi lambda_k r h_k(r) / pi_k.
double conditional_distance_pdf(const NetworkConfig& config,
                                const DerivedState& derived, std::size_t tier,
                                double r);
double conditional_distance_pdf(const NetworkConfig& config, std::size_t tier,
                                double r);

}  // namespace hetca
