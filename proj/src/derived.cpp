#include "hetca/derived.hpp"

#include <algorithm>
#include <cmath>

namespace hetca {

std::vector<double> coverage(const NetworkConfig& config,
                             const QuadratureSettings& settings) {
  std::vector<double> cov(config.tier_count());
  for (std::size_t k = 0; k < config.tier_count(); ++k)
    cov[k] = 2.0 * M_PI * config.tiers[k].bs_density *
             tier_kernel_integral(config, k, settings);
  return cov;
}

std::vector<std::vector<double>> load_matrix(const NetworkConfig& config,
                                             const std::vector<double>& tier_G) {
  const std::size_t K = config.tier_count(), M = config.band_count();
  std::vector<std::vector<double>> theta(K, std::vector<double>(M, 0.0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i)
      if (config.deployment.uses(k, i)) {
        double raw = 2.0 * M_PI * config.share(k, i) * config.ue_density *
                     tier_G[k] / config.bands[i].bandwidth_hz;
        theta[k][i] = std::min(raw, 1.0);
      }
  return theta;
}

std::vector<double> mean_cell_users(const NetworkConfig& config,
                                    const std::vector<double>& cov) {
  const std::size_t K = config.tier_count();
  std::vector<double> nbar(K);
  if (K == 1) {
    nbar[0] = 9.0 * config.ue_density / (7.0 * config.tiers[0].bs_density);
  } else {
    for (std::size_t k = 0; k < K; ++k)
      nbar[k] = 1.0 + 1.28 * cov[k] * config.ue_density / config.tiers[k].bs_density;
  }
  return nbar;
}

std::vector<std::vector<double>> admission_matrix(
    const NetworkConfig& config, const std::vector<double>& mean_users) {
  const std::size_t K = config.tier_count(), M = config.band_count();
  std::vector<std::vector<double>> p(K, std::vector<double>(M, 0.0));
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i)
      if (config.deployment.uses(k, i)) {
        double capacity = config.bands[i].bandwidth_hz / config.share(k, i);
        double raw = (mean_users[k] <= capacity) ? 1.0 : capacity / mean_users[k];
        p[k][i] = std::clamp(raw, 0.0, 1.0);
      }
  return p;
}

DerivedState compute_derived(const NetworkConfig& config,
                             const QuadratureSettings& settings) {
  const std::size_t K = config.tier_count(), M = config.band_count();
  DerivedState st;
  st.per_tier.resize(K);
  st.per_band_tier.assign(K, std::vector<DerivedPerBandTier>(M));

  std::vector<double> G(K), cov(K);
  for (std::size_t k = 0; k < K; ++k) {
    G[k] = tier_kernel_integral(config, k, settings);
    cov[k] = 2.0 * M_PI * config.tiers[k].bs_density * G[k];
    st.per_tier[k].k_star = k_star(config, k);
    st.per_tier[k].G = G[k];
    st.per_tier[k].pi = cov[k];
  }
  auto nbar = mean_cell_users(config, cov);
  auto theta = load_matrix(config, G);
  auto adm = admission_matrix(config, nbar);
  for (std::size_t k = 0; k < K; ++k) {
    st.per_tier[k].mean_users = nbar[k];
    for (std::size_t i = 0; i < M; ++i) {
      DerivedPerBandTier& e = st.per_band_tier[k][i];
      e.load = theta[k][i];
      e.admission = adm[k][i];
      e.noise = config.deployment.uses(k, i) ? config.noise_term(k, i) : 0.0;
      e.mean_connecting =
          config.deployment.uses(k, i) ? 2.0 * M_PI * config.ue_density * G[k] : 0.0;
    }
  }
  return st;
}

double conditional_distance_pdf(const NetworkConfig& config,
                                const DerivedState& derived, std::size_t tier,
                                double r) {
  const TierKernel kern = make_tier_kernel(config, tier);
  return 2.0 * M_PI * config.tiers[tier].bs_density * r * kern(r) /
         derived.per_tier[tier].pi;
}

double conditional_distance_pdf(const NetworkConfig& config, std::size_t tier,
                                double r) {
  double pi_k = 2.0 * M_PI * config.tiers[tier].bs_density *
                tier_kernel_integral(config, tier);
  const TierKernel kern = make_tier_kernel(config, tier);
  return 2.0 * M_PI * config.tiers[tier].bs_density * r * kern(r) / pi_k;
}

}  // namespace hetca
