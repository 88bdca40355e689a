#include "hetca/rates.hpp"

#include <cmath>

#include "hetca/kernels.hpp"

namespace hetca {
namespace {

RateReport make_report(const NetworkConfig& config, const std::string& method) {
  RateReport r;
  r.method = method;
  r.per_band_tier.assign(config.tier_count(),
                         std::vector<double>(config.band_count(), 0.0));
  return r;
}

void sum_entries(RateReport& r) {
  r.total = 0.0;
  for (const auto& row : r.per_band_tier)
    for (double v : row) r.total += v;
}

// One interferer tier's contribution to the exclusion exponent of
// g^(s)_{i,k}. When the two tiers share the same association exponent
// the rho argument does not depend on r and can be cached per t.
struct InterfererTerm {
  double weight;      // lambda_l * theta_{i,l} * (Z_l P_l / Z_k P_k)^(2/alpha_{l*})
  double r_exponent;  // 2 alpha_{k*} / alpha_{l*}
  bool beta_constant;
  double beta0;          // beta when constant in r
  double beta_prefix;    // otherwise beta = beta_prefix * r^beta_r_exponent
  double beta_r_exponent;
};

std::vector<InterfererTerm> interferer_terms(const NetworkConfig& config,
                                             const DerivedState& st,
                                             std::size_t band, std::size_t tier) {
  const double alpha_i = config.bands[band].path_loss_exponent;
  const double ak = config.bands[st.per_tier[tier].k_star].path_loss_exponent;
  const double zp_k = config.tiers[tier].bias * config.tiers[tier].tx_power;
  std::vector<InterfererTerm> terms;
  for (std::size_t l = 0; l < config.tier_count(); ++l) {
    const double theta = st.per_band_tier[l][band].load;
    if (theta <= 0.0) continue;
    const double al = config.bands[st.per_tier[l].k_star].path_loss_exponent;
    const double zp_l = config.tiers[l].bias * config.tiers[l].tx_power;
    const double power_ratio = config.tiers[tier].tx_power / config.tiers[l].tx_power;
    InterfererTerm term;
    term.weight = config.tiers[l].bs_density * theta * std::pow(zp_l / zp_k, 2.0 / al);
    term.r_exponent = 2.0 * ak / al;
    // xi_{k,l}/r = (Z_l P_l / Z_k P_k)^(1/alpha_{l*}) * r^(alpha_{k*}/alpha_{l*} - 1)
    term.beta_constant = (ak == al);
    term.beta_prefix = power_ratio * std::pow(zp_l / zp_k, alpha_i / al);
    term.beta_r_exponent = alpha_i * (ak / al - 1.0);
    term.beta0 = term.beta_prefix;  // valid when beta_constant
    terms.push_back(term);
  }
  return terms;
}

// 2-D quadrature of one (band, tier) term of the single-flow rate,
// without the leading 2 pi lambda_k b p factor.
double pair_integral(const NetworkConfig& config, const DerivedState& st,
                     std::size_t band, std::size_t tier,
                     const QuadratureSettings& settings) {
  const double alpha_i = config.bands[band].path_loss_exponent;
  const double w = st.per_band_tier[tier][band].noise;
  const double inv_power = 1.0 / config.tiers[tier].tx_power;
  const TierKernel kern = make_tier_kernel(config, tier);
  const auto terms = interferer_terms(config, st, band, tier);
  const QuadratureSettings inner = settings.tightened(10.0);
  const QuadratureSettings rho_settings = inner.tightened(10.0);

  auto outer = [&](double t) {
    // rho values that do not depend on r
    std::vector<double> cached(terms.size(), 0.0);
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (terms[j].beta_constant)
        cached[j] = rho(t, alpha_i, terms[j].beta0, rho_settings);

    auto inner_f = [&](double r) {
      if (r <= 0.0) return 0.0;
      double expo = kern.log_value(r) - t * w * std::pow(r, alpha_i) * inv_power;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        const InterfererTerm& term = terms[j];
        double rho_val = term.beta_constant
                             ? cached[j]
                             : rho(t, alpha_i,
                                   term.beta_prefix * std::pow(r, term.beta_r_exponent),
                                   rho_settings);
        expo -= M_PI * term.weight * rho_val * std::pow(r, term.r_exponent);
      }
      return r * std::exp(expo);
    };
    return integrate_semi_infinite(inner_f, inner, kern.char_radius) / (1.0 + t);
  };
  return integrate_semi_infinite(outer, settings, 1.0);
}

bool is_identity_deployment(const NetworkConfig& config) {
  if (config.tier_count() != config.band_count()) return false;
  for (std::size_t k = 0; k < config.tier_count(); ++k)
    for (std::size_t i = 0; i < config.band_count(); ++i)
      if (config.deployment.uses(k, i) != (k == i)) return false;
  return true;
}

}  // namespace

RateReport single_tier_rate(const NetworkConfig& config,
                            const QuadratureSettings& settings) {
  if (config.tier_count() != 1)
    throw PreconditionError("single_tier_rate requires exactly one tier");
  const DerivedState st = compute_derived(config, settings);
  const double lambda = config.tiers[0].bs_density;
  RateReport report = make_report(config, "analytic-single-tier");
  const QuadratureSettings rho_settings = settings.tightened(100.0);

  for (std::size_t i = 0; i < config.band_count(); ++i) {
    if (!config.deployment.uses(0, i)) continue;
    const double alpha = config.bands[i].path_loss_exponent;
    const double theta = st.per_band_tier[0][i].load;
    const double p = st.per_band_tier[0][i].admission;
    const double b = config.share(0, i);
    const double w = st.per_band_tier[0][i].noise;

    double integral;
    if (config.interference_limited) {
      auto f = [&](double t) {
        return 1.0 / ((1.0 + t) * (1.0 + theta * rho(t, alpha, 1.0, rho_settings)));
      };
      integral = integrate_semi_infinite(f, settings, 1.0);
    } else {
      const double inv_power = 1.0 / config.tiers[0].tx_power;
      const QuadratureSettings inner = settings.tightened(10.0);
      auto outer = [&](double t) {
        const double rho_t = rho(t, alpha, 1.0, rho_settings);
        const double gauss = M_PI * lambda * (1.0 + theta * rho_t);
        auto inner_f = [&](double r) {
          return r * std::exp(-gauss * r * r -
                              w * inv_power * t * std::pow(r, alpha));
        };
        double inner_val =
            integrate_semi_infinite(inner_f, inner, 1.0 / std::sqrt(gauss));
        return 2.0 * M_PI * lambda * inner_val / (1.0 + t);
      };
      integral = integrate_semi_infinite(outer, settings, 1.0);
    }
    report.per_band_tier[0][i] = p * b * integral;
  }
  sum_entries(report);
  return report;
}

RateReport peak_rate(const NetworkConfig& config,
                     const QuadratureSettings& settings) {
  if (config.tier_count() != 1)
    throw PreconditionError("peak_rate requires exactly one tier");
  RateReport report = make_report(config, "analytic-peak");
  for (std::size_t i = 0; i < config.band_count(); ++i)
    if (config.deployment.uses(0, i))
      report.per_band_tier[0][i] =
          q_alpha(config.bands[i].path_loss_exponent, settings) *
          config.bands[i].bandwidth_hz;
  sum_entries(report);
  return report;
}

RateReport single_flow_rate(const NetworkConfig& config,
                            const QuadratureSettings& settings) {
  const DerivedState st = compute_derived(config, settings);
  RateReport report = make_report(config, "analytic-single-flow");
  for (std::size_t k = 0; k < config.tier_count(); ++k)
    for (std::size_t i = 0; i < config.band_count(); ++i) {
      if (!config.deployment.uses(k, i)) continue;
      const double p = st.per_band_tier[k][i].admission;
      if (p <= 0.0) continue;
      double integral;
      try {
        integral = pair_integral(config, st, i, k, settings);
      } catch (const QuadratureError& e) {
        throw QuadratureError("rate integral failed for band " + std::to_string(i + 1) +
                                  ", tier " + std::to_string(k + 1) + ": " + e.what(),
                              e.best_estimate, e.error_bound);
      }
      report.per_band_tier[k][i] = 2.0 * M_PI * config.tiers[k].bs_density *
                                   config.share(k, i) * p * integral;
    }
  sum_entries(report);
  return report;
}

RateReport orthogonal_rate(const NetworkConfig& config,
                           const QuadratureSettings& settings) {
  if (!is_identity_deployment(config))
    throw PreconditionError(
        "orthogonal_rate requires M = K with tier k matched to band k");
  const DerivedState st = compute_derived(config, settings);
  RateReport report = make_report(config, "analytic-orthogonal");
  const QuadratureSettings rho_settings = settings.tightened(100.0);

  bool equal_alpha = true;
  for (std::size_t i = 1; i < config.band_count(); ++i)
    equal_alpha = equal_alpha && (config.bands[i].path_loss_exponent ==
                                  config.bands[0].path_loss_exponent);

  for (std::size_t k = 0; k < config.tier_count(); ++k) {
    const double alpha = config.bands[k].path_loss_exponent;
    const double theta = st.per_band_tier[k][k].load;
    const double p = st.per_band_tier[k][k].admission;
    const double b = config.share(k, k);
    const double pi_k = st.per_tier[k].pi;

    double value;
    if (config.interference_limited && equal_alpha) {
      auto f = [&](double t) {
        return 1.0 /
               ((1.0 + t) * (1.0 + pi_k * theta * rho(t, alpha, 1.0, rho_settings)));
      };
      value = pi_k * b * p * integrate_semi_infinite(f, settings, 1.0);
    } else {
      const double w = st.per_band_tier[k][k].noise;
      const double inv_power = 1.0 / config.tiers[k].tx_power;
      const double lambda_theta = config.tiers[k].bs_density * theta;
      const TierKernel kern = make_tier_kernel(config, k);
      const QuadratureSettings inner = settings.tightened(10.0);
      auto outer = [&](double t) {
        const double rho_t = rho(t, alpha, 1.0, rho_settings);
        auto inner_f = [&](double r) {
          double expo = kern.log_value(r) - M_PI * lambda_theta * rho_t * r * r -
                        w * inv_power * t * std::pow(r, alpha);
          return r * std::exp(expo);
        };
        return integrate_semi_infinite(inner_f, inner, kern.char_radius) / (1.0 + t);
      };
      value = 2.0 * M_PI * config.tiers[k].bs_density * b * p *
              integrate_semi_infinite(outer, settings, 1.0);
    }
    report.per_band_tier[k][k] = value;
  }
  sum_entries(report);
  return report;
}

RateReport cochannel_rate(const NetworkConfig& config,
                          const QuadratureSettings& settings) {
  if (config.band_count() != 1)
    throw PreconditionError("cochannel_rate requires a single band");
  const DerivedState st = compute_derived(config, settings);
  RateReport report = make_report(config, "analytic-cochannel");
  const double alpha = config.bands[0].path_loss_exponent;
  const QuadratureSettings rho_settings = settings.tightened(100.0);
  const std::size_t K = config.tier_count();

  for (std::size_t k = 0; k < K; ++k) {
    const double p = st.per_band_tier[k][0].admission;
    const double b = config.share(k, 0);
    const double pi_k = st.per_tier[k].pi;
    const double zk = config.tiers[k].bias;

    double value;
    if (config.interference_limited) {
      auto f = [&](double t) {
        double s = 0.0;
        for (std::size_t l = 0; l < K; ++l) {
          double theta = st.per_band_tier[l][0].load;
          if (theta <= 0.0) continue;
          s += st.per_tier[l].pi * theta *
               rho(t, alpha, config.tiers[l].bias / zk, rho_settings);
        }
        return 1.0 / ((1.0 + t) * (1.0 + s));
      };
      value = pi_k * b * p * integrate_semi_infinite(f, settings, 1.0);
    } else {
      const double w = st.per_band_tier[k][0].noise;
      const double inv_power = 1.0 / config.tiers[k].tx_power;
      const double zp_k = zk * config.tiers[k].tx_power;
      const TierKernel kern = make_tier_kernel(config, k);
      const QuadratureSettings inner = settings.tightened(10.0);
      auto outer = [&](double t) {
        double interf = 0.0;  // coefficient of -pi r^2 in the exponent
        for (std::size_t l = 0; l < K; ++l) {
          double theta = st.per_band_tier[l][0].load;
          if (theta <= 0.0) continue;
          double zp_l = config.tiers[l].bias * config.tiers[l].tx_power;
          interf += theta * config.tiers[l].bs_density *
                    std::pow(zp_l / zp_k, 2.0 / alpha) *
                    rho(t, alpha, config.tiers[l].bias / zk, rho_settings);
        }
        auto inner_f = [&](double r) {
          double expo = kern.log_value(r) - M_PI * interf * r * r -
                        w * inv_power * t * std::pow(r, alpha);
          return r * std::exp(expo);
        };
        return integrate_semi_infinite(inner_f, inner, kern.char_radius) / (1.0 + t);
      };
      value = 2.0 * M_PI * config.tiers[k].bs_density * b * p *
              integrate_semi_infinite(outer, settings, 1.0);
    }
    report.per_band_tier[k][0] = value;
  }
  sum_entries(report);
  return report;
}

DeploymentComparison deployment_comparison(const NetworkConfig& config,
                                           const QuadratureSettings& settings) {
  std::vector<std::string> failed;
  const std::size_t K = config.tier_count();
  if (!config.interference_limited)
    failed.push_back("network must be interference-limited");
  for (std::size_t k = 0; k < K; ++k)
    if (config.tiers[k].bias != 1.0) {
      failed.push_back("biasing factors must all be 1 (0 dB)");
      break;
    }
  const Band& b0 = config.bands[0];
  for (std::size_t i = 1; i < config.band_count(); ++i)
    if (config.bands[i].path_loss_exponent != b0.path_loss_exponent ||
        config.bands[i].bandwidth_hz != b0.bandwidth_hz) {
      failed.push_back("all bands must share the same path-loss exponent and bandwidth");
      break;
    }
  double b_share = config.share(0, 0);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < config.band_count(); ++i)
      if (config.share(k, i) != b_share) {
        failed.push_back("bandwidth share must be uniform");
        k = K;
        break;
      }

  // Counterfactuals used both for precondition checks and for the
  // orthogonal coverage vector.
  NetworkConfig cochannel = config;
  cochannel.bands = {b0};
  cochannel.deployment.x.assign(K, std::vector<int>(1, 1));
  cochannel.bandwidth_share.assign(K, std::vector<double>(1, b_share));

  NetworkConfig single_tier = config;
  single_tier.tiers = {config.tiers[0]};
  single_tier.bands.assign(K, b0);
  single_tier.deployment.x.assign(1, std::vector<int>(K, 1));
  single_tier.bandwidth_share.assign(1, std::vector<double>(K, b_share));

  const DerivedState co_state = compute_derived(cochannel, settings);
  double capacity = b0.bandwidth_hz / b_share;
  for (std::size_t k = 0; k < K; ++k) {
    if (co_state.per_band_tier[k][0].load < 1.0) {
      failed.push_back("network must be fully loaded (tier " + std::to_string(k + 1) +
                       " load below 1)");
      break;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (co_state.per_tier[k].mean_users <= capacity) {
      failed.push_back("UE density too small (tier " + std::to_string(k + 1) +
                       " mean cell users below B/b)");
      break;
    }
  }
  {
    const DerivedState st_state = compute_derived(single_tier, settings);
    if (st_state.per_band_tier[0][0].load < 1.0 ||
        st_state.per_tier[0].mean_users <= capacity)
      failed.push_back("UE density too small for fully loaded single-tier deployment");
  }

  if (!failed.empty()) {
    std::string msg = "deployment_comparison preconditions violated:";
    for (const auto& s : failed) msg += "\n  - " + s;
    throw PreconditionError(msg);
  }

  const double alpha = b0.path_loss_exponent;
  const double factor = 0.78 * b0.bandwidth_hz / config.ue_density;
  const double base_integral = q_alpha(alpha, settings);
  const QuadratureSettings rho_settings = settings.tightened(100.0);

  double lambda_sum = 0.0;
  for (const Tier& t : config.tiers) lambda_sum += t.bs_density;

  DeploymentComparison cmp;
  cmp.rate_1_band_K_tier = lambda_sum * factor * base_integral;
  cmp.rate_K_band_1_tier =
      static_cast<double>(K) * config.tiers[0].bs_density * factor * base_integral;
  cmp.rate_K_K_cochannel = static_cast<double>(K) * cmp.rate_1_band_K_tier;
  cmp.density_ratio =
      lambda_sum / (static_cast<double>(K) * config.tiers[0].bs_density);

  cmp.rate_K_K_orthogonal = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double pi_k = co_state.per_tier[k].pi;
    auto f = [&](double t) {
      return 1.0 / ((1.0 + t) * (1.0 + pi_k * rho(t, alpha, 1.0, rho_settings)));
    };
    cmp.rate_K_K_orthogonal += config.tiers[k].bs_density * factor *
                               integrate_semi_infinite(f, settings, 1.0);
  }
  return cmp;
}

}  // namespace hetca
