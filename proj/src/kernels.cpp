#include "hetca/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace hetca {
namespace {

void check_rho_domain(double t, double alpha, double beta) {
  if (!(alpha > 2.0)) throw std::domain_error("rho: path-loss exponent must exceed 2");
  if (!(beta > 0.0)) throw std::domain_error("rho: beta must be positive");
  if (t < 0.0) throw std::domain_error("rho: t must be nonnegative");
}

}  // namespace

double rho_quadrature(double t, double alpha, double beta,
                      const QuadratureSettings& settings) {
  check_rho_domain(t, alpha, beta);
  if (t == 0.0) return 0.0;
  const double y = t / beta;  // rho(t,a,b) = rho(t/b, a, 1)
  const double p = 0.5 * alpha;
  // Map the algebraic tail onto (0, 1] with x = u^(-s), s = 1/(p-1):
  // the transformed integrand tends to the constant y*s at u -> 0 and
  // stays smooth, so the generic semi-infinite transform's endpoint
  // cusp (severe for alpha near 2) never appears.
  const double s = 1.0 / (p - 1.0);
  auto f = [y, p, s](double u) {
    if (u <= 0.0) return y * s;
    const double x = std::pow(u, -s);
    return y / (y + std::pow(x, p)) * s * x / u;
  };
  return integrate(f, 0.0, 1.0, settings);
}

double rho(double t, double alpha, double beta, const QuadratureSettings& settings) {
  check_rho_domain(t, alpha, beta);
  if (t == 0.0) return 0.0;
  if (alpha == 4.0) {
    const double s = std::sqrt(t / beta);
    return s * (M_PI_2 - std::atan(1.0 / s));
  }
  return rho_quadrature(t, alpha, beta, settings);
}

double q_alpha(double alpha, const QuadratureSettings& settings) {
  if (!(alpha > 2.0)) throw std::domain_error("q: path-loss exponent must exceed 2");
  const QuadratureSettings inner = settings.tightened(10.0);
  auto f = [alpha, &inner](double t) {
    return 1.0 / ((1.0 + t) * (1.0 + rho(t, alpha, 1.0, inner)));
  };
  return integrate_semi_infinite(f, settings, 1.0);
}

double TierKernel::log_value(double r) const {
  double e = 0.0;
  for (std::size_t l = 0; l < coef.size(); ++l)
    e += coef[l] * std::pow(r, expnt[l]);
  return -M_PI * e;
}

double TierKernel::operator()(double r) const { return std::exp(log_value(r)); }

TierKernel make_tier_kernel(const NetworkConfig& config, std::size_t tier) {
  const std::size_t K = config.tier_count();
  TierKernel kern;
  kern.coef.resize(K);
  kern.expnt.resize(K);
  const std::size_t ks = k_star(config, tier);
  const double ak = config.bands[ks].path_loss_exponent;
  const double zp_k = config.tiers[tier].bias * config.tiers[tier].tx_power;
  double coef_sum = 0.0;
  for (std::size_t l = 0; l < K; ++l) {
    const double al = config.bands[k_star(config, l)].path_loss_exponent;
    const double zp_l = config.tiers[l].bias * config.tiers[l].tx_power;
    kern.coef[l] = config.tiers[l].bs_density * std::pow(zp_l / zp_k, 2.0 / al);
    kern.expnt[l] = 2.0 * ak / al;
    coef_sum += kern.coef[l];
  }
  kern.char_radius = 1.0 / std::sqrt(M_PI * coef_sum);
  return kern;
}

double h_k(double r, const NetworkConfig& config, std::size_t tier) {
  return make_tier_kernel(config, tier)(r);
}

double tier_kernel_integral(const NetworkConfig& config, std::size_t tier,
                            const QuadratureSettings& settings) {
  const TierKernel kern = make_tier_kernel(config, tier);
  auto f = [&kern](double r) { return r * kern(r); };
  return integrate_semi_infinite(f, settings, kern.char_radius);
}

}  // namespace hetca
