#pragma once

#include <cstddef>
#include <vector>

#include "hetca/config.hpp"
#include "hetca/quadrature.hpp"

namespace hetca {

/// rho(t, alpha, beta) = int_1^inf t / (t + beta x^(alpha/2)) dx.
/// Requires alpha > 2 and beta > 0. Uses the closed form for alpha == 4.
double rho(double t, double alpha, double beta,
           const QuadratureSettings& settings = {});

/// Same integral evaluated by quadrature regardless of alpha.
double rho_quadrature(double t, double alpha, double beta,
                      const QuadratureSettings& settings = {});

/// q(alpha) = int_0^inf dt / ((1+t)(1 + rho(t, alpha, 1))).
double q_alpha(double alpha, const QuadratureSettings& settings = {});

/// Precomputed exponent terms of the tier-k association kernel
/// h_k(r) = exp(-pi * sum_l coef[l] * r^expnt[l]).
struct TierKernel {
  std::vector<double> coef;   // lambda_l * (Z_l P_l / Z_k P_k)^(2/alpha_{l*})
  std::vector<double> expnt;  // 2 alpha_{k*} / alpha_{l*}
  double char_radius;         // scale for semi-infinite quadrature

  double operator()(double r) const;
  double log_value(double r) const;  // log h_k(r), always <= 0
};

TierKernel make_tier_kernel(const NetworkConfig& config, std::size_t tier);

/// h_k(r): probability-like kernel in (0,1], h_k(0) = 1.
double h_k(double r, const NetworkConfig& config, std::size_t tier);

/// G_k = int_0^inf r h_k(r) dr.
double tier_kernel_integral(const NetworkConfig& config, std::size_t tier,
                            const QuadratureSettings& settings = {});

}  // namespace hetca
