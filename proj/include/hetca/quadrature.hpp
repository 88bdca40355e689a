#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace hetca {

struct QuadratureSettings {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  QuadratureSettings tightened(double factor) const {
    QuadratureSettings s = *this;
    s.rel_tol /= factor;
    s.abs_tol /= factor;
    return s;
  }
};

/// Thrown when the adaptive scheme exhausts its subdivision budget.
/// Carries the best estimate and a bound on its error.
struct QuadratureError : std::runtime_error {
  double best_estimate;
  double error_bound;
  QuadratureError(const std::string& msg, double est, double err)
      : std::runtime_error(msg), best_estimate(est), error_bound(err) {}
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G7K15) on a finite interval. Deterministic:
/// the worst segment is always split first, ties by creation order.
double integrate(const Integrand& f, double a, double b,
                 const QuadratureSettings& settings = {});

/// Integral of f over [0, inf) via the substitution x = scale*u/(1-u).
/// `scale` should be of the order of the integrand's characteristic
/// length so the transformed mass is well spread over [0,1).
double integrate_semi_infinite(const Integrand& f,
                               const QuadratureSettings& settings = {},
                               double scale = 1.0);

}  // namespace hetca
