#include "hetca/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hetca {
namespace {

// G7K15 nodes/weights (QUADPACK dqk15), nodes for the positive half.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kNodes[j]);
    fv[14 - j] = f(c + h * kNodes[j]);
  }
  fv[7] = f(c);

  double kron = kKronrodW[7] * fv[7];
  double gauss = kGaussW[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    kron += kKronrodW[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) gauss += kGaussW[j / 2] * (fv[j] + fv[14 - j]);
  }
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

struct Segment {
  double a, b;
  double value, error;
  long order;  // creation order, deterministic tie-break
};

}  // namespace

double integrate(const Integrand& f, double a, double b,
                 const QuadratureSettings& settings) {
  if (a == b) return 0.0;

  std::vector<Segment> segments;
  long order = 0;
  PanelResult first = gk15(f, a, b);
  segments.push_back({a, b, first.value, first.error, order++});

  for (int iter = 0; iter < settings.max_subdivisions; ++iter) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t s = 0; s < segments.size(); ++s) {
      total += segments[s].value;
      err += segments[s].error;
      const Segment& w = segments[worst];
      if (segments[s].error > w.error ||
          (segments[s].error == w.error && segments[s].order < w.order))
        worst = s;
    }
    double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(total));
    if (err <= tol) return total;

    Segment split = segments[worst];
    double mid = 0.5 * (split.a + split.b);
    if (mid <= split.a || mid >= split.b) {
      // interval no longer representable; accept what we have
      return total;
    }
    PanelResult left = gk15(f, split.a, mid);
    PanelResult right = gk15(f, mid, split.b);
    segments[worst] = {split.a, mid, left.value, left.error, order++};
    segments.push_back({mid, split.b, right.value, right.error, order++});
  }

  double total = 0.0, err = 0.0;
  for (const Segment& s : segments) {
    total += s.value;
    err += s.error;
  }
  double tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(total));
  if (err <= tol) return total;
  throw QuadratureError("quadrature did not converge after " +
                            std::to_string(settings.max_subdivisions) +
                            " subdivisions (error bound " + std::to_string(err) + ")",
                        total, err);
}

double integrate_semi_infinite(const Integrand& f,
                               const QuadratureSettings& settings, double scale) {
  if (!(scale > 0)) scale = 1.0;
  auto transformed = [&f, scale](double u) {
    if (u >= 1.0) return 0.0;
    const double om = 1.0 - u;
    const double x = scale * u / om;
    const double jac = scale / (om * om);
    double v = f(x) * jac;
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(transformed, 0.0, 1.0, settings);
}

}  // namespace hetca
