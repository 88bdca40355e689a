#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hetca/kernels.hpp"
#include "oracles.hpp"

using namespace hetca;

namespace {

NetworkConfig two_tier_config() {
  NetworkConfig c;
  c.tiers = {{1e-6, 40.0, 1.0}, {2e-6, 1.0, 1.0}};
  c.bands = {{9e6, 3.0, 1.0}, {9e6, 4.0, 1.0}};
  c.deployment.x = {{1, 0}, {0, 1}};
  c.ue_density = 1.2e-5;
  c.set_scalar_share(1.8e6);
  c.noise_psd = 0.0;
  c.interference_limited = true;
  return c;
}

}  // namespace

TEST_CASE("rho closed form at alpha = 4") {
  CHECK(rho(1.0, 4.0, 1.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  // fast path must agree with plain quadrature
  for (double t : {0.1, 1.0, 7.5, 120.0})
    CHECK(rho(t, 4.0, 2.5) ==
          doctest::Approx(rho_quadrature(t, 4.0, 2.5)).epsilon(1e-10));
}

TEST_CASE("rho vanishes at t = 0 and rejects bad domains") {
  CHECK(rho(0.0, 3.0, 1.0) == 0.0);
  CHECK_THROWS_AS(rho(1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(rho(1.0, 3.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(q_alpha(1.9), std::domain_error);
}

TEST_CASE("rho matches the independent oracle") {
  CHECK(rho(1.0, 3.0, 1.0) == doctest::Approx(oracle::rho(1.0, 3.0, 1.0)).epsilon(1e-9));
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> ut(0.01, 50.0), ua(2.2, 6.0), ub(0.1, 10.0);
  for (int i = 0; i < 30; ++i) {
    double t = ut(gen), a = ua(gen), b = ub(gen);
    CHECK(rho(t, a, b) == doctest::Approx(oracle::rho(t, a, b)).epsilon(1e-8));
  }
}

TEST_CASE("rho monotonicity on randomized triples") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> ut(0.01, 20.0), ua(2.2, 6.0), ub(0.2, 5.0);
  for (int i = 0; i < 50; ++i) {
    double t = ut(gen), a = ua(gen), b = ub(gen);
    CHECK(rho(t * 1.3, a, b) >= rho(t, a, b));          // nondecreasing in t
    CHECK(rho(t, a + 0.4, b) <= rho(t, a, b) + 1e-12);  // nonincreasing in alpha
    CHECK(rho(t, a, b * 1.3) <= rho(t, a, b) + 1e-12);  // nonincreasing in beta
  }
}

TEST_CASE("rho joint scaling invariance") {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> ut(0.05, 10.0), ua(2.3, 5.5),
      us(0.01, 100.0);
  for (int i = 0; i < 30; ++i) {
    double t = ut(gen), a = ua(gen), s = us(gen);
    CHECK(rho(s * t, a, s * 1.0) == doctest::Approx(rho(t, a, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("q matches oracle and is increasing in alpha") {
  CHECK(q_alpha(3.0) == doctest::Approx(oracle::q_alpha(3.0)).epsilon(1e-6));
  CHECK(q_alpha(4.0) == doctest::Approx(oracle::q_alpha(4.0)).epsilon(1e-6));
  CHECK(q_alpha(4.0) > q_alpha(3.0));
  CHECK(q_alpha(5.0) > q_alpha(4.0));
  // purity
  CHECK(q_alpha(3.3) == q_alpha(3.3));
}

TEST_CASE("h_k single tier is the rayleigh void probability") {
  NetworkConfig c = two_tier_config();
  c.tiers = {{1e-6, 1.0, 1.0}};
  c.bands = {{9e6, 3.0, 1.0}};
  c.deployment.x = {{1}};
  c.bandwidth_share = {{1.8e6}};
  for (double r : {0.0, 100.0, 500.0, 2000.0})
    CHECK(h_k(r, c, 0) ==
          doctest::Approx(std::exp(-M_PI * 1e-6 * r * r)).epsilon(1e-12));
}

TEST_CASE("h_k two equal tiers with double density") {
  NetworkConfig c = two_tier_config();
  c.tiers = {{1e-6, 1.0, 1.0}, {2e-6, 1.0, 1.0}};
  c.bands = {{9e6, 3.0, 1.0}};
  c.deployment.x = {{1}, {1}};
  c.bandwidth_share = {{1.8e6}, {1.8e6}};
  for (double r : {100.0, 700.0})
    CHECK(h_k(r, c, 0) ==
          doctest::Approx(std::exp(-3.0 * M_PI * 1e-6 * r * r)).epsilon(1e-12));
}

TEST_CASE("h_k monotone decreasing, h_k(0) = 1") {
  NetworkConfig c = two_tier_config();
  CHECK(h_k(0.0, c, 0) == 1.0);
  CHECK(h_k(0.0, c, 1) == 1.0);
  // keep r small enough that the kernel stays above double underflow
  double prev = 1.0;
  for (double r = 20.0; r <= 400.0; r += 20.0) {
    double v = h_k(r, c, 1);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("-log h_k is convex in r^2 when all exponents agree") {
  NetworkConfig c = two_tier_config();
  c.bands = {{9e6, 3.5, 1.0}, {9e6, 3.5, 1.0}};
  // -log h = pi sum c_l r^2 here: linear (hence convex) in r^2
  auto neg_log = [&](double r2) { return -std::log(h_k(std::sqrt(r2), c, 0)); };
  double a = neg_log(1e4), b = neg_log(5e4), m = neg_log(3e4);
  CHECK(m <= 0.5 * (a + b) + 1e-9 * (a + b));
}
