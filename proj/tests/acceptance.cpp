// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Each criterion is independent and catches its own errors.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hetca/config_io.hpp"
#include "hetca/derived.hpp"
#include "hetca/kernels.hpp"
#include "hetca/rates.hpp"
#include "hetca/sim/simulator.hpp"
#include "hetca/sweep.hpp"
#include "oracles.hpp"

using namespace hetca;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

template <typename F>
void guarded(int criterion, const std::string& label, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(criterion, label, false, std::string("exception: ") + e.what());
  }
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// --- shared fixtures -------------------------------------------------------

// Reference two-tier layout (macro 40 W on the alpha=3 band, small cells
// 1 W on the alpha=4 band), interference limited.
NetworkConfig reference_two_tier(double lambda1) {
  NetworkConfig c;
  c.tiers = {{lambda1, 40.0, 1.0}, {2.0 * lambda1, 1.0, 1.0}};
  c.bands = {{9e6, 3.0, 1.0}, {9e6, 4.0, 1.0}};
  c.deployment.x = {{1, 0}, {0, 1}};
  c.ue_density = 12.0 * c.tiers[1].bs_density;
  c.set_scalar_share(1.8e6);
  c.interference_limited = true;
  return c;
}

NetworkConfig reference_single_tier(double lambda1) {
  NetworkConfig c;
  c.tiers = {{lambda1, 40.0, 1.0}};
  c.bands = {{9e6, 3.0, 1.0}, {9e6, 4.0, 1.0}};
  c.deployment.x = {{1, 1}};
  c.ue_density = 12.0 * lambda1;
  c.set_scalar_share(1.8e6);
  c.interference_limited = true;
  return c;
}

const double kLambdaMacro = 1.2732395447351628e-06;      // 1 per 500 m disc
const double kLambdaMacroHalf = 0.5 * kLambdaMacro;      // validation density

// --- criterion bodies ------------------------------------------------------

void criterion1() {
  const std::string label = "kernel exactness against independent oracles";
  QuadratureSettings tight;
  tight.rel_tol = 1e-10;

  bool ok = std::abs(rho(1.0, 4.0, 1.0) - M_PI / 4.0) <= 1e-9;
  ok = ok && rho(0.0, 3.0, 1.0) == 0.0 && rho(0.0, 4.7, 2.0) == 0.0;

  std::mt19937 gen(2026);
  std::uniform_real_distribution<double> ut(0.01, 50.0), ua(2.2, 6.0), ub(0.1, 10.0);
  double worst_rho = 0.0;
  for (int i = 0; i < 100; ++i) {
    double t = ut(gen), a = ua(gen), b = ub(gen);
    worst_rho = std::max(worst_rho, rel_gap(rho(t, a, b, tight), oracle::rho(t, a, b)));
  }
  ok = ok && worst_rho <= 1e-8;

  double worst_q = 0.0;
  for (double a : {2.5, 3.0, 3.5, 4.0, 5.0})
    worst_q = std::max(worst_q, rel_gap(q_alpha(a), oracle::q_alpha(a)));
  ok = ok && worst_q <= 1e-6;

  char buf[96];
  std::snprintf(buf, sizeof(buf), "max rel err rho %.2e, q %.2e", worst_rho, worst_q);
  report(1, label, ok, buf);
}

void criterion2() {
  const std::string label = "coverage closed form and unit total on random configs";
  QuadratureSettings tight;
  tight.rel_tol = 1e-10;
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> ud(0.2, 8.0), up(0.05, 40.0), uz(0.5, 30.0),
      ua(2.3, 5.5);
  double worst_cf = 0.0, worst_sum = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = ua(gen);
    const int K = 2 + static_cast<int>(gen() % 3);
    NetworkConfig c;
    for (int k = 0; k < K; ++k) c.tiers.push_back({ud(gen) * 1e-6, up(gen), uz(gen)});
    c.bands = {{9e6, alpha, 1.0}};
    c.deployment.x.assign(K, {1});
    c.ue_density = 1e-5;
    c.set_scalar_share(1.8e6);
    c.interference_limited = true;

    auto pi = coverage(c, tight);
    double den = 0.0;
    for (const Tier& t : c.tiers)
      den += t.bs_density * std::pow(t.bias * t.tx_power, 2.0 / alpha);
    double sum = 0.0;
    for (int k = 0; k < K; ++k) {
      double cf = c.tiers[k].bs_density *
                  std::pow(c.tiers[k].bias * c.tiers[k].tx_power, 2.0 / alpha) / den;
      worst_cf = std::max(worst_cf, rel_gap(pi[k], cf));
      sum += pi[k];
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
  }
  // mixed-exponent configs only have the unit-total property
  std::uniform_real_distribution<double> ua2(2.3, 5.5);
  for (int trial = 0; trial < 10; ++trial) {
    NetworkConfig c;
    c.tiers = {{ud(gen) * 1e-6, up(gen), uz(gen)}, {ud(gen) * 1e-6, up(gen), uz(gen)}};
    c.bands = {{9e6, ua2(gen), 1.0}, {9e6, ua2(gen), 1.0}};
    c.deployment.x = {{1, 0}, {0, 1}};
    c.ue_density = 1e-5;
    c.set_scalar_share(1.8e6);
    c.interference_limited = true;
    auto pi = coverage(c, tight);
    worst_sum = std::max(worst_sum, std::abs(pi[0] + pi[1] - 1.0));
  }
  bool ok = worst_cf <= 1e-8 && worst_sum <= 1e-6;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max closed-form gap %.2e, max |sum-1| %.2e",
                worst_cf, worst_sum);
  report(2, label, ok, buf);
}

void criterion3() {
  const std::string label = "general rate reduces to its three special cases";
  double g1, g2, g3;
  {
    NetworkConfig c = reference_single_tier(kLambdaMacro);
    g1 = rel_gap(single_flow_rate(c).total, single_tier_rate(c).total);
  }
  {
    NetworkConfig c = reference_two_tier(kLambdaMacro);  // orthogonal
    g2 = rel_gap(single_flow_rate(c).total, orthogonal_rate(c).total);
  }
  {
    NetworkConfig c = reference_two_tier(kLambdaMacro);
    c.bands = {{9e6, 3.5, 1.0}};
    c.deployment.x = {{1}, {1}};
    c.bandwidth_share = {{1.8e6}, {1.8e6}};
    g3 = rel_gap(single_flow_rate(c).total, cochannel_rate(c).total);
  }
  bool ok = g1 <= 1e-5 && g2 <= 1e-5 && g3 <= 1e-5;
  char buf[96];
  std::snprintf(buf, sizeof(buf),
                "gaps: single-tier %.2e, orthogonal %.2e, cochannel %.2e", g1, g2, g3);
  report(3, label, ok, buf);
}

void criterion4() {
  const std::string label = "peak-rate invariance and band super-linearity";
  NetworkConfig c = reference_single_tier(kLambdaMacro);
  double base = peak_rate(c).total;
  c.tiers[0].bs_density *= 10.0;
  c.tiers[0].tx_power *= 5.0;
  double scaled = peak_rate(c).total;
  double q3 = q_alpha(3.0), q4 = q_alpha(4.0);
  const double B = 9e6;
  bool ok = rel_gap(scaled, base) <= 1e-9 && q4 > q3 && (q3 + q4) * B > 2.0 * q3 * B;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "scaling gap %.2e, q(3)=%.6f, q(4)=%.6f",
                rel_gap(scaled, base), q3, q4);
  report(4, label, ok, buf);
}

void criterion5() {
  const std::string label = "analytic rates track monte carlo over the user-density grid";
  sim::SimParams p;
  p.area_side = 10000.0;
  p.iterations = 50;
  p.master_seed = 2024;
  p.boundary = sim::SimParams::Boundary::Toroidal;
  p.threads = 4;
  // Validate the analytic engine against a simulation of the same
  // stochastic model (thinned interferers, per-band admission); the
  // snapshot contention scheduler is exercised separately.
  p.scheduling = sim::SimParams::Scheduling::MeanField;

  double worst_single = 0.0, worst_two = 0.0;
  for (double ratio : {5.0, 15.0, 25.0, 35.0, 45.0}) {
    {
      NetworkConfig c = reference_single_tier(kLambdaMacroHalf);
      c.ue_density = ratio * kLambdaMacroHalf;
      double analytic = single_tier_rate(c).total;
      double mc = sim::run_monte_carlo(c, p).mean_rate;
      worst_single = std::max(worst_single, rel_gap(mc, analytic));
    }
    {
      NetworkConfig c = reference_two_tier(kLambdaMacroHalf);
      c.ue_density = ratio * kLambdaMacroHalf;
      double analytic = single_flow_rate(c).total;
      double mc = sim::run_monte_carlo(c, p).mean_rate;
      worst_two = std::max(worst_two, rel_gap(mc, analytic));
    }
  }
  bool ok = worst_single <= 0.05 && worst_two <= 0.10;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max gap single-tier %.1f%%, two-tier %.1f%%",
                100.0 * worst_single, 100.0 * worst_two);
  report(5, label, ok, buf);
}

void criterion6() {
  const std::string label = "deployment-comparison density-ratio identity";
  std::mt19937 gen(47);
  std::uniform_real_distribution<double> ud(0.3, 5.0), up(0.5, 4.0), ua(2.6, 4.5);
  double worst = 0.0;
  bool ordering = true;
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 2 + static_cast<int>(gen() % 3);
    NetworkConfig c;
    double lambda_sum = 0.0;
    for (int k = 0; k < K; ++k) {
      c.tiers.push_back({ud(gen) * 1e-6, up(gen), 1.0});
      lambda_sum += c.tiers.back().bs_density;
    }
    c.bands = {{9e6, ua(gen), 1.0}};
    c.deployment.x.assign(K, {1});
    c.ue_density = 500.0 * lambda_sum;  // fully loaded everywhere
    c.set_scalar_share(1.8e6);
    c.interference_limited = true;

    auto cmp = deployment_comparison(c);
    double expect = lambda_sum / (K * c.tiers[0].bs_density);
    worst = std::max(worst,
                     rel_gap(cmp.rate_1_band_K_tier / cmp.rate_K_band_1_tier, expect));
    ordering = ordering && cmp.rate_K_K_cochannel >= cmp.rate_K_K_orthogonal;
  }
  bool ok = worst <= 1e-9 && ordering;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max ratio gap %.2e, cochannel>=orthogonal %s", worst,
                ordering ? "yes" : "no");
  report(6, label, ok, buf);
}

void criterion7() {
  const std::string label = "small-cell biasing sweep: gain and optimal bias per deployment";
  QuadratureSettings qs;
  qs.rel_tol = 1e-6;
  qs.abs_tol = 1e-10;

  NetworkConfig base;
  base.tiers = {{kLambdaMacro, 40.0, 1.0}, {8.0 * kLambdaMacro, 1.0, 1.0}};
  base.bands = {{9e6, 3.0, 1.0}, {9e6, 4.0, 1.0}};
  base.deployment.x = {{1, 0}, {0, 1}};
  base.ue_density = 12.0 * base.tiers[1].bs_density;
  base.set_scalar_share(1.8e6);
  base.interference_limited = true;

  const std::vector<double> grid = {0.0, 3.0, 6.0, 9.0, 12.0, 15.0, 17.0, 20.0};
  auto sweep = [&](const std::string& dep) {
    std::vector<double> rates;
    NetworkConfig c = base;
    c.deployment = DeploymentMatrix::parse(dep);
    for (double z : grid) {
      c.tiers[1].bias = db_to_linear(z);
      rates.push_back(single_flow_rate(c, qs).total);
    }
    return rates;
  };
  auto argmax = [&](const std::vector<double>& v) {
    return std::distance(v.begin(), std::max_element(v.begin(), v.end()));
  };

  auto orth = sweep("[1,0;0,1]");
  double best_bias = grid[argmax(orth)];
  double gain = *std::max_element(orth.begin(), orth.end()) / orth.front();
  bool ok = best_bias >= 10.0 && best_bias <= 20.0 && gain >= 1.5;

  std::string zero_best = "";
  for (const char* dep : {"[1,0;1,1]", "[1,1;1,1]"}) {
    auto v = sweep(dep);
    if (argmax(v) != 0) {
      ok = false;
      zero_best += std::string(" ") + dep;
    }
  }

  // When small cells share the macro band instead of using their own,
  // biasing accomplishes little: the best bias in the grid gains less
  // than 1.5x over 0 dB, and the deployment stays strictly below the
  // orthogonal one at every bias value.
  auto shared = sweep("[1,1;1,0]");
  double shared_gain =
      *std::max_element(shared.begin(), shared.end()) / shared.front();
  bool shared_ok = shared_gain < 1.5;
  for (std::size_t j = 0; j < grid.size(); ++j)
    shared_ok = shared_ok && shared[j] < orth[j];
  ok = ok && shared_ok;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "orthogonal argmax %.0f dB, gain %.2fx; shared-band gain %.2fx%s%s%s",
                best_bias, gain, shared_gain,
                shared_ok ? "" : " (shared-band check failed)",
                zero_best.empty() ? "" : "; nonzero argmax for", zero_best.c_str());
  report(7, label, ok, buf);
}

void criterion8() {
  const std::string label = "link-length distribution (KS) and tier shares";
  NetworkConfig c = reference_two_tier(kLambdaMacroHalf);
  c.ue_density = 4.0e-8;  // ~4 UEs per snapshot keeps samples near-independent

  sim::SimParams p;
  p.area_side = 10000.0;
  p.boundary = sim::SimParams::Boundary::Toroidal;
  p.master_seed = 99;

  const DerivedState st = compute_derived(c);
  const std::size_t K = c.tier_count();
  const std::size_t target = 10000;

  std::vector<std::vector<double>> samples(K);
  std::vector<long> counts(K, 0);
  long total = 0;
  double mean_ue = c.ue_density * p.area_side * p.area_side;
  double min_pi = std::min(st.per_tier[0].pi, st.per_tier[1].pi);
  int iterations = static_cast<int>(1.2 * target / (mean_ue * min_pi)) + 1;

  for (int it = 0; it < iterations; ++it) {
    sim::NetworkRealization real = sim::sample_network(c, p, it);
    sim::Association assoc = sim::associate(real, c, p);
    for (const sim::AssocEntry& e : assoc) {
      if (e.tier < 0) continue;
      ++counts[e.tier];
      ++total;
      if (samples[e.tier].size() < target) samples[e.tier].push_back(e.distance);
    }
  }

  bool ok = true;
  double worst_d = 0.0, worst_sigmas = 0.0;
  const double d_crit = 1.628 / std::sqrt(static_cast<double>(target));
  for (std::size_t k = 0; k < K; ++k) {
    if (samples[k].size() < target) {
      ok = false;
      continue;
    }
    // cdf of the conditional serving distance, tabulated once
    TierKernel kern = make_tier_kernel(c, k);
    const double R = 30.0 * kern.char_radius;
    const int N = 1 << 14;
    std::vector<double> F(N + 1, 0.0);
    double prev = conditional_distance_pdf(c, st, k, 0.0);
    for (int j = 1; j <= N; ++j) {
      double r = R * j / N;
      double cur = conditional_distance_pdf(c, st, k, r);
      F[j] = F[j - 1] + 0.5 * (prev + cur) * (R / N);
      prev = cur;
    }
    const double norm = F[N];
    auto cdf = [&](double r) {
      if (r <= 0.0) return 0.0;
      if (r >= R) return 1.0;
      double x = r / R * N;
      int j = static_cast<int>(x);
      return (F[j] + (x - j) * (F[j + 1] - F[j])) / norm;
    };
    double d = oracle::ks_statistic(samples[k], cdf);
    worst_d = std::max(worst_d, d);
    ok = ok && d <= d_crit;

    // empirical share vs analytic coverage, binomial 3-sigma
    double share = static_cast<double>(counts[k]) / static_cast<double>(total);
    double pi = st.per_tier[k].pi;
    double sigma = std::sqrt(pi * (1.0 - pi) / static_cast<double>(total));
    worst_sigmas = std::max(worst_sigmas, std::abs(share - pi) / sigma);
    ok = ok && std::abs(share - pi) <= 3.0 * sigma;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "max KS %.4f (crit %.4f), share off by %.2f sigma",
                worst_d, d_crit, worst_sigmas);
  report(8, label, ok, buf);
}

void criterion9() {
  const std::string label = "sweep output is byte-identical across worker counts";
  NetworkConfig base = reference_two_tier(kLambdaMacro);

  SweepSpec spec;
  spec.parameter = "ue_density_ratio";
  spec.values = {12.0, 24.0};
  spec.analytic = true;
  spec.monte_carlo = true;
  spec.deployments = {"[1,0;0,1]", "[1,1;1,1]"};

  sim::SimParams p;
  p.area_side = 6000.0;
  p.iterations = 8;
  p.master_seed = 5;
  p.boundary = sim::SimParams::Boundary::Toroidal;

  std::vector<std::string> hashes;
  for (int threads : {1, 4, 8}) {
    SweepResult r = run_sweep(base, spec, p, threads);
    hashes.push_back(fnv1a_hex(r.csv) + ":" + fnv1a_hex(r.manifest));
  }
  // and a repeat run at the same thread count
  SweepResult again = run_sweep(base, spec, p, 4);
  std::string repeat = fnv1a_hex(again.csv) + ":" + fnv1a_hex(again.manifest);

  bool ok = hashes[0] == hashes[1] && hashes[1] == hashes[2] && repeat == hashes[1];
  report(9, label, ok, "hash " + hashes[0]);
}

}  // namespace

int main() {
  guarded(1, "kernel exactness against independent oracles", criterion1);
  guarded(2, "coverage closed form and unit total on random configs", criterion2);
  guarded(3, "general rate reduces to its three special cases", criterion3);
  guarded(4, "peak-rate invariance and band super-linearity", criterion4);
  guarded(5, "analytic rates track monte carlo over the user-density grid", criterion5);
  guarded(6, "deployment-comparison density-ratio identity", criterion6);
  guarded(7, "small-cell biasing sweep: gain and optimal bias per deployment", criterion7);
  guarded(8, "link-length distribution (KS) and tier shares", criterion8);
  guarded(9, "sweep output is byte-identical across worker counts", criterion9);

  std::printf("%d of 9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
