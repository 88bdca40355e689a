#include "hetca/sim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hetca/derived.hpp"
#include "hetca/sim/rng.hpp"

namespace hetca::sim {
namespace {

enum StreamPurpose : std::uint64_t {
  kBsPoints = 1,
  kUePoints = 2,
  kFading = 3,
  kScheduling = 4,
  kActivity = 5,
  kAdmission = 6,
};

int subchannel_count(const NetworkConfig& config, std::size_t tier, std::size_t band) {
  return static_cast<int>(
      std::lround(config.bands[band].bandwidth_hz / config.share(tier, band)));
}

}  // namespace

ValidationReport validate_for_simulation(const NetworkConfig& config) {
  ValidationReport report = validate(config);
  if (!report.ok()) return report;
  for (std::size_t i = 0; i < config.band_count(); ++i) {
    double common_b = -1.0;
    for (std::size_t k = 0; k < config.tier_count(); ++k) {
      if (!config.deployment.uses(k, i)) continue;
      double ratio = config.bands[i].bandwidth_hz / config.share(k, i);
      if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        report.violations.push_back("simulation requires an integer subchannel count: B/b for band " +
                                    std::to_string(i + 1) + ", tier " + std::to_string(k + 1) +
                                    " is not an integer");
      if (common_b < 0.0)
        common_b = config.share(k, i);
      else if (config.share(k, i) != common_b)
        report.violations.push_back("simulation requires a common bandwidth share per band (band " +
                                    std::to_string(i + 1) + " has tier-dependent b)");
    }
  }
  return report;
}

double distance(const Point& a, const Point& b, double area_side,
                SimParams::Boundary boundary) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (boundary == SimParams::Boundary::Toroidal) {
    dx = std::min(dx, area_side - dx);
    dy = std::min(dy, area_side - dy);
  }
  return std::hypot(dx, dy);
}

double NetworkRealization::fading(std::size_t tier, std::size_t bs, std::size_t ue,
                                  std::size_t band) const {
  return exp1_draw(fading_key, tier, bs, ue, band);
}

double NetworkRealization::fading(std::size_t tier, std::size_t bs, std::size_t ue,
                                  std::size_t band, std::size_t subchannel) const {
  return exp1_draw(fading_key, tier, bs, ue, band, subchannel + 1000003u);
}

NetworkRealization sample_network(const NetworkConfig& config,
                                  const SimParams& params, int iteration) {
  NetworkRealization real;
  real.area_side = params.area_side;
  real.fading_key =
      derive_key(params.master_seed, static_cast<std::uint64_t>(iteration), kFading);
  const double area = params.area_side * params.area_side;

  real.bs_points.resize(config.tier_count());
  for (std::size_t k = 0; k < config.tier_count(); ++k) {
    Stream s = derive_stream(params.master_seed, static_cast<std::uint64_t>(iteration),
                             kBsPoints, static_cast<std::uint64_t>(k));
    std::uint64_t n = s.next_poisson(config.tiers[k].bs_density * area);
    real.bs_points[k].resize(n);
    for (auto& p : real.bs_points[k]) {
      p.x = params.area_side * s.next_u01();
      p.y = params.area_side * s.next_u01();
    }
  }
  {
    Stream s = derive_stream(params.master_seed, static_cast<std::uint64_t>(iteration),
                             kUePoints);
    std::uint64_t n = s.next_poisson(config.ue_density * area);
    real.ue_points.resize(n);
    for (auto& p : real.ue_points) {
      p.x = params.area_side * s.next_u01();
      p.y = params.area_side * s.next_u01();
    }
  }
  return real;
}

Association associate(const NetworkRealization& realization,
                      const NetworkConfig& config, const SimParams& params) {
  const std::size_t K = config.tier_count();
  const std::size_t M = config.band_count();
  Association assoc(realization.ue_points.size());

  for (std::size_t u = 0; u < realization.ue_points.size(); ++u) {
    const Point& ue = realization.ue_points[u];
    // nearest BS per tier
    std::vector<int> nearest(K, -1);
    std::vector<double> nearest_d(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
      double best = std::numeric_limits<double>::infinity();
      int best_i = -1;
      for (std::size_t j = 0; j < realization.bs_points[k].size(); ++j) {
        double d = distance(ue, realization.bs_points[k][j], realization.area_side,
                            params.boundary);
        if (d < best) {
          best = d;
          best_i = static_cast<int>(j);
        }
      }
      nearest[k] = best_i;
      nearest_d[k] = best;
    }
    // strongest biased received power over (tier, band) pairs; ties go
    // to the lowest tier, then lowest band, by loop order
    AssocEntry entry;
    double best_metric = -1.0;
    for (std::size_t k = 0; k < K; ++k) {
      if (nearest[k] < 0) continue;
      for (std::size_t i = 0; i < M; ++i) {
        if (!config.deployment.uses(k, i)) continue;
        double metric = config.tiers[k].bias * config.tiers[k].tx_power *
                        std::pow(nearest_d[k], -config.bands[i].path_loss_exponent);
        if (params.physical_association) metric *= config.bands[i].reference_gain;
        if (metric > best_metric) {
          best_metric = metric;
          entry.tier = static_cast<int>(k);
          entry.bs = nearest[k];
          entry.primary_band = static_cast<int>(i);
          entry.distance = nearest_d[k];
        }
      }
    }
    assoc[u] = entry;
  }
  return assoc;
}

Schedule make_schedule(const NetworkRealization& realization,
                       const Association& assoc, const NetworkConfig& config,
                       const SimParams& params, int iteration) {
  const std::size_t K = config.tier_count();
  const std::size_t M = config.band_count();
  Schedule sched;
  sched.ue_subchannel.assign(assoc.size(), std::vector<int>(M, -1));
  sched.assignment.resize(K);

  // UEs attached per (tier, bs)
  std::vector<std::vector<std::vector<int>>> attached(K);
  for (std::size_t k = 0; k < K; ++k)
    attached[k].resize(realization.bs_points[k].size());
  for (std::size_t u = 0; u < assoc.size(); ++u)
    if (assoc[u].tier >= 0)
      attached[assoc[u].tier][assoc[u].bs].push_back(static_cast<int>(u));

  for (std::size_t k = 0; k < K; ++k) {
    sched.assignment[k].resize(realization.bs_points[k].size());
    for (std::size_t j = 0; j < realization.bs_points[k].size(); ++j) {
      sched.assignment[k][j].assign(M, {});
      for (std::size_t i = 0; i < M; ++i) {
        if (!config.deployment.uses(k, i)) continue;
        const int S = subchannel_count(config, k, i);
        auto& slots = sched.assignment[k][j][i];
        slots.assign(S, -1);
        const auto& users = attached[k][j];
        const int n = static_cast<int>(users.size());
        if (n == 0) continue;
        Stream s = derive_stream(params.master_seed,
                                 static_cast<std::uint64_t>(iteration), kScheduling,
                                 static_cast<std::uint64_t>(k),
                                 static_cast<std::uint64_t>(j),
                                 static_cast<std::uint64_t>(i));
        if (n >= S) {
          // choose S users uniformly without replacement (partial Fisher-Yates)
          std::vector<int> pool = users;
          for (int m = 0; m < S; ++m) {
            std::uint32_t pick = m + s.next_below(static_cast<std::uint32_t>(n - m));
            std::swap(pool[m], pool[pick]);
            slots[m] = pool[m];
            sched.ue_subchannel[pool[m]][i] = m;
          }
        } else {
          // all n users served on n distinct random subchannels
          std::vector<int> chans(S);
          std::iota(chans.begin(), chans.end(), 0);
          for (int m = 0; m < n; ++m) {
            std::uint32_t pick = m + s.next_below(static_cast<std::uint32_t>(S - m));
            std::swap(chans[m], chans[pick]);
            slots[chans[m]] = users[m];
            sched.ue_subchannel[users[m]][i] = chans[m];
          }
        }
      }
    }
  }
  return sched;
}

std::vector<double> compute_rates(const NetworkRealization& realization,
                                  const Association& assoc, const Schedule& sched,
                                  const NetworkConfig& config,
                                  const SimParams& params) {
  const std::size_t K = config.tier_count();
  const std::size_t M = config.band_count();

  // active transmitters per (band, subchannel)
  struct Tx {
    int tier, bs;
  };
  std::vector<std::vector<std::vector<Tx>>> active(M);
  for (std::size_t i = 0; i < M; ++i) {
    int max_s = 0;
    for (std::size_t k = 0; k < K; ++k)
      if (config.deployment.uses(k, i))
        max_s = std::max(max_s, subchannel_count(config, k, i));
    active[i].resize(max_s);
  }
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t j = 0; j < sched.assignment[k].size(); ++j)
      for (std::size_t i = 0; i < M; ++i)
        for (std::size_t s = 0; s < sched.assignment[k][j][i].size(); ++s)
          if (sched.assignment[k][j][i][s] >= 0)
            active[i][s].push_back({static_cast<int>(k), static_cast<int>(j)});

  std::vector<double> rates(assoc.size(), 0.0);
  for (std::size_t u = 0; u < assoc.size(); ++u) {
    const AssocEntry& e = assoc[u];
    if (e.tier < 0) continue;
    const std::size_t k = e.tier;
    double rate = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      if (!config.deployment.uses(k, i)) continue;
      int s = sched.ue_subchannel[u][i];
      if (s < 0) continue;
      const double alpha = config.bands[i].path_loss_exponent;
      double gain = params.per_subchannel_fading
                        ? realization.fading(k, e.bs, u, i, s)
                        : realization.fading(k, e.bs, u, i);
      double signal = config.tiers[k].tx_power * gain * std::pow(e.distance, -alpha);
      double interference = 0.0;
      for (const Tx& tx : active[i][s]) {
        if (tx.tier == e.tier && tx.bs == e.bs) continue;
        double d = distance(realization.ue_points[u],
                            realization.bs_points[tx.tier][tx.bs],
                            realization.area_side, params.boundary);
        double h = params.per_subchannel_fading
                       ? realization.fading(tx.tier, tx.bs, u, i, s)
                       : realization.fading(tx.tier, tx.bs, u, i);
        interference += config.tiers[tx.tier].tx_power * h * std::pow(d, -alpha);
      }
      double denom = interference + config.noise_term(k, i);
      double sinr = denom > 0.0 ? signal / denom : params.sinr_cap;
      if (!std::isfinite(sinr) || sinr > params.sinr_cap) sinr = params.sinr_cap;
      rate += config.share(k, i) * std::log1p(sinr);
    }
    rates[u] = rate;
  }
  return rates;
}

// Per-UE rates under SimParams::Scheduling::MeanField: the interferer
// set in band i is a Bernoulli(theta_{i,l}) thinning of each tier and
// the UE is admitted per band with probability p_{i,k}, with theta and p
// taken from the analytic derived state. This samples exactly the
// stochastic model behind the rate integrals (association geometry and
// fading stay fully simulated).
static std::vector<double> mean_field_rates(const NetworkRealization& realization,
                                            const Association& assoc,
                                            const NetworkConfig& config,
                                            const DerivedState& st,
                                            const SimParams& params, int iteration) {
  const std::size_t K = config.tier_count();
  const std::size_t M = config.band_count();

  // activity[l][i][bs]: does this BS transmit in band i?
  std::vector<std::vector<std::vector<char>>> active(K);
  for (std::size_t l = 0; l < K; ++l) {
    active[l].assign(M, {});
    for (std::size_t i = 0; i < M; ++i) {
      if (!config.deployment.uses(l, i)) continue;
      const double theta = st.per_band_tier[l][i].load;
      if (theta <= 0.0) continue;
      auto& flags = active[l][i];
      flags.assign(realization.bs_points[l].size(), 1);
      if (theta < 1.0) {
        Stream s = derive_stream(params.master_seed,
                                 static_cast<std::uint64_t>(iteration), kActivity,
                                 static_cast<std::uint64_t>(l),
                                 static_cast<std::uint64_t>(i));
        for (auto& f : flags) f = s.next_u01() < theta ? 1 : 0;
      }
    }
  }

  std::vector<double> rates(assoc.size(), 0.0);
  for (std::size_t u = 0; u < assoc.size(); ++u) {
    const AssocEntry& e = assoc[u];
    if (e.tier < 0) continue;
    const std::size_t k = e.tier;
    Stream admit = derive_stream(params.master_seed,
                                 static_cast<std::uint64_t>(iteration), kAdmission,
                                 static_cast<std::uint64_t>(u));
    double rate = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      if (!config.deployment.uses(k, i)) continue;
      const double draw = admit.next_u01();  // consumed even when p = 1
      if (draw >= st.per_band_tier[k][i].admission) continue;
      const double alpha = config.bands[i].path_loss_exponent;
      double signal = config.tiers[k].tx_power * realization.fading(k, e.bs, u, i) *
                      std::pow(e.distance, -alpha);
      double interference = 0.0;
      for (std::size_t l = 0; l < K; ++l) {
        const auto& flags = active[l][i];
        for (std::size_t j = 0; j < flags.size(); ++j) {
          if (!flags[j]) continue;
          if (l == k && j == static_cast<std::size_t>(e.bs)) continue;
          double d = distance(realization.ue_points[u], realization.bs_points[l][j],
                              realization.area_side, params.boundary);
          interference += config.tiers[l].tx_power * realization.fading(l, j, u, i) *
                          std::pow(d, -alpha);
        }
      }
      double denom = interference + config.noise_term(k, i);
      double sinr = denom > 0.0 ? signal / denom : params.sinr_cap;
      if (!std::isfinite(sinr) || sinr > params.sinr_cap) sinr = params.sinr_cap;
      rate += config.share(k, i) * std::log1p(sinr);
    }
    rates[u] = rate;
  }
  return rates;
}

RateEstimate run_monte_carlo(const NetworkConfig& config, const SimParams& params) {
  ValidationReport check = validate_for_simulation(config);
  if (!check.ok())
    throw std::invalid_argument("invalid simulation config:\n" + check.to_string());
  if (params.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  const int n = params.iterations;
  std::vector<double> means(n, 0.0);
  std::vector<char> has_sample(n, 0);

  const bool mean_field = params.scheduling == SimParams::Scheduling::MeanField;
  DerivedState derived;
  if (mean_field) derived = compute_derived(config);

  auto run_iteration = [&](int it) {
    NetworkRealization real = sample_network(config, params, it);
    Association assoc = associate(real, config, params);
    std::vector<double> rates;
    if (mean_field) {
      rates = mean_field_rates(real, assoc, config, derived, params, it);
    } else {
      Schedule sched = make_schedule(real, assoc, config, params, it);
      rates = compute_rates(real, assoc, sched, config, params);
    }

    double sum = 0.0;
    std::size_t count = 0;
    const double lo = params.area_side * 0.5 * (1.0 - 1.0 / std::sqrt(2.0));
    const double hi = params.area_side - lo;
    for (std::size_t u = 0; u < rates.size(); ++u) {
      if (params.central_half_only &&
          params.boundary == SimParams::Boundary::LargeArea) {
        const Point& p = real.ue_points[u];
        if (p.x < lo || p.x > hi || p.y < lo || p.y > hi) continue;
      }
      sum += rates[u];
      ++count;
    }
    if (count > 0) {
      means[it] = sum / static_cast<double>(count);
      has_sample[it] = 1;
    }
  };

  const int threads = std::max(1, params.threads);
  if (threads == 1) {
    for (int it = 0; it < n; ++it) run_iteration(it);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (int it = next.fetch_add(1); it < n; it = next.fetch_add(1))
          run_iteration(it);
      });
    for (auto& t : pool) t.join();
  }

  RateEstimate est;
  for (int it = 0; it < n; ++it) {
    if (!has_sample[it]) {
      ++est.empty_iterations;
      continue;
    }
    est.per_iteration_means.push_back(means[it]);
  }
  est.iterations_used = static_cast<int>(est.per_iteration_means.size());
  if (est.iterations_used == 0)
    throw std::runtime_error("all iterations produced zero UEs; increase the area or UE density");

  double sum = std::accumulate(est.per_iteration_means.begin(),
                               est.per_iteration_means.end(), 0.0);
  est.mean_rate = sum / est.iterations_used;
  double ss = 0.0;
  for (double m : est.per_iteration_means) ss += (m - est.mean_rate) * (m - est.mean_rate);
  if (est.iterations_used > 1)
    est.std_error = std::sqrt(ss / (est.iterations_used - 1)) /
                    std::sqrt(static_cast<double>(est.iterations_used));
  return est;
}

void dump_realization(const std::string& path, const NetworkRealization& realization,
                      const Association& assoc, const Schedule& sched) {
  nlohmann::json j;
  j["area_side"] = realization.area_side;
  for (const auto& tier : realization.bs_points) {
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& p : tier) pts.push_back({p.x, p.y});
    j["bs_points"].push_back(pts);
  }
  {
    nlohmann::json pts = nlohmann::json::array();
    for (const Point& p : realization.ue_points) pts.push_back({p.x, p.y});
    j["ue_points"] = pts;
  }
  nlohmann::json assoc_json = nlohmann::json::array();
  for (const AssocEntry& e : assoc)
    assoc_json.push_back({{"tier", e.tier},
                          {"bs", e.bs},
                          {"primary_band", e.primary_band},
                          {"distance", e.distance}});
  j["association"] = assoc_json;
  j["schedule"] = sched.assignment;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace hetca::sim
