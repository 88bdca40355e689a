#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetca/config.hpp"

namespace hetca::sim {

struct SimParams {
  double area_side = 20000.0;  // m
  int iterations = 100;
  std::uint64_t master_seed = 1;
  enum class Boundary { LargeArea, Toroidal };
  Boundary boundary = Boundary::LargeArea;
  // Competition: per-cell subchannel contention (snapshot scheduling; the
  // served fraction is the random min(1, S/N) of each cell). MeanField:
  // interferers are Bernoulli(theta)-thinned per BS and band, and the UE
  // is admitted Bernoulli(p) per band, matching the assumptions behind
  // the analytic rate expressions; used to validate the quadrature path.
  enum class Scheduling { Competition, MeanField };
  Scheduling scheduling = Scheduling::Competition;
  bool central_half_only = false;      // collect stats from the central half-area
  bool per_subchannel_fading = false;  // default fading granularity is per band
  bool physical_association = false;   // weight the association metric by C_i
  double sinr_cap = 1e12;
  int threads = 1;
};

struct Point {
  double x = 0.0, y = 0.0;
};

/// One sampled snapshot of the network. Fading gains are not stored:
/// they are a deterministic counter-based function of the realization's
/// key and the (tier, bs, ue, band[, subchannel]) tuple.
struct NetworkRealization {
  std::vector<std::vector<Point>> bs_points;  // [tier][bs]
  std::vector<Point> ue_points;
  std::uint64_t fading_key = 0;
  double area_side = 0.0;

  double fading(std::size_t tier, std::size_t bs, std::size_t ue,
                std::size_t band) const;
  double fading(std::size_t tier, std::size_t bs, std::size_t ue,
                std::size_t band, std::size_t subchannel) const;
};

struct AssocEntry {
  int tier = -1;  // -1: no BS available
  int bs = -1;
  int primary_band = -1;
  double distance = 0.0;
};
using Association = std::vector<AssocEntry>;  // indexed by UE

struct Schedule {
  // assignment[tier][bs][band][subchannel] = UE index or -1
  std::vector<std::vector<std::vector<std::vector<int>>>> assignment;
  // ue_subchannel[ue][band] = subchannel or -1 (unscheduled in that band)
  std::vector<std::vector<int>> ue_subchannel;
};

struct RateEstimate {
  double mean_rate = 0.0;  // nats/s
  double std_error = 0.0;
  std::vector<double> per_iteration_means;
  int iterations_used = 0;
  int empty_iterations = 0;
};

/// Simulation-specific validation on top of validate(): integer
/// subchannel counts and a common bandwidth share per band (so the
/// subchannel grid is aligned across tiers).
ValidationReport validate_for_simulation(const NetworkConfig& config);

double distance(const Point& a, const Point& b, double area_side,
                SimParams::Boundary boundary);

NetworkRealization sample_network(const NetworkConfig& config,
                                  const SimParams& params, int iteration);

Association associate(const NetworkRealization& realization,
                      const NetworkConfig& config, const SimParams& params);

Schedule make_schedule(const NetworkRealization& realization,
                       const Association& assoc, const NetworkConfig& config,
                       const SimParams& params, int iteration);

/// Per-UE aggregated rates (nats/s); unscheduled UEs get 0.
std::vector<double> compute_rates(const NetworkRealization& realization,
                                  const Association& assoc, const Schedule& sched,
                                  const NetworkConfig& config,
                                  const SimParams& params);

RateEstimate run_monte_carlo(const NetworkConfig& config, const SimParams& params);

/// Writes one realization (points, association, schedule) as JSON.
void dump_realization(const std::string& path, const NetworkRealization& realization,
                      const Association& assoc, const Schedule& sched);

}  // namespace hetca::sim
