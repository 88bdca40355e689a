#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace hetca {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_per_hz_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// One frequency band (component carrier).
struct Band {
  double bandwidth_hz = 0.0;        // B_i
  double path_loss_exponent = 0.0;  // alpha_i, must exceed 2
  double reference_gain = 1.0;      // C_i, path loss at unit distance

  static double gain_from_wavelength(double wavelength_m) {
    double x = wavelength_m / (4.0 * M_PI);
    return x * x;
  }
};

/// One BS tier (macro, pico, ...), a homogeneous PPP.
struct Tier {
  double bs_density = 0.0;  // lambda_k, points per m^2
  double tx_power = 0.0;    // P_k, W (band-independent)
  double bias = 1.0;        // Z_k, linear
};

/// Binary band-usage matrix x_{i,k}, stored as [tier][band].
/// Shorthand text form groups tiers by semicolons, e.g. "[1,0;0,1]"
/// means tier 1 uses band 1 only and tier 2 uses band 2 only.
struct DeploymentMatrix {
  std::vector<std::vector<int>> x;  // x[k][i]

  bool uses(std::size_t tier, std::size_t band) const { return x[tier][band] != 0; }
  std::size_t tier_count() const { return x.size(); }
  std::size_t band_count() const { return x.empty() ? 0 : x[0].size(); }

  static DeploymentMatrix parse(const std::string& shorthand);
  std::string render() const;

  bool operator==(const DeploymentMatrix& o) const { return x == o.x; }
};

struct NetworkConfig {
  std::vector<Tier> tiers;
  std::vector<Band> bands;
  DeploymentMatrix deployment;
  double ue_density = 0.0;                            // lambda^(u)
  std::vector<std::vector<double>> bandwidth_share;   // b_{i,k}, stored [tier][band]
  double noise_psd = 0.0;                             // N_0, W/Hz
  double noise_figure = 1.0;                          // linear multiplier on N_0
  bool interference_limited = false;

  std::size_t tier_count() const { return tiers.size(); }
  std::size_t band_count() const { return bands.size(); }
  double share(std::size_t tier, std::size_t band) const { return bandwidth_share[tier][band]; }

  /// Replicates a single scalar b over every (tier, band) pair.
  void set_scalar_share(double b);

  /// Effective noise term w_{i,k} = b_{i,k} N_0 NF / C_i, or 0 when
  /// the interference-limited flag is set.
  double noise_term(std::size_t tier, std::size_t band) const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

ValidationReport validate(const NetworkConfig& config);

/// Index of the minimum-alpha band among the bands tier k uses;
/// ties broken by lowest band index.
std::size_t k_star(const NetworkConfig& config, std::size_t tier);

}  // namespace hetca
