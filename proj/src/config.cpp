#include "hetca/config.hpp"

#include <sstream>
#include <stdexcept>

namespace hetca {

DeploymentMatrix DeploymentMatrix::parse(const std::string& shorthand) {
  std::string s = shorthand;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("deployment shorthand must be bracketed, e.g. [1,0;0,1]");
  s = s.substr(1, s.size() - 2);

  DeploymentMatrix m;
  std::stringstream tiers(s);
  std::string tier_part;
  while (std::getline(tiers, tier_part, ';')) {
    std::vector<int> row;
    std::stringstream cells(tier_part);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      // trim spaces
      std::size_t a = cell.find_first_not_of(" \t");
      std::size_t b = cell.find_last_not_of(" \t");
      if (a == std::string::npos)
        throw std::invalid_argument("empty cell in deployment shorthand");
      cell = cell.substr(a, b - a + 1);
      if (cell == "0")
        row.push_back(0);
      else if (cell == "1")
        row.push_back(1);
      else
        throw std::invalid_argument("deployment entries must be 0 or 1, got '" + cell + "'");
    }
    if (row.empty()) throw std::invalid_argument("empty tier row in deployment shorthand");
    m.x.push_back(std::move(row));
  }
  if (m.x.empty()) throw std::invalid_argument("empty deployment shorthand");
  for (const auto& row : m.x)
    if (row.size() != m.x[0].size())
      throw std::invalid_argument("ragged deployment shorthand");
  return m;
}

std::string DeploymentMatrix::render() const {
  std::string out = "[";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k) out += ';';
    for (std::size_t i = 0; i < x[k].size(); ++i) {
      if (i) out += ',';
      out += x[k][i] ? '1' : '0';
    }
  }
  out += ']';
  return out;
}

void NetworkConfig::set_scalar_share(double b) {
  bandwidth_share.assign(tiers.size(), std::vector<double>(bands.size(), b));
}

double NetworkConfig::noise_term(std::size_t tier, std::size_t band) const {
  if (interference_limited) return 0.0;
  return share(tier, band) * noise_psd * noise_figure / bands[band].reference_gain;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "pass";
  std::string s;
  for (const auto& v : violations) {
    s += v;
    s += '\n';
  }
  return s;
}

ValidationReport validate(const NetworkConfig& config) {
  ValidationReport report;
  auto fail = [&](const std::string& msg) { report.violations.push_back(msg); };

  const std::size_t K = config.tier_count();
  const std::size_t M = config.band_count();
  if (K == 0) fail("at least one tier required");
  if (M == 0) fail("at least one band required");

  for (std::size_t i = 0; i < M; ++i) {
    const Band& b = config.bands[i];
    if (!(b.bandwidth_hz > 0)) fail("band " + std::to_string(i + 1) + ": bandwidth must be positive");
    if (!(b.path_loss_exponent > 2))
      fail("band " + std::to_string(i + 1) + ": path-loss exponent must exceed 2");
    if (!(b.reference_gain > 0)) fail("band " + std::to_string(i + 1) + ": reference gain must be positive");
  }
  for (std::size_t k = 0; k < K; ++k) {
    const Tier& t = config.tiers[k];
    if (!(t.bs_density > 0)) fail("tier " + std::to_string(k + 1) + ": BS density must be positive");
    if (!(t.tx_power > 0)) fail("tier " + std::to_string(k + 1) + ": transmit power must be positive");
    if (!(t.bias > 0)) fail("tier " + std::to_string(k + 1) + ": bias must be positive");
  }

  if (config.deployment.tier_count() != K || config.deployment.band_count() != M) {
    fail("deployment matrix dimensions do not match tier/band counts");
    return report;  // indexed checks below would be out of bounds
  }
  if (config.bandwidth_share.size() != K ||
      (K > 0 && config.bandwidth_share[0].size() != M)) {
    fail("bandwidth share matrix dimensions do not match tier/band counts");
    return report;
  }

  // Assumption: every band used by >= 1 tier, every tier uses >= 1 band.
  for (std::size_t i = 0; i < M; ++i) {
    bool used = false;
    for (std::size_t k = 0; k < K; ++k) used = used || config.deployment.uses(k, i);
    if (!used) fail("band " + std::to_string(i + 1) + " is not used by any tier");
  }
  for (std::size_t k = 0; k < K; ++k) {
    bool uses = false;
    for (std::size_t i = 0; i < M; ++i) uses = uses || config.deployment.uses(k, i);
    if (!uses) fail("tier " + std::to_string(k + 1) + " does not use any band");
  }

  if (!(config.ue_density > 0)) fail("UE density must be positive");
  if (config.noise_psd < 0) fail("noise PSD must be nonnegative");
  if (!(config.noise_figure > 0)) fail("noise figure must be positive");

  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i)
      if (config.deployment.uses(k, i)) {
        double b = config.share(k, i);
        if (!(b > 0 && b <= config.bands[i].bandwidth_hz))
          fail("bandwidth share b(" + std::to_string(i + 1) + "," + std::to_string(k + 1) +
               ") must lie in (0, B_i]");
      }

  return report;
}

std::size_t k_star(const NetworkConfig& config, std::size_t tier) {
  std::size_t best = config.band_count();
  double best_alpha = 0.0;
  for (std::size_t i = 0; i < config.band_count(); ++i) {
    if (!config.deployment.uses(tier, i)) continue;
    double a = config.bands[i].path_loss_exponent;
    if (best == config.band_count() || a < best_alpha) {
      best = i;
      best_alpha = a;
    }
  }
  if (best == config.band_count())
    throw std::logic_error("tier uses no band (config not validated?)");
  return best;
}

}  // namespace hetca
