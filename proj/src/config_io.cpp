#include "hetca/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hetca {
namespace {

DeploymentMatrix deployment_from_json(const nlohmann::json& j) {
  if (j.is_string()) return DeploymentMatrix::parse(j.get<std::string>());
  DeploymentMatrix m;
  m.x = j.get<std::vector<std::vector<int>>>();
  return m;
}

}  // namespace

NetworkConfig config_from_json(const nlohmann::json& j) {
  NetworkConfig c;
  for (const auto& tj : j.at("tiers")) {
    Tier t;
    t.bs_density = tj.at("bs_density").get<double>();
    t.tx_power = tj.at("tx_power_w").get<double>();
    t.bias = db_to_linear(tj.value("bias_db", 0.0));
    c.tiers.push_back(t);
  }
  for (const auto& bj : j.at("bands")) {
    Band b;
    b.bandwidth_hz = bj.at("bandwidth_hz").get<double>();
    b.path_loss_exponent = bj.at("path_loss_exponent").get<double>();
    if (bj.contains("reference_gain"))
      b.reference_gain = bj.at("reference_gain").get<double>();
    else if (bj.contains("wavelength_m"))
      b.reference_gain = Band::gain_from_wavelength(bj.at("wavelength_m").get<double>());
    else
      throw std::invalid_argument("band needs reference_gain or wavelength_m");
    c.bands.push_back(b);
  }
  c.deployment = deployment_from_json(j.at("deployment"));
  c.ue_density = j.at("ue_density").get<double>();

  const auto& bw = j.at("ue_bandwidth_share");
  if (bw.is_number())
    c.set_scalar_share(bw.get<double>());
  else
    c.bandwidth_share = bw.get<std::vector<std::vector<double>>>();

  c.noise_psd = dbm_per_hz_to_watt(j.at("noise_psd_dbm_hz").get<double>());
  c.noise_figure = db_to_linear(j.value("noise_figure_db", 0.0));
  c.interference_limited = j.value("interference_limited", false);
  return c;
}

NetworkConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

nlohmann::json config_to_json(const NetworkConfig& config) {
  nlohmann::json j;
  for (const Tier& t : config.tiers)
    j["tiers"].push_back({{"bs_density", t.bs_density},
                          {"tx_power_w", t.tx_power},
                          {"bias_db", linear_to_db(t.bias)}});
  for (const Band& b : config.bands)
    j["bands"].push_back({{"bandwidth_hz", b.bandwidth_hz},
                          {"path_loss_exponent", b.path_loss_exponent},
                          {"reference_gain", b.reference_gain}});
  j["deployment"] = config.deployment.render();
  j["ue_density"] = config.ue_density;
  j["ue_bandwidth_share"] = config.bandwidth_share;
  j["noise_psd_dbm_hz"] = 10.0 * std::log10(config.noise_psd) + 30.0;
  j["noise_figure_db"] = linear_to_db(config.noise_figure);
  j["interference_limited"] = config.interference_limited;
  return j;
}

void apply_override(NetworkConfig& config, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  auto tier_index = [&](const std::string& k, const std::string& prefix) -> int {
    // "tier[2].field" -> 1 (0-based)
    auto open = prefix.size();
    auto close = k.find(']', open);
    if (close == std::string::npos)
      throw std::invalid_argument("bad tier path: " + k);
    int idx = std::stoi(k.substr(open, close - open)) - 1;
    if (idx < 0 || idx >= static_cast<int>(config.tiers.size()))
      throw std::invalid_argument("tier index out of range in: " + k);
    return idx;
  };

  if (key.rfind("tier[", 0) == 0 || key.rfind("tiers[", 0) == 0) {
    const std::string prefix = key.rfind("tiers[", 0) == 0 ? "tiers[" : "tier[";
    int k = tier_index(key, prefix);
    auto dot = key.find("].");
    const std::string field = key.substr(dot + 2);
    double v = std::stod(value);
    if (field == "bias_db")
      config.tiers[k].bias = db_to_linear(v);
    else if (field == "tx_power_w")
      config.tiers[k].tx_power = v;
    else if (field == "bs_density")
      config.tiers[k].bs_density = v;
    else if (field == "bs_density_ratio")
      config.tiers[k].bs_density = v * config.tiers[0].bs_density;
    else
      throw std::invalid_argument("unknown tier field: " + field);
  } else if (key == "ue_density") {
    config.ue_density = std::stod(value);
  } else if (key == "ue_density_ratio") {
    config.ue_density = std::stod(value) * config.tiers[0].bs_density;
  } else if (key == "ue_bandwidth_share") {
    config.set_scalar_share(std::stod(value));
  } else if (key == "deployment") {
    config.deployment = DeploymentMatrix::parse(value);
  } else if (key == "interference_limited") {
    config.interference_limited = (value == "true" || value == "1");
  } else {
    throw std::invalid_argument("unknown override path: " + key);
  }
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace hetca
