#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hetca/config.hpp"

namespace hetca {

/// Parses the documented JSON config schema (see README / configs/).
NetworkConfig config_from_json(const nlohmann::json& j);
NetworkConfig load_config(const std::string& path);

/// Canonical JSON dump of a config; used for run-manifest hashing.
nlohmann::json config_to_json(const NetworkConfig& config);

/// Applies a dotted-path override such as "tier[2].bias_db=17" or
/// "ue_density_ratio=96". Tier indices are 1-based. Supported paths:
/// tier[k].bias_db, tier[k].tx_power_w, tier[k].bs_density,
/// tier[k].bs_density_ratio (relative to tier 1), ue_density,
/// ue_density_ratio (relative to tier 1's BS density),
/// ue_bandwidth_share, deployment, interference_limited.
void apply_override(NetworkConfig& config, const std::string& assignment);

/// FNV-1a hash of a string, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace hetca
