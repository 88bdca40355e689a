#include "hetca/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hetca/config_io.hpp"
#include "hetca/derived.hpp"
#include "hetca/rates.hpp"

namespace hetca {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct RowTask {
  double value;
  std::string deployment;
  std::string method;  // "analytic" | "mc"
};

std::string compute_row(const NetworkConfig& base, const SweepSpec& spec,
                        const sim::SimParams& sim_params, const RowTask& task,
                        std::size_t K, std::size_t M) {
  std::string row = spec.parameter + "," + fmt(task.value) + "," + task.deployment +
                    "," + task.method;
  std::vector<std::vector<double>> rate(K, std::vector<double>(M, 0.0));
  std::vector<double> cov(K, 0.0);
  std::vector<std::vector<double>> theta(K, std::vector<double>(M, 0.0));
  double total = 0.0, std_error = 0.0;
  std::string error;

  try {
    NetworkConfig cfg = base;
    apply_override(cfg, spec.parameter + "=" + fmt(task.value));
    if (!task.deployment.empty())
      cfg.deployment = DeploymentMatrix::parse(task.deployment);
    ValidationReport check = validate(cfg);
    if (!check.ok()) throw std::invalid_argument(check.to_string());

    DerivedState st = compute_derived(cfg);
    for (std::size_t k = 0; k < K; ++k) {
      cov[k] = st.per_tier[k].pi;
      for (std::size_t i = 0; i < M; ++i) theta[k][i] = st.per_band_tier[k][i].load;
    }
    if (task.method == "analytic") {
      RateReport rep = (K == 1) ? single_tier_rate(cfg) : single_flow_rate(cfg);
      total = rep.total;
      rate = rep.per_band_tier;
    } else {
      sim::RateEstimate est = sim::run_monte_carlo(cfg, sim_params);
      total = est.mean_rate;
      std_error = est.std_error;
    }
  } catch (const std::exception& e) {
    error = e.what();
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
  }

  row += "," + fmt(total) + "," + fmt(total / M_LN2);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i) row += "," + fmt(rate[k][i]);
  for (std::size_t k = 0; k < K; ++k) row += "," + fmt(cov[k]);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i) row += "," + fmt(theta[k][i]);
  row += "," + fmt(std_error) + "," + error;
  return row;
}

}  // namespace

SweepResult run_sweep(const NetworkConfig& base_config, const SweepSpec& spec,
                      const sim::SimParams& sim_params, int threads) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs a nonempty value list");
  const std::size_t K = base_config.tier_count();
  const std::size_t M = base_config.band_count();

  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());
  std::vector<std::string> deployments = spec.deployments;
  if (deployments.empty()) deployments.push_back(base_config.deployment.render());
  std::vector<std::string> methods;
  if (spec.analytic) methods.push_back("analytic");
  if (spec.monte_carlo) methods.push_back("mc");
  if (methods.empty()) throw std::invalid_argument("sweep needs at least one method");

  std::vector<RowTask> tasks;
  for (double v : values)
    for (const auto& d : deployments)
      for (const auto& m : methods) tasks.push_back({v, d, m});

  std::vector<std::string> rows(tasks.size());
  const int workers = std::max(1, threads);
  if (workers == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      rows[i] = compute_row(base_config, spec, sim_params, tasks[i], K, M);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1))
          rows[i] = compute_row(base_config, spec, sim_params, tasks[i], K, M);
      });
    for (auto& t : pool) t.join();
  }

  // Header documents units: total_rate_nats is nats/s, *_bits is bits/s.
  std::string csv = "parameter,value,deployment,method,total_rate_nats,total_rate_bits";
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i)
      csv += ",rate_nats_band" + std::to_string(i + 1) + "_tier" + std::to_string(k + 1);
  for (std::size_t k = 0; k < K; ++k) csv += ",coverage_tier" + std::to_string(k + 1);
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t i = 0; i < M; ++i)
      csv += ",load_band" + std::to_string(i + 1) + "_tier" + std::to_string(k + 1);
  csv += ",std_error,error\n";
  for (const auto& r : rows) {
    csv += r;
    csv += '\n';
  }

  nlohmann::json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["config_hash"] = fnv1a_hex(config_to_json(base_config).dump());
  manifest["seed"] = sim_params.master_seed;
  manifest["iterations"] = sim_params.iterations;
  manifest["area_side_m"] = sim_params.area_side;
  manifest["parameter"] = spec.parameter;
  manifest["values"] = values;
  manifest["deployments"] = deployments;
  manifest["methods"] = methods;

  SweepResult result;
  result.csv = std::move(csv);
  result.manifest = manifest.dump(2) + "\n";
  return result;
}

}  // namespace hetca
