// hetca command-line front end.
//
// Subcommands: rate, sweep, validate, compare-deployments, dump-derived.
// Exit codes: 0 success, 1 validation failure, 2 numerical failure,
// 3 I/O failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetca/config_io.hpp"
#include "hetca/derived.hpp"
#include "hetca/rates.hpp"
#include "hetca/sim/simulator.hpp"
#include "hetca/sweep.hpp"

using namespace hetca;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string config_path;
  std::string method = "analytic";
  std::uint64_t seed = 1;
  int iterations = 100;
  double area_km = 20.0;
  std::string out_path;
  std::vector<std::string> overrides;
  std::string units = "nats";
  int threads = 1;
  std::string boundary = "toroidal";
  std::string scheduling = "competition";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_config = true) {
  auto* cfg = cmd->add_option("--config", o.config_path, "config JSON path");
  if (needs_config) cfg->required();
  cmd->add_option("--method", o.method, "analytic|mc|both")
      ->check(CLI::IsMember({"analytic", "mc", "both"}));
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--iterations", o.iterations, "monte carlo iterations");
  cmd->add_option("--area-km", o.area_km, "simulation area side, km");
  cmd->add_option("--out", o.out_path, "output file (default stdout)");
  cmd->add_option("--set", o.overrides, "config override, e.g. tier[2].bias_db=17")
      ->take_all();
  cmd->add_option("--units", o.units, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--boundary", o.boundary, "toroidal|large-area")
      ->check(CLI::IsMember({"toroidal", "large-area"}));
  cmd->add_option("--scheduling", o.scheduling,
                  "competition (snapshot subchannel contention) or mean-field "
                  "(model-faithful thinning, for validating the analytic path)")
      ->check(CLI::IsMember({"competition", "mean-field"}));
}

NetworkConfig load_and_override(const CommonOpts& o) {
  NetworkConfig c = load_config(o.config_path);
  for (const auto& s : o.overrides) apply_override(c, s);
  return c;
}

sim::SimParams make_sim_params(const CommonOpts& o) {
  sim::SimParams p;
  p.area_side = o.area_km * 1000.0;
  p.iterations = o.iterations;
  p.master_seed = o.seed;
  p.threads = o.threads;
  p.boundary = o.boundary == "toroidal" ? sim::SimParams::Boundary::Toroidal
                                        : sim::SimParams::Boundary::LargeArea;
  p.scheduling = o.scheduling == "mean-field"
                     ? sim::SimParams::Scheduling::MeanField
                     : sim::SimParams::Scheduling::Competition;
  return p;
}

void write_output(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path);
  if (!out) throw std::ios_base::failure("cannot open " + o.out_path + " for writing");
  out << text;
  if (!out) throw std::ios_base::failure("write to " + o.out_path + " failed");
}

double in_units(double nats, const std::string& units) {
  return units == "bits" ? nats / M_LN2 : nats;
}

int cmd_rate(const CommonOpts& o) {
  NetworkConfig c = load_and_override(o);
  ValidationReport check = validate(c);
  if (!check.ok()) {
    std::cerr << "invalid config:\n" << check.to_string();
    return kExitValidation;
  }
  nlohmann::json out;
  out["units"] = o.units + "/s";
  out["config_hash"] = fnv1a_hex(config_to_json(c).dump());

  if (o.method == "analytic" || o.method == "both") {
    RateReport r = c.tier_count() == 1 ? single_tier_rate(c) : single_flow_rate(c);
    nlohmann::json j;
    j["method"] = r.method;
    j["total"] = in_units(r.total, o.units);
    for (std::size_t k = 0; k < c.tier_count(); ++k)
      for (std::size_t i = 0; i < c.band_count(); ++i)
        if (c.deployment.uses(k, i))
          j["per_band_tier"]["band" + std::to_string(i + 1) + "_tier" +
                             std::to_string(k + 1)] =
              in_units(r.per_band_tier[k][i], o.units);
    out["analytic"] = j;
  }
  if (o.method == "mc" || o.method == "both") {
    sim::SimParams p = make_sim_params(o);
    sim::RateEstimate est = sim::run_monte_carlo(c, p);
    nlohmann::json j;
    j["method"] = "monte-carlo";
    j["total"] = in_units(est.mean_rate, o.units);
    j["std_error"] = in_units(est.std_error, o.units);
    j["iterations_used"] = est.iterations_used;
    j["empty_iterations"] = est.empty_iterations;
    j["seed"] = o.seed;
    j["area_side_m"] = p.area_side;
    out["monte_carlo"] = j;
  }
  write_output(o, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_validate(const CommonOpts& o) {
  NetworkConfig c = load_and_override(o);
  ValidationReport model = validate(c);
  ValidationReport sim_check = sim::validate_for_simulation(c);
  if (o.iterations < 1)
    sim_check.violations.push_back("iterations must be >= 1");
  if (model.ok() && sim_check.ok()) {
    std::cout << "config ok: " << c.tier_count() << " tier(s), " << c.band_count()
              << " band(s), deployment " << c.deployment.render() << "\n";
    return kExitOk;
  }
  std::cerr << (model.ok() ? sim_check : model).to_string();
  return kExitValidation;
}

int cmd_dump_derived(const CommonOpts& o) {
  NetworkConfig c = load_and_override(o);
  ValidationReport check = validate(c);
  if (!check.ok()) {
    std::cerr << "invalid config:\n" << check.to_string();
    return kExitValidation;
  }
  DerivedState st = compute_derived(c);
  std::ostringstream out;
  out << "tier  coverage      mean_users  k_star_band\n";
  for (std::size_t k = 0; k < c.tier_count(); ++k) {
    char line[96];
    std::snprintf(line, sizeof(line), "%4zu  %-12.6g  %-10.4g  %zu\n", k + 1,
                  st.per_tier[k].pi, st.per_tier[k].mean_users,
                  st.per_tier[k].k_star + 1);
    out << line;
  }
  out << "\ntier  band  load        admission   noise_w\n";
  for (std::size_t k = 0; k < c.tier_count(); ++k)
    for (std::size_t i = 0; i < c.band_count(); ++i) {
      if (!c.deployment.uses(k, i)) continue;
      char line[96];
      std::snprintf(line, sizeof(line), "%4zu  %4zu  %-10.6g  %-10.6g  %.6g\n",
                    k + 1, i + 1, st.per_band_tier[k][i].load,
                    st.per_band_tier[k][i].admission, st.per_band_tier[k][i].noise);
      out << line;
    }
  write_output(o, out.str());
  return kExitOk;
}

int cmd_compare(const CommonOpts& o) {
  NetworkConfig c = load_and_override(o);
  ValidationReport check = validate(c);
  if (!check.ok()) {
    std::cerr << "invalid config:\n" << check.to_string();
    return kExitValidation;
  }
  DeploymentComparison cmp = deployment_comparison(c);
  nlohmann::json out;
  out["units"] = o.units + "/s";
  out["rate_1_band_K_tier"] = in_units(cmp.rate_1_band_K_tier, o.units);
  out["rate_K_band_1_tier"] = in_units(cmp.rate_K_band_1_tier, o.units);
  out["rate_K_K_orthogonal"] = in_units(cmp.rate_K_K_orthogonal, o.units);
  out["rate_K_K_cochannel"] = in_units(cmp.rate_K_K_cochannel, o.units);
  out["density_ratio"] = cmp.density_ratio;
  write_output(o, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const CommonOpts& o, const SweepSpec& spec_in) {
  NetworkConfig c = load_and_override(o);
  ValidationReport check = validate(c);
  if (!check.ok()) {
    std::cerr << "invalid config:\n" << check.to_string();
    return kExitValidation;
  }
  SweepSpec spec = spec_in;
  spec.analytic = o.method == "analytic" || o.method == "both";
  spec.monte_carlo = o.method == "mc" || o.method == "both";
  SweepResult r = run_sweep(c, spec, make_sim_params(o), o.threads);
  write_output(o, r.csv);
  if (!o.out_path.empty()) {
    std::ofstream mf(o.out_path + ".manifest.json");
    if (!mf)
      throw std::ios_base::failure("cannot open " + o.out_path + ".manifest.json");
    mf << r.manifest;
  } else {
    std::cerr << r.manifest;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-band multi-tier cellular rate analysis and simulation"};
  app.require_subcommand(1);

  CommonOpts rate_o, sweep_o, validate_o, compare_o, derived_o;
  SweepSpec spec;

  auto* rate_cmd = app.add_subcommand("rate", "mean user rate for one config");
  add_common(rate_cmd, rate_o);

  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
  add_common(sweep_cmd, sweep_o);
  sweep_cmd->add_option("--param", spec.parameter, "override path to sweep")->required();
  sweep_cmd->add_option("--values", spec.values, "swept values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--deployments", spec.deployments,
                        "deployment shorthands, e.g. [1,0;0,1]")
      ->delimiter(' ');

  auto* validate_cmd = app.add_subcommand("validate", "check a config file");
  add_common(validate_cmd, validate_o);

  auto* compare_cmd =
      app.add_subcommand("compare-deployments", "canonical deployment comparison");
  add_common(compare_cmd, compare_o);

  auto* derived_cmd =
      app.add_subcommand("dump-derived", "coverage, load, admission tables");
  add_common(derived_cmd, derived_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (rate_cmd->parsed()) return cmd_rate(rate_o);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_o, spec);
    if (validate_cmd->parsed()) return cmd_validate(validate_o);
    if (compare_cmd->parsed()) return cmd_compare(compare_o);
    if (derived_cmd->parsed()) return cmd_dump_derived(derived_o);
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config parse failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
