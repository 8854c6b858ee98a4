// Copyright 2026 The phasesim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phasesim/cli.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasesim/errors.hpp"
#include "phasesim/oracle.hpp"

namespace phasesim {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kChiSquaredSignificance = 1e-3;

struct CliConfig {
  std::string path;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 0;
  bool json = false;
  std::vector<double> epsilons;
  double tol = 1e-10;
  long long max_dense = OracleOptions{}.max_dense;
  int threads = 1;
};

std::vector<double> to_std(const RealVector& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

ordered_json audit_json(const NegativityReport& audit) {
  ordered_json j;
  j["samplable"] = audit.samplable;
  j["tol"] = audit.tol;
  ordered_json elements = ordered_json::array();
  for (const NegativityEntry& e : audit.entries) {
    ordered_json entry;
    entry["kind"] = e.kind;
    entry["index"] = e.index;
    entry["min_entry"] = e.min_entry;
    entry["negative_mass"] = e.negative_mass;
    elements.push_back(std::move(entry));
  }
  j["elements"] = std::move(elements);
  return j;
}

// Exact solve with route fallback: the phase-space chain covers every
// program the sampler can see (and negative ones); the dense route takes
// over when d^(2n) is out of reach but d^n is not.
OutcomeDistribution solve_exact(const Circuit& c, const WignerProgram& prog,
                                const OracleOptions& options,
                                std::string& method) {
  bool chain_fits = true;
  try {
    chain_fits = phase_space_size(c.d, c.n) <= options.max_chain;
  } catch (const TooLarge&) {
    chain_fits = false;  // d^(2n) overflows long long
  }
  if (chain_fits) {
    method = "wigner_chain";
    return wigner_chain_distribution(prog, options);
  }
  method = "dense";
  return dense_simulate(c, options);
}

int command_validate(const CliConfig& cfg, std::ostream& out) {
  Circuit c = parse_circuit_file(cfg.path);
  NegativityReport audit = audit_circuit(c, cfg.tol);
  out << audit_json(audit).dump(2) << "\n";
  return audit.samplable ? 0 : 2;
}

int command_sample(const CliConfig& cfg, std::ostream& out) {
  Circuit c = parse_circuit_file(cfg.path);
  CompileOptions copts;
  copts.tol = cfg.tol;
  WignerProgram prog = compile_to_wigner(c, copts);
  OutcomeCounts counts = sample_shots(prog, cfg.shots, cfg.seed, cfg.threads);
  if (cfg.json) {
    ordered_json j;
    j["d"] = prog.d;
    j["n"] = prog.n;
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    ordered_json records = ordered_json::array();
    for (const auto& [outcome, count] : counts) {
      ordered_json record;
      record["outcome"] = outcome;
      record["count"] = count;
      records.push_back(std::move(record));
    }
    j["counts"] = std::move(records);
    out << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& [outcome, count] : counts) {
    for (int k : outcome) out << k << ",";
    out << count << "\n";
  }
  return 0;
}

int command_exact(const CliConfig& cfg, std::ostream& out) {
  Circuit c = parse_circuit_file(cfg.path);
  CompileOptions copts;
  copts.tol = cfg.tol;
  OracleOptions options;
  options.max_dense = cfg.max_dense;
  WignerProgram prog = compile_to_wigner(c, copts);
  std::string method;
  OutcomeDistribution p = solve_exact(c, prog, options, method);
  ordered_json j;
  j["d"] = p.d;
  j["n"] = p.n;
  j["outcome_counts"] = p.outcome_counts;
  j["method"] = method;
  j["probabilities"] = to_std(p.probabilities);
  out << j.dump(2) << "\n";
  return 0;
}

int command_compare(const CliConfig& cfg, std::ostream& out) {
  Circuit c = parse_circuit_file(cfg.path);
  CompileOptions copts;
  copts.tol = cfg.tol;
  OracleOptions options;
  options.max_dense = cfg.max_dense;
  WignerProgram prog = compile_to_wigner(c, copts);
  OutcomeCounts counts = sample_shots(prog, cfg.shots, cfg.seed, cfg.threads);
  std::string method;
  OutcomeDistribution exact = solve_exact(c, prog, options, method);
  OutcomeDistribution empirical =
      empirical_distribution(counts, cfg.shots, prog);
  ComparisonReport distances = compare_distributions(empirical, exact);
  ChiSquaredReport chi =
      chi_squared_test(counts, cfg.shots, exact, kChiSquaredSignificance);
  ordered_json j;
  j["shots"] = cfg.shots;
  j["seed"] = cfg.seed;
  j["method"] = method;
  j["tvd"] = distances.tvd;
  j["linf"] = distances.linf;
  j["kl"] = distances.kl;
  ordered_json chij;
  chij["statistic"] = chi.statistic;
  chij["dof"] = chi.dof;
  chij["p_value"] = chi.p_value;
  chij["significance"] = kChiSquaredSignificance;
  chij["rejected"] = chi.rejected;
  j["chi_squared"] = std::move(chij);
  out << j.dump(2) << "\n";
  return 0;
}

int command_perturb(const CliConfig& cfg, std::ostream& out) {
  Circuit c = parse_circuit_file(cfg.path);
  RobustnessReport report =
      robustness_experiment(c, cfg.epsilons, cfg.seed);
  ordered_json points = ordered_json::array();
  for (const RobustnessPoint& pt : report.points) {
    ordered_json p;
    p["epsilon"] = pt.epsilon;
    p["output_linf"] = pt.output_linf;
    p["output_bound"] = pt.output_bound;
    p["output_ratio"] =
        pt.output_bound > 0.0 ? pt.output_linf / pt.output_bound : 0.0;
    p["state_linf"] = pt.state_linf;
    p["state_bound"] = pt.state_bound;
    points.push_back(std::move(p));
  }
  ordered_json j;
  j["seed"] = cfg.seed;
  j["points"] = std::move(points);
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"discrete phase-space circuit sampler and oracles", "phasesim"};
  app.require_subcommand(1);

  auto add_shared = [&cfg](CLI::App* sub) {
    sub->add_option("file", cfg.path, "circuit file")->required();
    sub->add_option("--tol", cfg.tol,
                    "positivity tolerance (entries in [-tol, 0) are dust)");
    sub->add_option("--max-dense", cfg.max_dense, "dense-oracle size cap");
    sub->add_option("--threads", cfg.threads, "sampler worker count");
  };

  CLI::App* validate =
      app.add_subcommand("validate", "audit per-element negativity");
  add_shared(validate);

  CLI::App* sample = app.add_subcommand("sample", "draw outcome samples");
  add_shared(sample);
  sample->add_option("--shots", cfg.shots, "number of samples");
  sample->add_option("--seed", cfg.seed, "sampling seed");
  sample->add_flag("--json", cfg.json, "emit a JSON summary instead of CSV");

  CLI::App* exact =
      app.add_subcommand("exact", "solve the outcome distribution exactly");
  add_shared(exact);

  CLI::App* compare =
      app.add_subcommand("compare", "sampled vs exact distribution distances");
  add_shared(compare);
  compare->add_option("--shots", cfg.shots, "number of samples");
  compare->add_option("--seed", cfg.seed, "sampling seed");

  CLI::App* perturb =
      app.add_subcommand("perturb", "bounded-error robustness experiment");
  add_shared(perturb);
  perturb->add_option("--epsilon", cfg.epsilons, "entrywise error budget")
      ->required();
  perturb->add_option("--seed", cfg.seed, "perturbation seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help() << "\n";
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (validate->parsed()) return command_validate(cfg, out);
    if (sample->parsed()) return command_sample(cfg, out);
    if (exact->parsed()) return command_exact(cfg, out);
    if (compare->parsed()) return command_compare(cfg, out);
    return command_perturb(cfg, out);
  } catch (const NotSamplable& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const TooLarge& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const SimError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace phasesim
