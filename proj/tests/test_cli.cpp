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
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "phasesim/oracle.hpp"

namespace {

using namespace phasesim;

const std::string kCircuits = PHASESIM_CIRCUITS_DIR;

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/phasesim_cli_" + name;
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("validate reports the audit and the samplability exit code") {
  CliResult good = cli({"validate", kCircuits + "/depolarizing_line.json"});
  CHECK(good.code == 0);
  nlohmann::json j = nlohmann::json::parse(good.out);
  CHECK(j.at("samplable").get<bool>());
  CHECK(j.at("elements").size() == 7);  // 2 states, 3 gates, 2 povms

  CliResult bad = cli({"validate", kCircuits + "/strange_state.json"});
  CHECK(bad.code == 2);
  nlohmann::json jb = nlohmann::json::parse(bad.out);
  CHECK_FALSE(jb.at("samplable").get<bool>());
  bool found = false;
  for (const auto& e : jb.at("elements")) {
    if (e.at("kind") == "state" && e.at("min_entry").get<double>() < -0.3) {
      found = true;
    }
  }
  CHECK(found);

  CliResult unitary =
      cli({"validate", kCircuits + "/random_unitary_gate.json"});
  CHECK(unitary.code == 2);
  nlohmann::json ju = nlohmann::json::parse(unitary.out);
  bool gate_flagged = false;
  for (const auto& e : ju.at("elements")) {
    if (e.at("kind") == "gate" && e.at("min_entry").get<double>() < -1e-6) {
      gate_flagged = true;
    }
  }
  CHECK(gate_flagged);
}

TEST_CASE("sample output is deterministic and thread-count independent") {
  const std::string file = kCircuits + "/depolarizing_line.json";
  CliResult a = cli({"sample", file, "--shots", "5000", "--seed", "11"});
  CliResult b = cli({"sample", file, "--shots", "5000", "--seed", "11"});
  CliResult c = cli({"sample", file, "--shots", "5000", "--seed", "11",
                     "--threads", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  CliResult other = cli({"sample", file, "--shots", "5000", "--seed", "12"});
  CHECK(other.out != a.out);

  // CSV rows are "k_1,...,k_n,count" and the counts add up to the shots.
  std::istringstream lines(a.out);
  std::string line;
  std::uint64_t total = 0;
  while (std::getline(lines, line)) {
    size_t first = line.find(',');
    size_t last = line.rfind(',');
    REQUIRE(first != std::string::npos);
    REQUIRE(first != last);
    total += std::stoull(line.substr(last + 1));
  }
  CHECK(total == 5000);
}

TEST_CASE("sample emits a JSON summary on request") {
  CliResult r = cli({"sample", kCircuits + "/ghz_line.json", "--shots", "300",
                     "--seed", "5", "--json"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("d") == 3);
  CHECK(j.at("n") == 3);
  CHECK(j.at("seed") == 5);
  std::uint64_t total = 0;
  for (const auto& record : j.at("counts")) {
    CHECK(record.at("outcome").size() == 3);
    total += record.at("count").get<std::uint64_t>();
  }
  CHECK(total == 300);
}

TEST_CASE("exact matches the library oracle and solves negative circuits") {
  for (const std::string name :
       {"shift_mixture.json", "strange_state.json",
        "random_unitary_gate.json"}) {
    CliResult r = cli({"exact", kCircuits + "/" + name});
    CAPTURE(name);
    CHECK(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    Circuit c = parse_circuit_file(kCircuits + "/" + name);
    OutcomeDistribution dense = dense_simulate(c);
    REQUIRE(j.at("probabilities").size() ==
            static_cast<size_t>(dense.probabilities.size()));
    double sum = 0.0;
    for (size_t i = 0; i < j.at("probabilities").size(); ++i) {
      double p = j.at("probabilities")[i].get<double>();
      CHECK(p == doctest::Approx(dense.probabilities[i]).epsilon(1e-10));
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("compare reports sampling distances on a shipped circuit") {
  CliResult r = cli({"compare", kCircuits + "/depolarizing_line.json",
                     "--shots", "100000", "--seed", "7"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("tvd").get<double>() <= 0.02);
  CHECK_FALSE(j.at("chi_squared").at("rejected").get<bool>());
  CHECK(j.at("shots") == 100000);
}

TEST_CASE("perturb reports bounded deviations per epsilon") {
  Circuit c = parse_circuit_file(kCircuits + "/ghz_line.json");
  const int t = c.num_gates();
  const int n = c.n;
  CliResult r = cli({"perturb", kCircuits + "/ghz_line.json", "--epsilon",
                     "1e-3", "--epsilon", "1e-2", "--seed", "3"});
  CHECK(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("points").size() == 2);
  for (const auto& pt : j.at("points")) {
    double epsilon = pt.at("epsilon").get<double>();
    CHECK(pt.at("output_bound").get<double>() ==
          doctest::Approx(epsilon * (t + 2 * n)));
    CHECK(pt.at("output_linf").get<double>() <=
          pt.at("output_bound").get<double>());
    CHECK(pt.at("state_linf").get<double>() <=
          pt.at("state_bound").get<double>());
    CHECK(pt.at("output_ratio").get<double>() <= 1.0);
  }
}

TEST_CASE("sampled accuracy improves with the shot budget") {
  // Median TVD over five seeds must not increase as shots grow tenfold.
  // This circuit populates all nine outcomes, so the five-draw median sits
  // well inside each decade's sqrt(10) separation.
  Circuit c = parse_circuit_file(kCircuits + "/depolarizing_line.json");
  WignerProgram prog = compile_to_wigner(c);
  OutcomeDistribution exact = wigner_chain_distribution(prog);
  std::vector<double> medians;
  for (std::uint64_t shots : {1000ULL, 10000ULL, 100000ULL}) {
    std::vector<double> tvds;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      OutcomeCounts counts = sample_shots(prog, shots, seed);
      OutcomeDistribution emp = empirical_distribution(counts, shots, prog);
      tvds.push_back(compare_distributions(emp, exact).tvd);
    }
    std::sort(tvds.begin(), tvds.end());
    medians.push_back(tvds[2]);
  }
  CHECK(medians[1] <= medians[0]);
  CHECK(medians[2] <= medians[1]);
}

TEST_CASE("cli rejects bad invocations with exit 3") {
  CHECK(cli({"sample", "/nonexistent/file.json"}).code == 3);
  CHECK(cli({"frobnicate", "x.json"}).code == 3);
  CHECK(cli({}).code == 3);
  CHECK(cli({"sample", kCircuits + "/ghz_line.json", "--bogus"}).code == 3);
  CHECK(cli({"perturb", kCircuits + "/ghz_line.json"}).code == 3);

  std::string malformed = write_temp("bad.json", "{\"format\": 2}");
  CHECK(cli({"validate", malformed}).code == 3);

  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("sample") != std::string::npos);
}

TEST_CASE("cli surfaces sampling and size-cap failures") {
  CHECK(cli({"sample", kCircuits + "/strange_state.json", "--shots", "10"})
            .code == 2);
  CHECK(cli({"compare", kCircuits + "/strange_state.json", "--shots", "10"})
            .code == 2);
  CHECK(cli({"perturb", kCircuits + "/strange_state.json", "--epsilon",
             "1e-3"})
            .code == 2);

  // Eight sites: both exact routes blow their default caps.
  Circuit wide;
  wide.d = 3;
  wide.n = 8;
  StateSpec zero;
  zero.preset = "zero";
  PovmSpec comp;
  comp.preset = "computational";
  wide.initial.assign(8, zero);
  wide.povms.assign(8, comp);
  std::string path = write_temp("wide.json", serialize_circuit(wide));
  CHECK(cli({"exact", path}).code == 4);
  // Sampling eight sites is still fine; only the oracles are capped.
  CHECK(cli({"sample", path, "--shots", "10"}).code == 0);
}
