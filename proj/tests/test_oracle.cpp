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

#include "phasesim/oracle.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "phasesim/errors.hpp"
#include "testutil.hpp"

namespace {

using namespace phasesim;

StateSpec state_preset(const std::string& preset) {
  StateSpec s;
  s.preset = preset;
  return s;
}

PovmSpec povm_preset(const std::string& preset) {
  PovmSpec m;
  m.preset = preset;
  return m;
}

GateSpec site_gate(const std::string& type, int site) {
  GateSpec g;
  g.type = type;
  g.support = {site};
  return g;
}

Circuit empty_circuit(int d, int n) {
  Circuit c;
  c.d = d;
  c.n = n;
  c.initial.assign(static_cast<size_t>(n), state_preset("zero"));
  c.povms.assign(static_cast<size_t>(n), povm_preset("computational"));
  return c;
}

double linf_between(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  return compare_distributions(p, q).linf;
}

}  // namespace

TEST_CASE("dense oracle reproduces hand-checked outcome distributions") {
  Circuit c = empty_circuit(3, 1);
  OutcomeDistribution p = dense_simulate(c);
  CHECK(p.probabilities.size() == 3);
  CHECK(p.probabilities[0] == doctest::Approx(1.0).epsilon(1e-12));

  c.gates = {site_gate("fourier", 0)};
  p = dense_simulate(c);
  for (int k = 0; k < 3; ++k) {
    CHECK(p.probabilities[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  c.gates = {site_gate("displacement", 0)};
  c.gates[0].displacement = {1, 0};
  p = dense_simulate(c);
  CHECK(p.probabilities[1] == doctest::Approx(1.0).epsilon(1e-12));

  c.gates = {site_gate("depolarizing", 0)};
  c.gates[0].lambda = 1.0;
  p = dense_simulate(c);
  for (int k = 0; k < 3; ++k) {
    CHECK(p.probabilities[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  c.gates.clear();
  c.initial[0] = state_preset("strange");
  p = dense_simulate(c);
  CHECK(p.probabilities[0] == doctest::Approx(0.0));
  CHECK(p.probabilities[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.probabilities[2] == doctest::Approx(0.5).epsilon(1e-12));

  c.initial[0] = state_preset("plus");
  c.povms[0] = povm_preset("fourier");
  p = dense_simulate(c);
  CHECK(p.probabilities[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense oracle propagates a two-site adder") {
  Circuit c = empty_circuit(3, 2);
  GateSpec shift = site_gate("displacement", 0);
  shift.displacement = {1, 0};
  GateSpec adder;
  adder.type = "sum";
  adder.support = {0, 1};
  c.gates = {shift, adder};
  OutcomeDistribution p = dense_simulate(c);
  CHECK(p.probabilities[p.tuple_index({1, 1})] ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Reversed support adds the other way around.
  c.gates[1].support = {1, 0};
  p = dense_simulate(c);
  CHECK(p.probabilities[p.tuple_index({1, 0})] ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chain and dense oracles agree on random circuits") {
  std::mt19937_64 gen = testutil::rng(314159);
  const int configs[][2] = {{1, 0}, {1, 3}, {1, 4}, {2, 2}, {2, 4},
                            {3, 2}, {3, 3}, {3, 4}};
  for (const auto& cfg : configs) {
    for (int rep = 0; rep < 3; ++rep) {
      Circuit c = testutil::random_circuit(3, cfg[0], cfg[1], gen);
      OutcomeDistribution dense = dense_simulate(c);
      OutcomeDistribution chain =
          wigner_chain_distribution(compile_to_wigner(c));
      CHECK(linf_between(dense, chain) <= 1e-10);
      CHECK(dense.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(chain.probabilities.minCoeff() >= -1e-10);
    }
  }
  // One larger dimension to keep d from being hard-coded anywhere.
  Circuit c5 = testutil::random_circuit(5, 2, 3, gen);
  CHECK(linf_between(dense_simulate(c5),
                     wigner_chain_distribution(compile_to_wigner(c5))) <=
        1e-10);
}

TEST_CASE("oracles agree on negative programs") {
  // Negativity in the state, a gate and the chain at once.
  Circuit c = empty_circuit(3, 2);
  c.initial[0] = state_preset("strange");
  std::mt19937_64 gen = testutil::rng(77);
  GateSpec u = site_gate("unitary", 1);
  u.operators = {testutil::random_unitary(3, gen)};
  GateSpec adder;
  adder.type = "sum";
  adder.support = {1, 0};
  c.gates = {u, adder};
  c.povms[1] = povm_preset("fourier");

  WignerProgram prog = compile_to_wigner(c);
  CHECK_FALSE(prog.audit.samplable);
  CHECK(linf_between(dense_simulate(c), wigner_chain_distribution(prog)) <=
        1e-10);
}

TEST_CASE("oracles agree for every preset pairing without gates") {
  const char* states[] = {"zero", "plus", "mixed", "strange"};
  const char* povms[] = {"computational", "fourier", "trivial"};
  for (const char* s : states) {
    for (const char* m : povms) {
      Circuit c = empty_circuit(3, 1);
      c.initial[0] = state_preset(s);
      c.povms[0] = povm_preset(m);
      OutcomeDistribution dense = dense_simulate(c);
      OutcomeDistribution chain =
          wigner_chain_distribution(compile_to_wigner(c));
      CAPTURE(s);
      CAPTURE(m);
      CHECK(linf_between(dense, chain) <= 1e-10);
      CHECK(dense.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("stabilizer-only circuits stay nonnegative and exact") {
  Circuit c = empty_circuit(3, 3);
  c.initial[0] = state_preset("plus");
  c.initial[1] = state_preset("zero");
  c.initial[2].preset = "stabilizer";
  c.initial[2].basis = 1;
  c.initial[2].label = 2;
  GateSpec adder01;
  adder01.type = "sum";
  adder01.support = {0, 1};
  GateSpec adder12;
  adder12.type = "sum";
  adder12.support = {1, 2};
  GateSpec shift = site_gate("displacement", 1);
  shift.displacement = {1, 2};
  c.gates = {site_gate("fourier", 0), adder01, site_gate("phase", 2), shift,
             adder12};

  WignerProgram prog = compile_to_wigner(c);
  CHECK(prog.audit.samplable);
  for (const NegativityEntry& e : prog.audit.entries) {
    CHECK(e.min_entry >= -1e-12);
  }
  CHECK(linf_between(dense_simulate(c), wigner_chain_distribution(prog)) <=
        1e-10);
}

TEST_CASE("size caps reject oversized oracle runs") {
  Circuit c = empty_circuit(3, 2);
  OracleOptions small;
  small.max_dense = 8;
  CHECK_THROWS_AS(dense_simulate(c, small), TooLarge);
  small = OracleOptions{};
  small.max_chain = 80;
  CHECK_THROWS_AS(wigner_chain_distribution(compile_to_wigner(c), small),
                  TooLarge);
}

TEST_CASE("comparison report computes the three distances") {
  Circuit c = empty_circuit(3, 1);
  OutcomeDistribution p = dense_simulate(c);
  ComparisonReport same = compare_distributions(p, p);
  CHECK(same.linf == 0.0);
  CHECK(same.tvd == 0.0);
  CHECK(same.kl == 0.0);

  OutcomeDistribution q = p;
  q.probabilities = RealVector::Zero(3);
  q.probabilities[1] = 1.0;
  ComparisonReport disjoint = compare_distributions(p, q);
  CHECK(disjoint.linf == doctest::Approx(1.0));
  CHECK(disjoint.tvd == doctest::Approx(1.0));
  CHECK(std::isinf(disjoint.kl));

  OutcomeDistribution r = p;
  p.probabilities << 0.5, 0.5, 0.0;
  r.probabilities << 0.25, 0.75, 0.0;
  ComparisonReport close = compare_distributions(p, r);
  CHECK(close.linf == doctest::Approx(0.25));
  CHECK(close.tvd == doctest::Approx(0.25));
  CHECK(close.kl ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)));

  OutcomeDistribution other = dense_simulate(empty_circuit(3, 2));
  CHECK_THROWS_AS(compare_distributions(p, other), ShapeMismatch);
}

TEST_CASE("phase-space tables obey the trace-norm bounds") {
  std::mt19937_64 gen = testutil::rng(2718);
  for (int d : {3, 5}) {
    Dimension dim{d};
    for (int rep = 0; rep < 5; ++rep) {
      Matrix rho = testutil::random_density(d, gen);
      Matrix sigma = testutil::random_density(d, gen);
      RealVector wr = wigner_transform(rho, dim, 1).values;
      RealVector ws = wigner_transform(sigma, dim, 1).values;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(rho - sigma);
      double trace_norm = eig.eigenvalues().cwiseAbs().sum();
      CHECK((wr - ws).cwiseAbs().maxCoeff() <= trace_norm / d + 1e-12);
      CHECK(wr.cwiseAbs().maxCoeff() <= 1.0 / d + 1e-12);

      // POVM elements: table entries never exceed the operator norm.
      Matrix g = testutil::random_gaussian(d, d, gen);
      Matrix element = g * g.adjoint();
      Eigen::SelfAdjointEigenSolver<Matrix> eig_m(element);
      double op_norm = eig_m.eigenvalues().cwiseAbs().maxCoeff();
      RealVector wm = wigner_transform(element, dim, 1).values;
      CHECK(wm.cwiseAbs().maxCoeff() <= op_norm + 1e-12);
    }
  }
}

TEST_CASE("chi-squared test matches the two-degree closed form") {
  Circuit c = empty_circuit(3, 1);
  c.initial[0] = state_preset("mixed");
  OutcomeDistribution expected =
      wigner_chain_distribution(compile_to_wigner(c));

  OutcomeCounts counts;
  counts[{0}] = 1100;
  counts[{1}] = 950;
  counts[{2}] = 950;
  ChiSquaredReport rep = chi_squared_test(counts, 3000, expected, 1e-3);
  CHECK(rep.dof == 2);
  CHECK(rep.statistic == doctest::Approx(15.0).epsilon(1e-12));
  // Two degrees of freedom: survival is exactly exp(-stat / 2).
  CHECK(rep.p_value == doctest::Approx(std::exp(-7.5)).epsilon(1e-9));
  CHECK(rep.rejected);
  CHECK_FALSE(chi_squared_test(counts, 3000, expected, 1e-4).rejected);

  OutcomeCounts perfect;
  perfect[{0}] = 1000;
  perfect[{1}] = 1000;
  perfect[{2}] = 1000;
  ChiSquaredReport ok = chi_squared_test(perfect, 3000, expected, 1e-3);
  CHECK(ok.statistic == doctest::Approx(0.0));
  CHECK(ok.p_value == doctest::Approx(1.0));
  CHECK_FALSE(ok.rejected);
}

TEST_CASE("chi-squared test pools rare cells and rejects forbidden mass") {
  Circuit c = empty_circuit(3, 1);
  OutcomeDistribution point = dense_simulate(c);

  OutcomeCounts forbidden;
  forbidden[{0}] = 99990;
  forbidden[{1}] = 10;
  ChiSquaredReport rep = chi_squared_test(forbidden, 100000, point, 1e-3);
  CHECK(rep.rejected);
  CHECK(rep.p_value == 0.0);

  OutcomeDistribution skewed = point;
  skewed.probabilities << 0.998, 0.001, 0.001;
  OutcomeCounts observed;
  observed[{0}] = 998;
  observed[{1}] = 1;
  observed[{2}] = 1;
  ChiSquaredReport pooled = chi_squared_test(observed, 1000, skewed, 1e-3);
  CHECK(pooled.dof == 1);
  CHECK_FALSE(pooled.rejected);
}

TEST_CASE("perturbation mixes exactly epsilon toward uniform") {
  Circuit c = empty_circuit(3, 2);
  c.initial[0] = state_preset("plus");
  GateSpec adder;
  adder.type = "sum";
  adder.support = {0, 1};
  GateSpec noise = site_gate("depolarizing", 1);
  noise.lambda = 0.4;
  c.gates = {adder, noise};
  c.povms[1] = povm_preset("fourier");
  WignerProgram prog = compile_to_wigner(c);

  PerturbationSpec spec;
  spec.epsilon = 0.0;
  PerturbationResult zero = perturb_program(prog, spec);
  for (double dev : zero.state_deviations) CHECK(dev == 0.0);
  for (double dev : zero.kernel_deviations) CHECK(dev == 0.0);
  for (double dev : zero.povm_deviations) CHECK(dev == 0.0);
  CHECK((zero.program.site_tables[0].values - prog.site_tables[0].values)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((zero.program.kernels[0].kernel.matrix - prog.kernels[0].kernel.matrix)
            .cwiseAbs()
            .maxCoeff() == 0.0);

  spec.epsilon = 1e-3;
  PerturbationResult mixed = perturb_program(prog, spec);
  for (double dev : mixed.state_deviations) {
    CHECK(dev == doctest::Approx(1e-3).epsilon(1e-9));
  }
  for (double dev : mixed.kernel_deviations) {
    CHECK(dev == doctest::Approx(1e-3).epsilon(1e-9));
  }
  for (double dev : mixed.povm_deviations) {
    CHECK(dev == doctest::Approx(1e-3).epsilon(1e-9));
  }
  // Achieved deviation is what the tables actually moved by.
  CHECK((mixed.program.site_tables[0].values - prog.site_tables[0].values)
            .cwiseAbs()
            .maxCoeff() == doctest::Approx(1e-3).epsilon(1e-9));
  CHECK((3.0 * mixed.program.povm_tables[0].table -
         3.0 * prog.povm_tables[0].table)
            .cwiseAbs()
            .maxCoeff() == doctest::Approx(1e-3).epsilon(1e-9));

  // Normalization survives the mixing.
  CHECK(mixed.program.audit.samplable);
  for (const auto& t : mixed.program.site_tables) {
    CHECK(t.values.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.values.minCoeff() >= 0.0);
  }
  for (const auto& k : mixed.program.kernels) {
    RealVector sums = k.kernel.matrix.colwise().sum();
    CHECK(sums.minCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sums.maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.cdf.row(k.cdf.rows() - 1).minCoeff() == 1.0);
  }
  for (const auto& t : mixed.program.povm_tables) {
    RealVector sums = t.table.colwise().sum();
    CHECK(sums.minCoeff() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(sums.maxCoeff() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  OutcomeDistribution mixed_exact =
      wigner_chain_distribution(mixed.program);
  CHECK(mixed_exact.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-9));

  // Saturating epsilon lands every table exactly on uniform.
  spec.epsilon = 100.0;
  PerturbationResult flat = perturb_program(prog, spec);
  CHECK((flat.program.site_tables[0].values.array() - 1.0 / 9.0)
            .abs()
            .maxCoeff() <= 1e-14);
  CHECK((flat.program.kernels[0].kernel.matrix.array() - 1.0 / 81.0)
            .abs()
            .maxCoeff() <= 1e-14);
  CHECK((flat.program.povm_tables[0].table.array() - 1.0 / 9.0)
            .abs()
            .maxCoeff() <= 1e-14);
  CHECK(flat.state_deviations[0] ==
        doctest::Approx(
            (prog.site_tables[0].values.array() - 1.0 / 9.0).abs().maxCoeff()));

  // Targeting flags leave the untargeted elements bit-identical.
  spec.epsilon = 1e-2;
  spec.states = false;
  spec.kernels = false;
  PerturbationResult povm_only = perturb_program(prog, spec);
  CHECK(povm_only.state_deviations.empty());
  CHECK(povm_only.kernel_deviations.empty());
  CHECK((povm_only.program.site_tables[1].values -
         prog.site_tables[1].values)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((povm_only.program.kernels[1].kernel.matrix -
         prog.kernels[1].kernel.matrix)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((povm_only.program.povm_tables[0].table - prog.povm_tables[0].table)
            .cwiseAbs()
            .maxCoeff() > 0.0);
}

TEST_CASE("perturbed kernels report both matrix norms") {
  Circuit c = empty_circuit(3, 1);
  c.gates = {site_gate("fourier", 0)};
  WignerProgram prog = compile_to_wigner(c);
  PerturbationSpec spec;
  spec.epsilon = 1e-3;
  PerturbationResult mixed = perturb_program(prog, spec);
  REQUIRE(mixed.kernel_column_norm_devs.size() == 1);
  RealMatrix delta =
      (mixed.program.kernels[0].kernel.matrix - prog.kernels[0].kernel.matrix)
          .cwiseAbs();
  CHECK(mixed.kernel_column_norm_devs[0] ==
        doctest::Approx(delta.colwise().sum().maxCoeff()));
  CHECK(mixed.kernel_row_norm_devs[0] ==
        doctest::Approx(delta.rowwise().sum().maxCoeff()));
  CHECK(mixed.kernel_column_norm_devs[0] >= mixed.kernel_deviations[0]);
}

TEST_CASE("robustness experiment stays inside the linear bounds") {
  Circuit c = empty_circuit(3, 2);
  c.initial[0] = state_preset("plus");
  GateSpec adder;
  adder.type = "sum";
  adder.support = {0, 1};
  GateSpec noise = site_gate("depolarizing", 1);
  noise.lambda = 0.3;
  c.gates = {adder, site_gate("phase", 0), noise};

  RobustnessReport rep = robustness_experiment(c, {0.0, 1e-3, 1e-2}, 7);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[0].output_linf == 0.0);
  CHECK(rep.points[0].state_linf == 0.0);
  for (size_t i = 1; i < rep.points.size(); ++i) {
    const RobustnessPoint& pt = rep.points[i];
    CHECK(pt.output_bound == doctest::Approx(pt.epsilon * 7.0));
    CHECK(pt.state_bound == doctest::Approx(pt.epsilon * 5.0));
    CHECK(pt.output_linf > 0.0);
    CHECK(pt.output_linf <= pt.output_bound);
    CHECK(pt.state_linf <= pt.state_bound);
  }
  // The response is linear in epsilon up to second-order mixing terms.
  double r1 = rep.points[1].output_linf / rep.points[1].epsilon;
  double r2 = rep.points[2].output_linf / rep.points[2].epsilon;
  CHECK(r2 / r1 > 0.5);
  CHECK(r2 / r1 < 2.0);

  Circuit negative = empty_circuit(3, 1);
  negative.initial[0] = state_preset("strange");
  CHECK_THROWS_AS(robustness_experiment(negative, {1e-3}, 0), NotSamplable);
}

TEST_CASE("sampled counts converge to the exact distribution") {
  Circuit c = empty_circuit(3, 2);
  c.initial[0] = state_preset("plus");
  GateSpec adder;
  adder.type = "sum";
  adder.support = {0, 1};
  GateSpec noise = site_gate("depolarizing", 0);
  noise.lambda = 0.25;
  c.gates = {adder, noise};
  c.povms[0] = povm_preset("fourier");

  WignerProgram prog = compile_to_wigner(c);
  OutcomeDistribution exact = wigner_chain_distribution(prog);
  CHECK(linf_between(dense_simulate(c), exact) <= 1e-10);

  const std::uint64_t shots = 20000;
  OutcomeCounts counts = sample_shots(prog, shots, 11);
  OutcomeDistribution empirical = empirical_distribution(counts, shots, prog);
  CHECK(empirical.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-12));
  ComparisonReport rep = compare_distributions(empirical, exact);
  CHECK(rep.tvd <= 0.03);
  CHECK_FALSE(chi_squared_test(counts, shots, exact, 1e-3).rejected);
}

TEST_CASE("empirical distribution places counts at the right tuples") {
  Circuit c = empty_circuit(3, 2);
  WignerProgram prog = compile_to_wigner(c);
  OutcomeCounts counts;
  counts[{0, 1}] = 1;
  counts[{2, 0}] = 3;
  OutcomeDistribution emp = empirical_distribution(counts, 4, prog);
  CHECK(emp.probabilities[emp.tuple_index({0, 1})] == doctest::Approx(0.25));
  CHECK(emp.probabilities[emp.tuple_index({2, 0})] == doctest::Approx(0.75));
  CHECK(emp.probabilities.sum() == doctest::Approx(1.0));
  CHECK_THROWS_AS(emp.tuple_index({0, 3}), ShapeMismatch);
  CHECK_THROWS_AS(emp.tuple_index({0}), ShapeMismatch);
}
