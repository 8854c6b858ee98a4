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

#pragma once

#include <cstdint>

#include "phasesim/sampler.hpp"

namespace phasesim {

// Exact joint outcome distribution, indexed site-major: the tuple
// (k_1, ..., k_n) sits at sum_l k_l * prod_{l' > l} K_{l'}.
struct OutcomeDistribution {
  int d = 0;
  int n = 0;
  std::vector<int> outcome_counts;  // K_l per site
  RealVector probabilities;

  long long tuple_index(const OutcomeTuple& outcome) const;
};

struct OracleOptions {
  // dense_simulate evolves a d^n x d^n density matrix.
  long long max_dense = 2187;  // 3^7
  // wigner_chain_distribution propagates a d^(2n) phase-space vector.
  long long max_chain = 6561;  // 3^8
};

// Evolves the full density matrix through every gate's Kraus operators and
// contracts each site against its POVM elements: the brute-force ground
// truth that never touches phase space.
OutcomeDistribution dense_simulate(const Circuit& c,
                                   const OracleOptions& options = {});

// The joint W after all kernels, on the full d^(2n) phase space: the kron of
// the site tables pushed through apply_kernel_full gate by gate. Exact for
// negative programs too.
WignerTensor propagate_chain(const WignerProgram& prog,
                             const OracleOptions& options = {});

// Contracts the propagated chain with the POVM tables (one factor of d per
// site). Agrees with dense_simulate within 1e-10 whether or not the program
// is samplable; the cross-oracle tests lean on exactly that.
OutcomeDistribution wigner_chain_distribution(const WignerProgram& prog,
                                              const OracleOptions& options = {});

// Empirical distribution over the program's outcome space.
OutcomeDistribution empirical_distribution(const OutcomeCounts& counts,
                                           std::uint64_t shots,
                                           const WignerProgram& prog);

struct ComparisonReport {
  double linf = 0.0;  // max-abs difference
  double tvd = 0.0;   // half the L1 difference
  double kl = 0.0;    // KL(P || Q); +inf where undefined
};

ComparisonReport compare_distributions(const OutcomeDistribution& p,
                                       const OutcomeDistribution& q);

// Pearson chi-squared goodness-of-fit of observed counts against an exact
// distribution. Cells with expected count below 5 are pooled; the p-value
// comes from the regularized upper incomplete gamma function.
struct ChiSquaredReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  bool rejected = false;
};

ChiSquaredReport chi_squared_test(const OutcomeCounts& counts,
                                  std::uint64_t shots,
                                  const OutcomeDistribution& expected,
                                  double significance);

// Mixes targeted elements toward their uniform counterparts,
// X' = (1 - lambda) X + lambda U, with lambda set per element so the
// entrywise deviation of the probability-normalized object (site table,
// kernel, d*T) is exactly min(epsilon, largest achievable). Mixing keeps
// every element a valid distribution / stochastic kernel / POVM table.
struct PerturbationSpec {
  double epsilon = 0.0;
  bool states = true;
  bool kernels = true;
  bool povms = true;
  // Part of the interface for forward compatibility; the uniform-mixing
  // construction is deterministic and does not consume randomness.
  std::uint64_t seed = 0;
};

struct PerturbationResult {
  WignerProgram program;
  std::vector<double> state_deviations;        // per site, max-abs achieved
  std::vector<double> kernel_deviations;       // per gate, entrywise
  std::vector<double> kernel_column_norm_devs; // per gate, max column abs sum
  std::vector<double> kernel_row_norm_devs;    // per gate, max row abs sum
  std::vector<double> povm_deviations;         // per site, on d*T
};

PerturbationResult perturb_program(const WignerProgram& prog,
                                   const PerturbationSpec& spec);

// For each epsilon: perturb every element, evaluate both programs exactly,
// and compare against the explicit linear-error bounds.
struct RobustnessPoint {
  double epsilon = 0.0;
  double output_linf = 0.0;       // ||P - P'||_inf
  double output_bound = 0.0;      // epsilon * (t + 2n)
  double state_linf = 0.0;        // sup_r |W_t(r) - W'_t(r)|
  double state_bound = 0.0;       // epsilon * (t + n)
};

struct RobustnessReport {
  std::vector<RobustnessPoint> points;
};

RobustnessReport robustness_experiment(const Circuit& c,
                                       const std::vector<double>& epsilons,
                                       std::uint64_t seed,
                                       const OracleOptions& options = {});

}  // namespace phasesim
