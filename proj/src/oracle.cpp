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
#include <limits>
#include <string>

#include "phasesim/errors.hpp"

namespace phasesim {
namespace {

constexpr double kImagResidueTol = 1e-9;

// Applies `op` (d^m x d^m) to the row index digits `support` of `rho`
// (d^n x d^n): the row-side half of K rho K^dagger.
Matrix apply_on_row_sites(const Matrix& op, const Matrix& rho,
                          const std::vector<int>& support, int d, int n) {
  const std::vector<long long> sup =
      position_offsets(d, n, support);
  const std::vector<long long> rest =
      position_offsets(d, n, complement_positions(n, support));
  const long long dm = static_cast<long long>(sup.size());
  Matrix out(rho.rows(), rho.cols());
  Matrix gathered(dm, rho.cols());
  for (long long r = 0; r < static_cast<long long>(rest.size()); ++r) {
    for (long long s = 0; s < dm; ++s) {
      gathered.row(s) = rho.row(rest[r] + sup[s]);
    }
    Matrix mapped = op * gathered;
    for (long long s = 0; s < dm; ++s) {
      out.row(rest[r] + sup[s]) = mapped.row(s);
    }
  }
  return out;
}

Matrix apply_kraus_on_sites(const std::vector<Matrix>& kraus,
                            const Matrix& rho, const std::vector<int>& support,
                            int d, int n) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& k : kraus) {
    Matrix half = apply_on_row_sites(k, rho, support, d, n);
    // (K rho) K^dagger == (conj(K) (K rho)^T)^T on the support sites.
    out += apply_on_row_sites(k.conjugate(), half.transpose(), support, d, n)
               .transpose();
  }
  return out;
}

std::vector<int> outcome_space(const WignerProgram& prog) {
  std::vector<int> counts;
  counts.reserve(prog.povm_tables.size());
  for (const PovmWignerTable& t : prog.povm_tables) {
    counts.push_back(t.num_outcomes());
  }
  return counts;
}

// Regularized upper incomplete gamma Q(a, x) by power series (x < a + 1)
// or Lentz continued fraction; the chi-squared p-value is Q(dof/2, x/2).
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 1.0;
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    double series = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    return 1.0 - series;
  }
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double den = 1.0 / b;
  double h = den;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    den = an * den + b;
    if (std::abs(den) < tiny) den = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    den = 1.0 / den;
    double delta = den * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// One uniform-mixing step: X' = (1 - lambda) X + lambda * uniform, with the
// achieved entrywise deviation reported. `scale` converts the stored object
// to its probability-normalized form (POVM tables store T, deviations are
// measured on d*T).
template <typename Dense>
double mix_toward_uniform(Dense& x, double uniform_value, double epsilon,
                          double scale) {
  const double max_dev =
      (scale * x.array() - uniform_value).abs().maxCoeff();
  if (max_dev <= 0.0 || epsilon <= 0.0) return 0.0;
  const double lambda = std::min(1.0, epsilon / max_dev);
  x = (1.0 - lambda) * x +
      (lambda * uniform_value / scale) * Dense::Ones(x.rows(), x.cols());
  return lambda * max_dev;
}

}  // namespace

long long OutcomeDistribution::tuple_index(const OutcomeTuple& outcome) const {
  if (static_cast<int>(outcome.size()) != n) {
    throw ShapeMismatch("outcome tuple has " +
                        std::to_string(outcome.size()) + " entries, expected " +
                        std::to_string(n));
  }
  long long index = 0;
  for (int l = 0; l < n; ++l) {
    const int k = outcome[static_cast<size_t>(l)];
    if (k < 0 || k >= outcome_counts[static_cast<size_t>(l)]) {
      throw ShapeMismatch("outcome label " + std::to_string(k) +
                          " is out of range for site " + std::to_string(l));
    }
    index = index * outcome_counts[static_cast<size_t>(l)] + k;
  }
  return index;
}

OutcomeDistribution dense_simulate(const Circuit& c,
                                   const OracleOptions& options) {
  const Dimension dim{c.d};
  const int d = c.d;
  const int n = c.n;
  const long long dn = int_pow(d, n);
  if (dn > options.max_dense) {
    throw TooLarge("dense simulation needs a " + std::to_string(dn) + " x " +
                   std::to_string(dn) + " density matrix, above the cap of " +
                   std::to_string(options.max_dense));
  }

  Matrix rho = state_density(c.initial[0], dim);
  for (int l = 1; l < n; ++l) {
    rho = kron<Matrix>(rho, state_density(c.initial[static_cast<size_t>(l)], dim));
  }

  for (const GateSpec& g : c.gates) {
    std::vector<Matrix> kraus = kraus_operators(gate_channel(g, dim), dim);
    rho = apply_kraus_on_sites(kraus, rho, g.support, d, n);
  }

  // Interleave rho into one d^2-extent axis per site, then contract each
  // axis with C[k, x*d + y] = M_k(y, x): what remains is the joint
  // probability tensor over outcome tuples.
  Vector t = interleave_operator(rho, d, n);
  std::vector<int> extents(static_cast<size_t>(n), d * d);
  OutcomeDistribution out;
  out.d = d;
  out.n = n;
  for (int l = 0; l < n; ++l) {
    std::vector<Matrix> elements =
        povm_elements(c.povms[static_cast<size_t>(l)], dim);
    const int num_outcomes = static_cast<int>(elements.size());
    Matrix contraction(num_outcomes, d * d);
    for (int k = 0; k < num_outcomes; ++k) {
      for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
          contraction(k, x * d + y) = elements[static_cast<size_t>(k)](y, x);
        }
      }
    }
    t = apply_to_axis<Complex>(contraction, t, l, extents);
    out.outcome_counts.push_back(num_outcomes);
  }

  const double residue = t.imag().cwiseAbs().maxCoeff();
  if (residue > kImagResidueTol) {
    throw ImagResidueTooLarge("outcome probabilities have imaginary part " +
                              std::to_string(residue));
  }
  out.probabilities = t.real();
  return out;
}

WignerTensor propagate_chain(const WignerProgram& prog,
                             const OracleOptions& options) {
  const long long points = phase_space_size(prog.d, prog.n);
  if (points > options.max_chain) {
    throw TooLarge("chain evaluation needs a length-" +
                   std::to_string(points) + " tensor, above the cap of " +
                   std::to_string(options.max_chain));
  }
  WignerTensor w;
  w.d = prog.d;
  w.num_sites = prog.n;
  RealVector values = prog.site_tables[0].values;
  for (int l = 1; l < prog.n; ++l) {
    values = kron<RealVector>(values,
                              prog.site_tables[static_cast<size_t>(l)].values)
                 .eval();
  }
  w.values = values;
  for (const CompiledKernel& ck : prog.kernels) {
    w = apply_kernel_full(ck.kernel, ck.support, w);
  }
  return w;
}

OutcomeDistribution wigner_chain_distribution(const WignerProgram& prog,
                                              const OracleOptions& options) {
  WignerTensor w = propagate_chain(prog, options);
  const int d = prog.d;
  RealVector t = w.values;
  std::vector<int> extents(static_cast<size_t>(prog.n), d * d);
  OutcomeDistribution out;
  out.d = d;
  out.n = prog.n;
  for (int l = 0; l < prog.n; ++l) {
    // One factor of d per site turns the table rows into the conditional
    // outcome probabilities.
    RealMatrix contraction = d * prog.povm_tables[static_cast<size_t>(l)].table;
    t = apply_to_axis<double>(contraction, t, l, extents);
    out.outcome_counts.push_back(
        prog.povm_tables[static_cast<size_t>(l)].num_outcomes());
  }
  out.probabilities = t;
  return out;
}

OutcomeDistribution empirical_distribution(const OutcomeCounts& counts,
                                           std::uint64_t shots,
                                           const WignerProgram& prog) {
  OutcomeDistribution out;
  out.d = prog.d;
  out.n = prog.n;
  out.outcome_counts = outcome_space(prog);
  long long size = 1;
  for (int k : out.outcome_counts) size *= k;
  out.probabilities = RealVector::Zero(size);
  if (shots == 0) return out;
  for (const auto& [outcome, count] : counts) {
    out.probabilities[out.tuple_index(outcome)] +=
        static_cast<double>(count) / static_cast<double>(shots);
  }
  return out;
}

ComparisonReport compare_distributions(const OutcomeDistribution& p,
                                       const OutcomeDistribution& q) {
  if (p.d != q.d || p.n != q.n || p.outcome_counts != q.outcome_counts) {
    throw ShapeMismatch("distributions live on different outcome spaces");
  }
  ComparisonReport report;
  RealVector diff = p.probabilities - q.probabilities;
  report.linf = diff.cwiseAbs().maxCoeff();
  report.tvd = 0.5 * diff.cwiseAbs().sum();
  report.kl = 0.0;
  for (Eigen::Index i = 0; i < p.probabilities.size(); ++i) {
    const double pi = std::max(p.probabilities[i], 0.0);
    const double qi = q.probabilities[i];
    if (pi == 0.0) continue;
    if (qi <= 0.0) {
      report.kl = std::numeric_limits<double>::infinity();
      break;
    }
    report.kl += pi * std::log(pi / qi);
  }
  return report;
}

ChiSquaredReport chi_squared_test(const OutcomeCounts& counts,
                                  std::uint64_t shots,
                                  const OutcomeDistribution& expected,
                                  double significance) {
  // Pearson statistic with Cochran pooling: cells expecting fewer than 5
  // observations merge into one.
  RealVector observed = RealVector::Zero(expected.probabilities.size());
  for (const auto& [outcome, count] : counts) {
    observed[expected.tuple_index(outcome)] += static_cast<double>(count);
  }

  ChiSquaredReport report;
  double pooled_expected = 0.0;
  double pooled_observed = 0.0;
  int cells = 0;
  for (Eigen::Index i = 0; i < observed.size(); ++i) {
    const double e =
        std::max(expected.probabilities[i], 0.0) * static_cast<double>(shots);
    if (e < 5.0) {
      pooled_expected += e;
      pooled_observed += observed[i];
      continue;
    }
    report.statistic += (observed[i] - e) * (observed[i] - e) / e;
    ++cells;
  }
  if (pooled_expected > 0.0) {
    report.statistic += (pooled_observed - pooled_expected) *
                        (pooled_observed - pooled_expected) / pooled_expected;
    ++cells;
  } else if (pooled_observed > 0.0) {
    // Outcomes the exact distribution forbids: certain rejection.
    report.dof = std::max(cells - 1, 1);
    report.p_value = 0.0;
    report.rejected = true;
    return report;
  }

  report.dof = cells - 1;
  if (report.dof < 1) {
    // Degenerate one-cell space: the statistic itself decides.
    report.dof = 0;
    report.p_value = 1.0;
    report.rejected = false;
    return report;
  }
  report.p_value = gamma_q(0.5 * report.dof, 0.5 * report.statistic);
  report.rejected = report.p_value < significance;
  return report;
}

PerturbationResult perturb_program(const WignerProgram& prog,
                                   const PerturbationSpec& spec) {
  PerturbationResult result;
  result.program = prog;
  WignerProgram& p = result.program;
  const int d = p.d;

  if (spec.states) {
    for (size_t l = 0; l < p.site_tables.size(); ++l) {
      RealVector& values = p.site_tables[l].values;
      const double uniform = 1.0 / static_cast<double>(values.size());
      result.state_deviations.push_back(
          mix_toward_uniform(values, uniform, spec.epsilon, 1.0));
    }
  }
  if (spec.kernels) {
    for (size_t j = 0; j < p.kernels.size(); ++j) {
      RealMatrix before = p.kernels[j].kernel.matrix;
      RealMatrix& k = p.kernels[j].kernel.matrix;
      const double uniform = 1.0 / static_cast<double>(k.rows());
      result.kernel_deviations.push_back(
          mix_toward_uniform(k, uniform, spec.epsilon, 1.0));
      RealMatrix delta = (k - before).cwiseAbs();
      result.kernel_column_norm_devs.push_back(
          delta.colwise().sum().maxCoeff());
      result.kernel_row_norm_devs.push_back(delta.rowwise().sum().maxCoeff());
      p.kernels[j].kernel.min_entry = k.minCoeff();
      p.kernels[j].kernel.negative_mass =
          (-k.array()).max(0.0).sum() / static_cast<double>(k.cols());
    }
  }
  if (spec.povms) {
    for (size_t l = 0; l < p.povm_tables.size(); ++l) {
      RealMatrix& t = p.povm_tables[l].table;
      const double uniform = 1.0 / static_cast<double>(t.rows());
      // Deviations live on the probability-normalized object d*T.
      result.povm_deviations.push_back(
          mix_toward_uniform(t, uniform, spec.epsilon, static_cast<double>(d)));
    }
  }

  // Refresh the sampling caches and the audit for the mixed elements.
  for (size_t l = 0; l < p.site_tables.size(); ++l) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.site_tables[l].values.size(); ++i) {
      acc += p.site_tables[l].values[i];
      p.site_cdfs[l][i] = acc;
    }
    p.site_cdfs[l][p.site_cdfs[l].size() - 1] = 1.0;
  }
  for (CompiledKernel& ck : p.kernels) {
    for (Eigen::Index col = 0; col < ck.kernel.matrix.cols(); ++col) {
      double acc = 0.0;
      for (Eigen::Index row = 0; row < ck.kernel.matrix.rows(); ++row) {
        acc += ck.kernel.matrix(row, col);
        ck.cdf(row, col) = acc;
      }
      ck.cdf(ck.kernel.matrix.rows() - 1, col) = 1.0;
    }
  }
  for (size_t l = 0; l < p.povm_tables.size(); ++l) {
    const RealMatrix& t = p.povm_tables[l].table;
    for (Eigen::Index col = 0; col < t.cols(); ++col) {
      double acc = 0.0;
      for (Eigen::Index row = 0; row < t.rows(); ++row) {
        acc += d * t(row, col);
        p.povm_cdfs[l](row, col) = acc;
      }
      p.povm_cdfs[l](t.rows() - 1, col) = 1.0;
    }
  }
  bool samplable = true;
  for (NegativityEntry& e : p.audit.entries) {
    if (e.kind == "state") {
      const RealVector& v = p.site_tables[static_cast<size_t>(e.index)].values;
      e.min_entry = v.minCoeff();
      e.negative_mass = (-v.array()).max(0.0).sum();
    } else if (e.kind == "gate") {
      const RealMatrix& k =
          p.kernels[static_cast<size_t>(e.index)].kernel.matrix;
      e.min_entry = k.minCoeff();
      e.negative_mass =
          (-k.array()).max(0.0).sum() / static_cast<double>(k.cols());
    } else {
      const RealMatrix& t =
          p.povm_tables[static_cast<size_t>(e.index)].table;
      e.min_entry = t.minCoeff();
      e.negative_mass = (-t.array()).max(0.0).sum();
    }
    samplable = samplable && e.min_entry >= -p.audit.tol;
  }
  p.audit.samplable = samplable;
  return result;
}

RobustnessReport robustness_experiment(const Circuit& c,
                                       const std::vector<double>& epsilons,
                                       std::uint64_t seed,
                                       const OracleOptions& options) {
  WignerProgram prog = compile_to_wigner(c);
  if (!prog.audit.samplable) {
    throw NotSamplable("robustness experiment needs a positive program");
  }
  const int n = c.n;
  const int t = c.num_gates();
  OutcomeDistribution exact = wigner_chain_distribution(prog, options);
  WignerTensor chain = propagate_chain(prog, options);

  RobustnessReport report;
  for (double epsilon : epsilons) {
    PerturbationSpec spec;
    spec.epsilon = epsilon;
    spec.seed = seed;
    PerturbationResult perturbed = perturb_program(prog, spec);
    OutcomeDistribution exact_p =
        wigner_chain_distribution(perturbed.program, options);
    WignerTensor chain_p = propagate_chain(perturbed.program, options);

    RobustnessPoint point;
    point.epsilon = epsilon;
    point.output_linf =
        (exact.probabilities - exact_p.probabilities).cwiseAbs().maxCoeff();
    point.output_bound = epsilon * (t + 2 * n);
    point.state_linf = (chain.values - chain_p.values).cwiseAbs().maxCoeff();
    point.state_bound = epsilon * (t + n);
    report.points.push_back(point);
  }
  return report;
}

}  // namespace phasesim
