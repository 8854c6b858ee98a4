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

#include "phasesim/program.hpp"

#include <numeric>
#include <string>

#include "phasesim/errors.hpp"

namespace phasesim {
namespace {

template <typename Derived>
double negative_sum(const Eigen::MatrixBase<Derived>& m) {
  return (-m.array()).max(0.0).sum();
}

// Entries in [-tol, 0) become 0; anything below -tol is genuine negativity
// and is preserved for the audit / sampling gate to see.
template <typename Dense>
void clip_dust(Dense& m, double tol) {
  m = m.unaryExpr(
      [tol](double x) { return (x < 0.0 && x >= -tol) ? 0.0 : x; });
}

// Inclusive prefix sums with the terminal pinned to exactly 1.0: a sampler
// uniform u < 1 then always finds a first-exceeding index, and that index
// has positive mass. Valid because every column fed in sums to 1 within
// floating-point dust.
RealVector inclusive_prefix_sums(const RealVector& v) {
  RealVector out(v.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    acc += v[i];
    out[i] = acc;
  }
  out[v.size() - 1] = 1.0;
  return out;
}

}  // namespace

WignerProgram compile_to_wigner(const Circuit& c,
                                const CompileOptions& options) {
  const Dimension dim{c.d};
  const int d = c.d;

  WignerProgram prog;
  prog.d = c.d;
  prog.n = c.n;
  prog.audit.tol = options.tol;

  auto record = [&](const std::string& kind, int index, double min_entry,
                    double mass) {
    prog.audit.entries.push_back({kind, index, min_entry, mass});
    if (min_entry < -options.tol) prog.audit.samplable = false;
  };

  for (int l = 0; l < c.n; ++l) {
    Matrix rho = state_density(c.initial[l], dim);
    WignerTensor w = wigner_transform(rho, dim, 1);
    record("state", l, w.values.minCoeff(), negative_sum(w.values));
    clip_dust(w.values, options.tol);
    const double total = w.values.sum();
    if (total > 0.5) w.values /= total;
    prog.site_cdfs.push_back(inclusive_prefix_sums(w.values));
    prog.site_tables.push_back(std::move(w));
  }

  for (int j = 0; j < c.num_gates(); ++j) {
    const GateSpec& g = c.gates[j];
    if (static_cast<int>(g.support.size()) > options.max_support) {
      throw TooLarge("gate " + std::to_string(j) + " acts on " +
                     std::to_string(g.support.size()) +
                     " sites, above the compile cap of " +
                     std::to_string(options.max_support));
    }
    StochasticKernel k = kernel_from_channel(gate_channel(g, dim), dim);
    record("gate", j, k.min_entry, k.negative_mass);
    clip_dust(k.matrix, options.tol);
    CompiledKernel ck;
    ck.cdf.resize(k.matrix.rows(), k.matrix.cols());
    for (Eigen::Index col = 0; col < k.matrix.cols(); ++col) {
      const double total = k.matrix.col(col).sum();
      if (total > 0.5) k.matrix.col(col) /= total;
      ck.cdf.col(col) = inclusive_prefix_sums(k.matrix.col(col));
    }
    k.min_entry = k.matrix.minCoeff();
    k.negative_mass = negative_sum(k.matrix) / static_cast<double>(k.matrix.rows());
    ck.kernel = std::move(k);
    ck.support = g.support;
    prog.kernels.push_back(std::move(ck));
  }

  for (int l = 0; l < c.n; ++l) {
    PovmWignerTable t = povm_wigner_table(povm_elements(c.povms[l], dim), dim);
    record("povm", l, t.table.minCoeff(), negative_sum(t.table));
    clip_dust(t.table, options.tol);
    RealMatrix cdf(t.table.rows(), t.table.cols());
    for (Eigen::Index col = 0; col < t.table.cols(); ++col) {
      const double total = t.table.col(col).sum();
      // Each point's slice over outcomes sums to 1/d for a resolution of
      // the identity; restore that after clipping.
      if (d * total > 0.5) t.table.col(col) /= d * total;
      cdf.col(col) = inclusive_prefix_sums(d * t.table.col(col));
    }
    prog.povm_cdfs.push_back(std::move(cdf));
    prog.povm_tables.push_back(std::move(t));
  }

  return prog;
}

NegativityReport audit_circuit(const Circuit& c, double tol) {
  CompileOptions options;
  options.tol = tol;
  return compile_to_wigner(c, options).audit;
}

}  // namespace phasesim
