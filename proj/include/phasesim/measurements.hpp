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

#include <vector>

#include "phasesim/wigner.hpp"

namespace phasesim {

// Transforms of one site's POVM elements, row k = W_{M_k} over the d^2 site
// points. Rows of a resolution of the identity satisfy
// d * sum_k T[k, r] = 1 at every r; entries can be negative for
// non-classical POVMs, which is what the sampler's positivity gate checks.
struct PovmWignerTable {
  int d = 0;
  RealMatrix table;  // num_outcomes x d^2

  int num_outcomes() const { return static_cast<int>(table.rows()); }
};

// Validates the elements (each d x d, positive semidefinite within 1e-9,
// summing to the identity within 1e-9) and transforms them row by row.
// Nothing downstream needs projectivity, so M_k^2 = M_k is only enforced
// when require_projective is set.
PovmWignerTable povm_wigner_table(const std::vector<Matrix>& elements,
                                  const Dimension& dim,
                                  bool require_projective = false);

// Conditional outcome distribution at a phase-space point:
// p(k) = d * T[k, r]. Requires a positive table (min entry >= -1e-10,
// residual dust clamped to zero); the result sums to 1 within 1e-9.
RealVector outcome_distribution_at(const PovmWignerTable& t, PhasePoint r);

// Rank-1 projector onto the eigenvector of the cyclic Weyl unitary
// V_b = w(1, b) for b in [0, d), or V_d = z(1) for b = d, with eigenvalue
// w^x: P = (1/d) sum_j w^(-x j) V_b^j. These d+1 bases are the single-site
// stabilizer bases; their projectors have the line-supported tables
// W(q, p) = (1/d) delta(p = b q - x) (b < d) and (1/d) delta(q = x) (b = d).
Matrix stabilizer_projector(const Dimension& dim, int basis, int x);

// Shipped per-site POVM presets.
std::vector<Matrix> computational_povm_elements(const Dimension& dim);
std::vector<Matrix> fourier_povm_elements(const Dimension& dim);  // F|k><k|F^dag
std::vector<Matrix> weyl_basis_povm_elements(const Dimension& dim, int basis);
std::vector<Matrix> trivial_povm_elements(const Dimension& dim);  // { Id }
std::vector<Matrix> uniform_povm_elements(const Dimension& dim, int count);

}  // namespace phasesim
