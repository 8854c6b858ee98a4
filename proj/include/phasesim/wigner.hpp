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

#include "phasesim/dense.hpp"
#include "phasesim/phase_space.hpp"
#include "phasesim/weyl.hpp"

namespace phasesim {

// Normalization convention, used consistently everywhere
// -------------------------------------------------------
// For an operator O on m sites and a phase-space point r = (r_1, ..., r_m),
//
//   W_O(r) = d^-m * Re tr( A(r_1) x ... x A(r_m) * O ),
//   O      = sum_r W_O(r) * A(r_1) x ... x A(r_m).
//
// Consequences that the rest of the library (and its tests) rely on:
//   * density operators:  sum_r W(r) = 1, and |W(r)| <= 1/d per site;
//   * overlaps:           tr(A B) = d^m * sum_r W_A(r) W_B(r);
//   * channel kernels:    K = d^m * W of the partially transposed channel
//                         state is column-stochastic (see channels.hpp);
//   * POVM tables:        d * sum_k W_{M_k}(r) = 1 at every r;
//   * transposition:      W_{O^T}(r) = W_O(Lambda r), Lambda: (q,p)->(q,-p).
// The d^m factors above are load-bearing: every normalization, Born-rule
// and stochasticity test in tests/ pins them numerically.
struct WignerTensor {
  int d = 0;
  int num_sites = 0;
  RealVector values;             // length d^(2*num_sites), site-major index
  double max_imag_residue = 0.0;  // |Im| discarded by the transform

  double& at(const PhaseVector& r) { return values[r.index()]; }
  double at(const PhaseVector& r) const { return values[r.index()]; }
};

// Per-site transfer matrix G with G[(q,p), (u,v)] = A(q,p)[v,u]: applying G
// to every site axis of the interleaved operator evaluates all d^(2m)
// traces tr(A(r_1) x ... x A(r_m) * O) at once. G satisfies
// G^dagger G = d * Id, so the inverse transform is the adjoint sweep.
Matrix wigner_transfer_matrix(const Dimension& dim);

// Forward transform. `declared_hermitian` guards the imaginary residue:
// above 1e-9 the input was not Hermitian and the call throws
// ImagResidueTooLarge instead of silently truncating.
WignerTensor wigner_transform(const Matrix& op, const Dimension& dim,
                              int num_sites, bool declared_hermitian = true);

Matrix inverse_wigner_transform(const WignerTensor& w);

// tr(A B) = d^m * <W_A, W_B>.
double overlap(const WignerTensor& a, const WignerTensor& b);

// Tensor with values[index] = w.values[lambda_index(index)]; equals the
// transform of the transposed operator.
WignerTensor lambda_permuted(const WignerTensor& w);

}  // namespace phasesim
