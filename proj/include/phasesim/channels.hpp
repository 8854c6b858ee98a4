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

#include <optional>
#include <vector>

#include "phasesim/wigner.hpp"

namespace phasesim {

// Affine phase-space action r -> S r + v with S symplectic mod d, coordinate
// ordering (q_1, p_1, ..., q_m, p_m). The direction convention: the gate's
// unitary U satisfies U A(r) U^dagger = A(S r + v), so the induced kernel
// sends the input point r_in to the output point S r_in + v. Tests pin this
// against the channel-state route entrywise.
struct CliffordAction {
  Eigen::MatrixXi symplectic;
  Eigen::VectorXi displacement;

  int num_sites() const { return static_cast<int>(symplectic.rows()) / 2; }
};

// A quantum channel on m sites in one of four concrete forms. Factories
// validate the defining constraint of each form; everything downstream can
// then assume a trace-preserving completely positive map.
struct ChannelSpec {
  enum class Kind { Unitary, Kraus, Choi, Clifford };

  Kind kind = Kind::Unitary;
  int num_sites = 0;
  std::vector<Matrix> operators;  // Unitary: {U}; Kraus: the list; Choi: {f}
  std::optional<CliffordAction> action;
};

ChannelSpec unitary_channel(const Matrix& u, const Dimension& dim,
                            int num_sites);
ChannelSpec kraus_channel(std::vector<Matrix> kraus, const Dimension& dim,
                          int num_sites);
ChannelSpec choi_channel(const Matrix& f, const Dimension& dim, int num_sites);
ChannelSpec clifford_channel(const CliffordAction& action,
                             const Dimension& dim);

// Channel state f = sum_K v_K v_K^dagger over Kraus operators, where v_K is
// the interleaved flattening of K^T; equivalently (Id x F)|omega><omega|
// with |omega> = sum_j |j,j> per site, unnormalized, so tr f = d^m for a
// trace-preserving F. Subsystem ordering is pairwise
// (in_1, out_1, ..., in_m, out_m) on 2m sites of dimension d.
Matrix choi_from_channel(const ChannelSpec& spec, const Dimension& dim);

// Transpose of all "out" subsystems (odd positions) of a channel state.
// An involution; preserves Hermiticity and the spectrum's realness but not
// positivity (the negativity it exposes is what the sampler gates on).
Matrix partial_transpose_out(const Matrix& f, const Dimension& dim,
                             int num_sites);

// Classical (quasi)stochastic kernel of a channel acting on phase space:
// W_out = K * W_in for the length-d^(2m) site-major tensors.
struct StochasticKernel {
  int d = 0;
  int num_sites = 0;
  RealMatrix matrix;  // d^(2m) x d^(2m), indexed [r_out, r_in]
  double min_entry = 0.0;
  double negative_mass = 0.0;  // sum over max(-K, 0) / d^(2m)
};

// Kernel from the out-transposed channel state:
//   K[r_out, r_in] = d^m * W_{f_gamma}(Lambda r_in at the in sites;
//                                      Lambda r_out at the out sites).
// The momentum flip Lambda turns the out-transpose into an in-transpose,
// which is the contraction that reproduces F(rho) = sum_K K rho K^dagger;
// without it the kernel would belong to the conjugate channel. Columns of a
// trace-preserving channel sum to 1 (throws NotStochastic otherwise);
// entries may be negative.
StochasticKernel kernel_from_choi(const Matrix& f_gamma, const Dimension& dim,
                                  int num_sites);

// Exact 0/1 permutation kernel of a Clifford action; no transform involved.
StochasticKernel clifford_kernel(const CliffordAction& action,
                                 const Dimension& dim);

// Dispatch: delta route for Clifford specs, channel-state route otherwise.
StochasticKernel kernel_from_channel(const ChannelSpec& spec,
                                     const Dimension& dim);

enum class KernelClass { Positive, Negative, NotTracePreserving };

struct KernelValidation {
  double max_column_sum_error = 0.0;
  double min_entry = 0.0;
  double negative_mass = 0.0;
  KernelClass classification = KernelClass::Positive;
};

// Report-only: column-sum deviation at 1e-9 decides trace preservation,
// `tol` decides whether residual negative entries count as negativity.
KernelValidation validate_kernel(const StochasticKernel& k, double tol);

// Applies a kernel on the listed sites of a full n-site tensor; the
// complement sites are untouched.
WignerTensor apply_kernel_full(const StochasticKernel& k,
                               const std::vector<int>& support,
                               const WignerTensor& w);

// Kraus decomposition of a channel state (spectral form). Lets channels
// given only as Choi matrices run through the dense evolution path.
std::vector<Matrix> kraus_from_choi(const Matrix& f, const Dimension& dim,
                                    int num_sites);

// Kraus operators for any spec; Clifford specs synthesize their unitary.
std::vector<Matrix> kraus_operators(const ChannelSpec& spec,
                                    const Dimension& dim);

// Dense unitary realizing a Clifford action, built by group-averaging:
// T = sum_u w(S u) Y w(u)^dagger intertwines the two Weyl families
// (T w(u) = w(S u) T for every u), and T^dagger T is then a multiple of the
// identity, so any nonzero T rescales to a unitary; the displacement is
// applied afterwards as w(v). Gives the dense oracle a concrete matrix for
// channels specified only symplectically.
Matrix clifford_unitary(const CliffordAction& action, const Dimension& dim);

// rho_out[b, b2] = sum_{a, a2} rho_in[a, a2] * f[(a, b), (a2, b2)]: direct
// contraction of the channel state against the input. Slower than Kraus
// application but algebraically independent; tests use it to cross-check
// the Kraus and kernel routes.
Matrix apply_channel_choi(const Matrix& f, const Matrix& rho_in,
                          const Dimension& dim, int num_sites);

// Phase-space actions of the Clifford gate presets. Single site except for
// the sum gate (control is the first coordinate pair).
CliffordAction identity_action(int num_sites);
CliffordAction displacement_action(const PhaseVector& v);
CliffordAction fourier_action();                              // (q,p) -> (-p, q)
CliffordAction multiplier_action(int a, const Dimension& dim);  // (aq, p/a)
CliffordAction phase_gate_action();                           // (q,p) -> (q, p+q)
CliffordAction sum_gate_action();

// Mixed-unitary presets in Kraus form.
//   depolarizing: rho -> (1 - lambda) rho + lambda Id / d^m
//   weyl mixture: rho -> sum_i weights[i] w(points[i]) rho w(points[i])^dagger
//   dephasing:    rho -> sum_x |x><x| rho |x><x|  (computational basis)
ChannelSpec depolarizing_channel(double lambda, const Dimension& dim,
                                 int num_sites);
ChannelSpec weyl_mixture_channel(const std::vector<PhaseVector>& points,
                                 const std::vector<double>& weights,
                                 const Dimension& dim, int num_sites);
ChannelSpec dephasing_channel(const Dimension& dim, int num_sites);

}  // namespace phasesim
