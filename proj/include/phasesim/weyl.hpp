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

#include "phasesim/dense.hpp"
#include "phasesim/phase_space.hpp"

namespace phasesim {

// Conventions, fixed once for the whole library:
//   shift:  x(q)|x> = |x + q mod d>
//   boost:  z(p)|x> = w^(p*x)|x>          with w = exp(2*pi*i/d)
//   weyl:   w(q,p)  = w^(-inv2*p*q) z(p) x(q), inv2 = (d+1)/2
//   parity: P|x>    = |-x mod d>
//   point:  A(r)    = w(r) P w(r)^dagger
// A(r) is Hermitian, unitary, involutory and has unit trace; the d^2
// operators A(r) are pairwise orthogonal, tr(A(r) A(r')) = d*delta_{r,r'}.

int mod_inverse_two(const Dimension& dim);

Matrix shift_operator(const Dimension& dim, int q);
Matrix boost_operator(const Dimension& dim, int p);

Matrix weyl_operator(const Dimension& dim, PhasePoint r);

// Tensor product over sites, site 0 the most significant factor.
Matrix weyl_operator(const Dimension& dim, const PhaseVector& r);

Matrix parity_operator(const Dimension& dim);

Matrix phase_point_operator(const Dimension& dim, PhasePoint r);

// Multi-site Weyl operators are generalized permutations: each input basis
// state maps to exactly one output basis state with a unit-modulus phase,
// w(u)|x> = phase[x] * |target[x]>. This form keeps conjugation sums over
// all of phase space at O(dim^2) per term instead of requiring dense
// matrix products.
struct WeylAction {
  std::vector<long long> target;
  std::vector<Complex> phase;
};
WeylAction weyl_action(const Dimension& dim, const PhaseVector& r);

// Clifford generators used by the gate presets.
Matrix fourier_matrix(const Dimension& dim);          // |x> -> d^-1/2 sum w^(xy)|y>
Matrix multiplier_matrix(const Dimension& dim, int a);  // |x> -> |a x>, a != 0
Matrix phase_gate_matrix(const Dimension& dim);       // |x> -> w^(inv2*x^2)|x>
Matrix sum_gate_matrix(const Dimension& dim);         // |x,y> -> |x, x+y>

}  // namespace phasesim
