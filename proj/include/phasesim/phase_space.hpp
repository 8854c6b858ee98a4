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

#include <Eigen/Dense>
#include <vector>

#include "phasesim/dimension.hpp"

namespace phasesim {

// One site's phase-space coordinates (q, p), each in Z_d.
struct PhasePoint {
  int q = 0;
  int p = 0;
};

inline bool operator==(PhasePoint a, PhasePoint b) {
  return a.q == b.q && a.p == b.p;
}

// Per-site flat coordinate q*d + p, the digit used throughout for
// linearized tensors.
inline int point_index(PhasePoint r, int d) { return r.q * d + r.p; }
inline PhasePoint point_from_index(int s, int d) { return {s / d, s % d}; }

// Multi-site phase-space point. Linearization is site-major with site 0 the
// most significant digit: index = sum_l (q_l*d + p_l) * d^(2*(n-1-l)).
class PhaseVector {
 public:
  PhaseVector(int d, std::vector<PhasePoint> sites);
  static PhaseVector from_index(int d, int n, long long index);

  long long index() const;
  int qudit_dim() const { return d_; }
  int num_sites() const { return static_cast<int>(sites_.size()); }
  PhasePoint& site(int l) { return sites_[l]; }
  const PhasePoint& site(int l) const { return sites_[l]; }
  const std::vector<PhasePoint>& sites() const { return sites_; }

 private:
  int d_;
  std::vector<PhasePoint> sites_;
};

bool operator==(const PhaseVector& a, const PhaseVector& b);

// d^(2n) with overflow guard.
long long phase_space_size(int d, int n);

// The momentum-flip map (q, p) -> (q, -p mod d), applied per site. The
// Wigner function of a transposed operator is the original one evaluated at
// the flipped point.
PhasePoint apply_lambda(PhasePoint r, int d);
PhaseVector apply_lambda(const PhaseVector& r);

// Flat-index version of apply_lambda for n-site tensors.
long long lambda_index(long long index, int d, int n);

// Symplectic form on n sites, ordering (q_1, p_1, ..., q_n, p_n):
// block-diagonal [[0, 1], [-1, 0]].
Eigen::MatrixXi symplectic_form(int num_sites);

// S^T J S == J (mod d) for a 2m x 2m integer matrix.
bool is_symplectic(const Eigen::MatrixXi& s, const Dimension& dim);

// offsets[i] = contribution of writing the digits of i (base `base`,
// positions.size() digits, digit 0 <-> positions[0]) into the listed
// positions of an n-position base-`base` index with position 0 most
// significant. Splitting a flat index into "these positions" plus "the
// rest" reduces gather/scatter loops over subsets of sites to table
// lookups; used by kernel construction, kernel application and sampling.
std::vector<long long> position_offsets(int base, int n,
                                        const std::vector<int>& positions);

// Complement of `positions` in [0, n), ascending.
std::vector<int> complement_positions(int n, const std::vector<int>& positions);

// Throws SupportOutOfRange / DuplicateSite unless `support` is a list of
// distinct sites inside [0, n).
void check_support(const std::vector<int>& support, int n);

}  // namespace phasesim
