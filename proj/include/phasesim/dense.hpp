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
#include <numeric>
#include <vector>

#include "phasesim/dimension.hpp"
#include "phasesim/errors.hpp"

namespace phasesim {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Kronecker product, row digit of `a` most significant.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<Derived>& b) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// max |O - O^dagger| entrywise.
double hermiticity_error(const Matrix& op);

// Contracts `m` (rows x extents[axis]) against the given axis of a
// row-major-flattened tensor `x` whose axis sizes are `extents`, replacing
// extents[axis] with m.rows(). The per-axis maps that define the Wigner
// transform, the exact chain evaluation and the dense oracle all reduce to
// this one primitive applied site by site.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_to_axis(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, int axis,
    std::vector<int>& extents) {
  using Mat =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int old_extent = extents[axis];
  const int new_extent = static_cast<int>(m.rows());
  if (m.cols() != old_extent) {
    throw ShapeMismatch("axis map does not match axis extent");
  }
  long long outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= extents[a];
  for (int a = axis + 1; a < static_cast<int>(extents.size()); ++a) {
    inner *= extents[a];
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(outer * new_extent * inner);
  for (long long o = 0; o < outer; ++o) {
    Eigen::Map<const Mat> src(x.data() + o * old_extent * inner, old_extent,
                              inner);
    Eigen::Map<Mat> dst(out.data() + o * new_extent * inner, new_extent,
                        inner);
    dst.noalias() = m * src;
  }
  extents[axis] = new_extent;
  return out;
}

// Row-major flattening of an operator on `num_sites` d-dimensional sites
// into a tensor with one axis of extent d^2 per site, axis digit
// u_l * d + v_l for row digit u_l and column digit v_l. This pairs each
// site's bra and ket index into one axis so that per-site maps (apply_to_axis
// above) can act on operators the same way they act on distributions.
Vector interleave_operator(const Matrix& op, int d, int num_sites);
Matrix deinterleave_operator(const Vector& t, int d, int num_sites);

// Partial trace over the listed sites of an operator on `num_sites`
// d-dimensional sites (site 0 most significant).
Matrix partial_trace(const Matrix& op, int d, int num_sites,
                     const std::vector<int>& traced);

// Transpose of the listed sites only.
Matrix partial_transpose(const Matrix& op, int d, int num_sites,
                         const std::vector<int>& transposed);

}  // namespace phasesim
