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

#include "phasesim/wigner.hpp"

#include <cmath>
#include <string>

namespace phasesim {

namespace {

constexpr double kImagResidueTol = 1e-9;

}  // namespace

Matrix wigner_transfer_matrix(const Dimension& dim) {
  // A(q,p)[j,k] = w^(2p(j-q)) for j+k = 2q mod d, zero otherwise; this is
  // w(r) P w(r)^dagger written out. G[(q,p),(u,v)] = A(q,p)[v,u].
  int d = dim.value();
  Matrix g = Matrix::Zero(d * d, d * d);
  for (int q = 0; q < d; ++q) {
    for (int p = 0; p < d; ++p) {
      for (int v = 0; v < d; ++v) {
        int u = mod(2LL * q - v, d);
        g(q * d + p, u * d + v) = dim.root_of_unity(2LL * p * (v - q));
      }
    }
  }
  return g;
}

WignerTensor wigner_transform(const Matrix& op, const Dimension& dim,
                              int num_sites, bool declared_hermitian) {
  int d = dim.value();
  Vector t = interleave_operator(op, d, num_sites);
  Matrix g = wigner_transfer_matrix(dim);
  std::vector<int> extents(num_sites, d * d);
  for (int axis = 0; axis < num_sites; ++axis) {
    t = apply_to_axis<Complex>(g, t, axis, extents);
  }
  double scale = std::pow(static_cast<double>(d), -num_sites);
  WignerTensor w;
  w.d = d;
  w.num_sites = num_sites;
  w.values = scale * t.real();
  w.max_imag_residue = scale * t.imag().cwiseAbs().maxCoeff();
  if (declared_hermitian && w.max_imag_residue > kImagResidueTol) {
    throw ImagResidueTooLarge(
        "operator declared Hermitian but transform has imaginary residue " +
        std::to_string(w.max_imag_residue));
  }
  return w;
}

Matrix inverse_wigner_transform(const WignerTensor& w) {
  // From W = d^-m (G x ... x G) t and G^dagger G = d Id it follows that
  // t = (G^dagger x ... x G^dagger) W with no residual scale factor.
  Dimension dim(w.d);
  int d = w.d;
  Vector t = w.values.cast<Complex>();
  Matrix g_adj = wigner_transfer_matrix(dim).adjoint();
  std::vector<int> extents(w.num_sites, d * d);
  for (int axis = 0; axis < w.num_sites; ++axis) {
    t = apply_to_axis<Complex>(g_adj, t, axis, extents);
  }
  return deinterleave_operator(t, d, w.num_sites);
}

double overlap(const WignerTensor& a, const WignerTensor& b) {
  if (a.d != b.d || a.num_sites != b.num_sites) {
    throw ShapeMismatch("overlap of tensors with different shapes");
  }
  double scale = static_cast<double>(int_pow(a.d, a.num_sites));
  return scale * a.values.dot(b.values);
}

WignerTensor lambda_permuted(const WignerTensor& w) {
  WignerTensor out = w;
  for (long long i = 0; i < w.values.size(); ++i) {
    out.values[i] = w.values[lambda_index(i, w.d, w.num_sites)];
  }
  return out;
}

}  // namespace phasesim
