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

#include "phasesim/weyl.hpp"

#include <cmath>
#include <string>

namespace phasesim {

int mod_inverse_two(const Dimension& dim) { return dim.inverse_two(); }

Matrix shift_operator(const Dimension& dim, int q) {
  int d = dim.value();
  Matrix out = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) out(mod(x + q, d), x) = 1.0;
  return out;
}

Matrix boost_operator(const Dimension& dim, int p) {
  int d = dim.value();
  Matrix out = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) out(x, x) = dim.root_of_unity(1LL * p * x);
  return out;
}

Matrix weyl_operator(const Dimension& dim, PhasePoint r) {
  // w(q,p)|x> = w^(inv2*p*q + p*x) |x+q>, folding the symmetrizing prefactor
  // into the boost phase.
  int d = dim.value();
  Matrix out = Matrix::Zero(d, d);
  long long half_pq = 1LL * dim.inverse_two() * r.p * r.q;
  for (int x = 0; x < d; ++x) {
    out(mod(x + r.q, d), x) = dim.root_of_unity(half_pq + 1LL * r.p * x);
  }
  return out;
}

Matrix weyl_operator(const Dimension& dim, const PhaseVector& r) {
  Matrix out = weyl_operator(dim, r.site(0));
  for (int l = 1; l < r.num_sites(); ++l) {
    out = kron<Matrix>(out, weyl_operator(dim, r.site(l)));
  }
  return out;
}

Matrix parity_operator(const Dimension& dim) {
  int d = dim.value();
  Matrix out = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) out(mod(-x, d), x) = 1.0;
  return out;
}

Matrix phase_point_operator(const Dimension& dim, PhasePoint r) {
  Matrix w = weyl_operator(dim, r);
  return w * parity_operator(dim) * w.adjoint();
}

WeylAction weyl_action(const Dimension& dim, const PhaseVector& r) {
  int d = dim.value();
  int n = r.num_sites();
  long long dim_h = int_pow(d, n);
  WeylAction act;
  act.target.resize(dim_h);
  act.phase.resize(dim_h);
  std::vector<int> digits(n, 0);
  for (long long x = 0; x < dim_h; ++x) {
    long long rest = x;
    for (int l = n - 1; l >= 0; --l) {
      digits[l] = static_cast<int>(rest % d);
      rest /= d;
    }
    long long tgt = 0;
    long long exponent = 0;
    for (int l = 0; l < n; ++l) {
      const PhasePoint& s = r.site(l);
      tgt = tgt * d + mod(digits[l] + s.q, d);
      exponent += 1LL * dim.inverse_two() * s.p * s.q + 1LL * s.p * digits[l];
    }
    act.target[x] = tgt;
    act.phase[x] = dim.root_of_unity(exponent);
  }
  return act;
}

Matrix fourier_matrix(const Dimension& dim) {
  int d = dim.value();
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix out(d, d);
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) {
      out(y, x) = scale * dim.root_of_unity(1LL * x * y);
    }
  }
  return out;
}

Matrix multiplier_matrix(const Dimension& dim, int a) {
  int d = dim.value();
  if (mod(a, d) == 0) {
    throw ShapeMismatch("multiplier parameter must be nonzero mod d, got " +
                        std::to_string(a));
  }
  Matrix out = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) out(mod(1LL * a * x, d), x) = 1.0;
  return out;
}

Matrix phase_gate_matrix(const Dimension& dim) {
  int d = dim.value();
  Matrix out = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) {
    out(x, x) = dim.root_of_unity(1LL * dim.inverse_two() * x * x);
  }
  return out;
}

Matrix sum_gate_matrix(const Dimension& dim) {
  int d = dim.value();
  Matrix out = Matrix::Zero(d * d, d * d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      out(x * d + mod(x + y, d), x * d + y) = 1.0;
    }
  }
  return out;
}

}  // namespace phasesim
