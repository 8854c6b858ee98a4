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

#include "phasesim/dense.hpp"

#include "phasesim/phase_space.hpp"

namespace phasesim {

namespace {

void check_square(const Matrix& op, int d, int num_sites) {
  long long dim = int_pow(d, num_sites);
  if (op.rows() != dim || op.cols() != dim) {
    throw ShapeMismatch("operator is not d^sites square");
  }
}

// offset tables splitting a (d^2)-ary site-major index into the row digit
// (times d) and column digit contributions per site.
void interleave_offsets(int d, int num_sites, std::vector<long long>& row_off,
                        std::vector<long long>& col_off) {
  long long dim = int_pow(d, num_sites);
  row_off.assign(dim, 0);
  col_off.assign(dim, 0);
  for (long long i = 0; i < dim; ++i) {
    long long rest = i;
    long long r = 0, c = 0;
    long long stride = 1;
    for (int l = num_sites - 1; l >= 0; --l) {
      long long digit = rest % d;
      rest /= d;
      r += digit * d * stride;
      c += digit * stride;
      stride *= d * d;
    }
    row_off[i] = r;
    col_off[i] = c;
  }
}

}  // namespace

double hermiticity_error(const Matrix& op) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

Vector interleave_operator(const Matrix& op, int d, int num_sites) {
  check_square(op, d, num_sites);
  std::vector<long long> row_off, col_off;
  interleave_offsets(d, num_sites, row_off, col_off);
  long long dim = op.rows();
  Vector t(dim * dim);
  for (long long u = 0; u < dim; ++u) {
    for (long long v = 0; v < dim; ++v) {
      t[row_off[u] + col_off[v]] = op(u, v);
    }
  }
  return t;
}

Matrix deinterleave_operator(const Vector& t, int d, int num_sites) {
  long long dim = int_pow(d, num_sites);
  if (t.size() != dim * dim) {
    throw ShapeMismatch("tensor is not (d^2)^sites long");
  }
  std::vector<long long> row_off, col_off;
  interleave_offsets(d, num_sites, row_off, col_off);
  Matrix op(dim, dim);
  for (long long u = 0; u < dim; ++u) {
    for (long long v = 0; v < dim; ++v) {
      op(u, v) = t[row_off[u] + col_off[v]];
    }
  }
  return op;
}

Matrix partial_trace(const Matrix& op, int d, int num_sites,
                     const std::vector<int>& traced) {
  check_square(op, d, num_sites);
  check_support(traced, num_sites);
  std::vector<int> kept = complement_positions(num_sites, traced);
  std::vector<long long> kept_off = position_offsets(d, num_sites, kept);
  std::vector<long long> traced_off = position_offsets(d, num_sites, traced);
  long long kd = int_pow(d, static_cast<int>(kept.size()));
  Matrix out = Matrix::Zero(kd, kd);
  for (long long a = 0; a < kd; ++a) {
    for (long long b = 0; b < kd; ++b) {
      Complex acc = 0.0;
      for (long long t : traced_off) {
        acc += op(kept_off[a] + t, kept_off[b] + t);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

Matrix partial_transpose(const Matrix& op, int d, int num_sites,
                         const std::vector<int>& transposed) {
  check_square(op, d, num_sites);
  check_support(transposed, num_sites);
  std::vector<int> kept = complement_positions(num_sites, transposed);
  std::vector<long long> kept_off = position_offsets(d, num_sites, kept);
  std::vector<long long> flip_off = position_offsets(d, num_sites, transposed);
  long long kd = kept_off.size();
  long long fd = flip_off.size();
  Matrix out(op.rows(), op.cols());
  for (long long a = 0; a < kd; ++a) {
    for (long long b = 0; b < kd; ++b) {
      for (long long fa = 0; fa < fd; ++fa) {
        for (long long fb = 0; fb < fd; ++fb) {
          out(kept_off[a] + flip_off[fa], kept_off[b] + flip_off[fb]) =
              op(kept_off[a] + flip_off[fb], kept_off[b] + flip_off[fa]);
        }
      }
    }
  }
  return out;
}

}  // namespace phasesim
