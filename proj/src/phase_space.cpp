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

#include "phasesim/phase_space.hpp"

#include <algorithm>
#include <string>

namespace phasesim {

PhaseVector::PhaseVector(int d, std::vector<PhasePoint> sites)
    : d_(d), sites_(std::move(sites)) {
  for (const PhasePoint& r : sites_) {
    if (r.q < 0 || r.q >= d_ || r.p < 0 || r.p >= d_) {
      throw ShapeMismatch("phase-space coordinate outside [0, d)");
    }
  }
}

PhaseVector PhaseVector::from_index(int d, int n, long long index) {
  std::vector<PhasePoint> sites(n);
  for (int l = n - 1; l >= 0; --l) {
    int s = static_cast<int>(index % (d * d));
    index /= d * d;
    sites[l] = point_from_index(s, d);
  }
  return PhaseVector(d, std::move(sites));
}

long long PhaseVector::index() const {
  long long out = 0;
  for (const PhasePoint& r : sites_) {
    out = out * (d_ * d_) + point_index(r, d_);
  }
  return out;
}

bool operator==(const PhaseVector& a, const PhaseVector& b) {
  return a.qudit_dim() == b.qudit_dim() && a.sites() == b.sites();
}

long long phase_space_size(int d, int n) { return int_pow(d, 2 * n); }

PhasePoint apply_lambda(PhasePoint r, int d) {
  return {r.q, mod(-r.p, d)};
}

PhaseVector apply_lambda(const PhaseVector& r) {
  std::vector<PhasePoint> out;
  out.reserve(r.num_sites());
  for (const PhasePoint& site : r.sites()) {
    out.push_back(apply_lambda(site, r.qudit_dim()));
  }
  return PhaseVector(r.qudit_dim(), std::move(out));
}

long long lambda_index(long long index, int d, int n) {
  return apply_lambda(PhaseVector::from_index(d, n, index)).index();
}

Eigen::MatrixXi symplectic_form(int num_sites) {
  Eigen::MatrixXi j = Eigen::MatrixXi::Zero(2 * num_sites, 2 * num_sites);
  for (int l = 0; l < num_sites; ++l) {
    j(2 * l, 2 * l + 1) = 1;
    j(2 * l + 1, 2 * l) = -1;
  }
  return j;
}

bool is_symplectic(const Eigen::MatrixXi& s, const Dimension& dim) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) return false;
  int m = static_cast<int>(s.rows()) / 2;
  Eigen::MatrixXi j = symplectic_form(m);
  Eigen::MatrixXi lhs = s.transpose() * j * s;
  for (int a = 0; a < 2 * m; ++a) {
    for (int b = 0; b < 2 * m; ++b) {
      if (mod(lhs(a, b), dim.value()) != mod(j(a, b), dim.value())) return false;
    }
  }
  return true;
}

std::vector<long long> position_offsets(int base, int n,
                                        const std::vector<int>& positions) {
  int k = static_cast<int>(positions.size());
  std::vector<long long> strides(k);
  for (int j = 0; j < k; ++j) {
    strides[j] = int_pow(base, n - 1 - positions[j]);
  }
  long long count = int_pow(base, k);
  std::vector<long long> offsets(count);
  for (long long i = 0; i < count; ++i) {
    long long rest = i;
    long long off = 0;
    for (int j = k - 1; j >= 0; --j) {
      off += (rest % base) * strides[j];
      rest /= base;
    }
    offsets[i] = off;
  }
  return offsets;
}

std::vector<int> complement_positions(int n, const std::vector<int>& positions) {
  std::vector<bool> used(n, false);
  for (int p : positions) used[p] = true;
  std::vector<int> out;
  out.reserve(n - positions.size());
  for (int i = 0; i < n; ++i) {
    if (!used[i]) out.push_back(i);
  }
  return out;
}

void check_support(const std::vector<int>& support, int n) {
  std::vector<int> seen;
  for (int site : support) {
    if (site < 0 || site >= n) {
      throw SupportOutOfRange("support site " + std::to_string(site) +
                              " outside [0, " + std::to_string(n) + ")");
    }
    if (std::find(seen.begin(), seen.end(), site) != seen.end()) {
      throw DuplicateSite("support lists site " + std::to_string(site) +
                          " twice");
    }
    seen.push_back(site);
  }
}

}  // namespace phasesim
