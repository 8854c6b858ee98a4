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

#include <complex>
#include <vector>

#include "phasesim/errors.hpp"

namespace phasesim {

using Complex = std::complex<double>;

// a mod d, mapped into [0, d).
int mod(long long a, int d);

// base^exp as long long; throws TooLarge on overflow. exp >= 0.
long long int_pow(long long base, int exp);

// Validated odd-prime local dimension. Caches the d-th roots of unity so
// every phase in the library is drawn from one exactly-reduced table
// instead of being re-exponentiated (keeps phases bit-stable).
class Dimension {
 public:
  explicit Dimension(int d);

  int value() const { return d_; }

  // Multiplicative inverse of 2 mod d, i.e. (d + 1) / 2.
  int inverse_two() const { return inv_two_; }

  // exp(2*pi*i*e/d) with e reduced mod d.
  Complex root_of_unity(long long e) const { return roots_[mod(e, d_)]; }

  friend bool operator==(const Dimension& a, const Dimension& b) {
    return a.d_ == b.d_;
  }

 private:
  int d_;
  int inv_two_;
  std::vector<Complex> roots_;
};

}  // namespace phasesim
