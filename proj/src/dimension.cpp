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

#include "phasesim/dimension.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace phasesim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int f = 3; static_cast<long long>(f) * f <= d; f += 2) {
    if (d % f == 0) return false;
  }
  return true;
}

}  // namespace

int mod(long long a, int d) {
  long long r = a % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

long long int_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<long long>::max() / base) {
      throw TooLarge("integer power overflow: " + std::to_string(base) + "^" +
                     std::to_string(exp));
    }
    out *= base;
  }
  return out;
}

Dimension::Dimension(int d) : d_(d), inv_two_((d + 1) / 2), roots_(0) {
  if (!is_odd_prime(d)) {
    throw DimensionNotOddPrime("local dimension must be an odd prime, got " +
                               std::to_string(d));
  }
  roots_.reserve(d_);
  for (int k = 0; k < d_; ++k) {
    double angle = kTwoPi * k / d_;
    roots_.emplace_back(std::cos(angle), std::sin(angle));
  }
}

}  // namespace phasesim
