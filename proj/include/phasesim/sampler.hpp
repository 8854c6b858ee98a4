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

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "phasesim/program.hpp"

namespace phasesim {

// Per-shot random stream: (seed, shot_index) fully determines the shot, so
// outcomes are reproducible no matter how shots are distributed over
// workers. The per-shot generator is seeded through a 64-bit finalizer so
// neighboring shot indices land in unrelated states.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t shot_index);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t shot_index() const { return shot_index_; }

  // 53-bit uniform in [0, 1).
  double next_uniform();

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t shot_index_ = 0;
  std::mt19937_64 engine_;
};

// One sampled run: the full-register phase-space point before any gate and
// after each gate, plus the measured outcome label per site.
struct Trajectory {
  std::vector<PhaseVector> points;  // t + 1 entries
  std::vector<int> outcome;         // n entries
};

// Exact categorical draw over Z_base^s by coordinate-wise conditional-CDF
// inversion (discrete inversion: the smallest value whose CDF exceeds the
// uniform). dist is indexed with coordinate 0 as the most significant
// base-`base` digit; uniforms supplies one real per coordinate.
std::vector<int> inverse_transform_sample(const RealVector& dist, int base,
                                          const std::vector<double>& uniforms);

// Runs Steps 0 .. t+1 of the program on one stream. Step 0 draws each site's
// initial point from its site table; step j redraws only the support of gate
// j from the kernel column selected by the current point; step t+1 draws
// each site's outcome from the POVM table at the site's final point. Cost
// per shot is O(n d^2 + sum_j d^(2 m_j) + n K). Throws NotSamplable unless
// the program's audit says every element is positive.
Trajectory sample_run(const WignerProgram& prog, SampleStream& stream);

using OutcomeTuple = std::vector<int>;
using OutcomeCounts = std::map<OutcomeTuple, std::uint64_t>;

// Aggregates sample_run over shot indices 0 .. shots-1. The result depends
// only on (prog, shots, seed): workers get contiguous shot ranges and counts
// are merged by summation, so any worker count produces identical output.
OutcomeCounts sample_shots(const WignerProgram& prog, std::uint64_t shots,
                           std::uint64_t seed, int num_threads = 1);

}  // namespace phasesim
