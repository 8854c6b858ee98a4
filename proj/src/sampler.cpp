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

#include "phasesim/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <thread>

#include "phasesim/errors.hpp"

namespace phasesim {
namespace {

// 64-bit finalizer (splitmix64): consecutive inputs map to statistically
// unrelated outputs, which is exactly what per-shot seeding needs.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Smallest index whose inclusive prefix sum exceeds u. Plateaus in the
// prefix array are zero-probability entries and can never be selected.
template <typename Column>
Eigen::Index search_cdf(const Column& cdf, double u) {
  Eigen::Index lo = 0;
  Eigen::Index hi = cdf.size() - 1;
  while (lo < hi) {
    Eigen::Index mid = (lo + hi) / 2;
    if (cdf[mid] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

void check_samplable(const WignerProgram& prog) {
  if (prog.audit.samplable) return;
  const NegativityEntry* worst = nullptr;
  for (const NegativityEntry& e : prog.audit.entries) {
    if (!worst || e.min_entry < worst->min_entry) worst = &e;
  }
  std::string detail;
  if (worst) {
    detail = ": " + worst->kind + " " + std::to_string(worst->index) +
             " has min entry " + std::to_string(worst->min_entry);
  }
  throw NotSamplable("program has negative elements" + detail);
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t shot_index)
    : seed_(seed),
      shot_index_(shot_index),
      engine_(mix64(seed + 0x9E3779B97F4A7C15ULL * (shot_index + 1))) {}

double SampleStream::next_uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<int> inverse_transform_sample(const RealVector& dist, int base,
                                          const std::vector<double>& uniforms) {
  const int s = static_cast<int>(uniforms.size());
  const long long size = int_pow(base, s);
  if (dist.size() != size) {
    throw ShapeMismatch("distribution over " + std::to_string(s) +
                        " base-" + std::to_string(base) +
                        " coordinates needs " + std::to_string(size) +
                        " entries, got " + std::to_string(dist.size()));
  }
  if (dist.minCoeff() < 0.0) {
    throw NegativeEntry("distribution has entry " +
                        std::to_string(dist.minCoeff()));
  }
  if (std::abs(dist.sum() - 1.0) > 1e-9) {
    throw NotNormalized("distribution sums to " + std::to_string(dist.sum()));
  }

  std::vector<int> out(static_cast<size_t>(s));
  std::vector<double> branch(static_cast<size_t>(base));
  long long offset = 0;
  long long block = size;
  double total = 1.0;
  for (int j = 0; j < s; ++j) {
    block /= base;
    for (int v = 0; v < base; ++v) {
      branch[static_cast<size_t>(v)] =
          dist.segment(offset + v * block, block).sum();
    }
    // Conditional CDF of coordinate j given the chosen prefix. A first-
    // exceeding index always has positive mass; if rounding leaves the
    // final cumulative sum below u, fall back to the last positive branch.
    const double u = uniforms[static_cast<size_t>(j)];
    double cum = 0.0;
    int picked = -1;
    int last_positive = 0;
    for (int v = 0; v < base; ++v) {
      if (branch[static_cast<size_t>(v)] > 0.0) last_positive = v;
      cum += branch[static_cast<size_t>(v)] / total;
      if (cum > u) {
        picked = v;
        break;
      }
    }
    if (picked == -1) picked = last_positive;
    total = branch[static_cast<size_t>(picked)];
    out[static_cast<size_t>(j)] = picked;
    offset += picked * block;
  }
  return out;
}

Trajectory sample_run(const WignerProgram& prog, SampleStream& stream) {
  check_samplable(prog);
  const int d = prog.d;
  const int n = prog.n;

  Trajectory traj;
  std::vector<PhasePoint> current(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    Eigen::Index idx = search_cdf(prog.site_cdfs[static_cast<size_t>(l)],
                                  stream.next_uniform());
    current[static_cast<size_t>(l)] = point_from_index(static_cast<int>(idx), d);
  }
  traj.points.emplace_back(d, current);

  for (const CompiledKernel& ck : prog.kernels) {
    const int m = static_cast<int>(ck.support.size());
    long long col = 0;
    for (int l = 0; l < m; ++l) {
      col = col * (d * d) +
            point_index(current[static_cast<size_t>(ck.support[l])], d);
    }
    Eigen::Index row = search_cdf(ck.cdf.col(col), stream.next_uniform());
    long long rest = row;
    for (int l = m - 1; l >= 0; --l) {
      current[static_cast<size_t>(ck.support[l])] =
          point_from_index(static_cast<int>(rest % (d * d)), d);
      rest /= d * d;
    }
#ifndef NDEBUG
    // Locality: only the gate's support moved this step.
    const PhaseVector& prev = traj.points.back();
    for (int l = 0; l < n; ++l) {
      if (std::find(ck.support.begin(), ck.support.end(), l) ==
          ck.support.end()) {
        assert(current[static_cast<size_t>(l)] == prev.site(l));
      }
    }
#endif
    traj.points.emplace_back(d, current);
  }

  traj.outcome.resize(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const RealMatrix& cdf = prog.povm_cdfs[static_cast<size_t>(l)];
    int r = point_index(current[static_cast<size_t>(l)], d);
    traj.outcome[static_cast<size_t>(l)] =
        static_cast<int>(search_cdf(cdf.col(r), stream.next_uniform()));
  }
  return traj;
}

OutcomeCounts sample_shots(const WignerProgram& prog, std::uint64_t shots,
                           std::uint64_t seed, int num_threads) {
  check_samplable(prog);
  if (num_threads < 1) {
    throw ParseError("worker count must be at least 1");
  }

  auto run_range = [&prog, seed](std::uint64_t first, std::uint64_t last,
                                 OutcomeCounts& counts) {
    for (std::uint64_t shot = first; shot < last; ++shot) {
      SampleStream stream(seed, shot);
      ++counts[sample_run(prog, stream).outcome];
    }
  };

  if (num_threads == 1 || shots < 2) {
    OutcomeCounts counts;
    run_range(0, shots, counts);
    return counts;
  }

  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(num_threads), shots);
  std::vector<OutcomeCounts> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t first = shots * w / workers;
    const std::uint64_t last = shots * (w + 1) / workers;
    pool.emplace_back(run_range, first, last, std::ref(partial[w]));
  }
  for (std::thread& t : pool) t.join();

  OutcomeCounts counts = std::move(partial[0]);
  for (std::uint64_t w = 1; w < workers; ++w) {
    for (const auto& [outcome, count] : partial[w]) {
      counts[outcome] += count;
    }
  }
  return counts;
}

}  // namespace phasesim
