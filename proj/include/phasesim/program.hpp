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

#include <string>
#include <vector>

#include "phasesim/circuit.hpp"

namespace phasesim {

// Pre-clip negativity of one compiled element. min_entry and negative_mass
// are measured before any clipping; negative_mass is the summed absolute
// value of the negative entries (for kernels: averaged over columns).
struct NegativityEntry {
  std::string kind;  // "state", "gate" or "povm"
  int index = 0;
  double min_entry = 0.0;
  double negative_mass = 0.0;
};

struct NegativityReport {
  double tol = 0.0;
  std::vector<NegativityEntry> entries;
  bool samplable = true;  // all min entries >= -tol
};

struct CompileOptions {
  // Entries in [-tol, 0) are floating-point dust: clipped to zero, then the
  // element is renormalized. Entries below -tol are genuine negativity and
  // are kept as-is; they only flip the samplable flag.
  double tol = 1e-10;
  // Largest gate support accepted at compile time; a kernel holds d^(4m)
  // reals, so this bounds compile memory.
  int max_support = 3;
};

// One gate ready for sampling. cdf(:, r_in) holds the inclusive prefix sums
// of the kernel column, so a draw is one binary search.
struct CompiledKernel {
  StochasticKernel kernel;
  std::vector<int> support;
  RealMatrix cdf;
};

// The circuit mapped to phase space: distributions, kernels and outcome
// tables, plus the negativity audit that decides samplability.
struct WignerProgram {
  int d = 0;
  int n = 0;
  std::vector<WignerTensor> site_tables;    // n single-site distributions
  std::vector<RealVector> site_cdfs;        // prefix sums per site
  std::vector<CompiledKernel> kernels;      // one per gate, program order
  std::vector<PovmWignerTable> povm_tables; // n
  std::vector<RealMatrix> povm_cdfs;        // prefix sums of d*T per point
  NegativityReport audit;
};

// Builds every Wigner object of the circuit, records pre-clip negativity,
// clips dust in [-tol, 0) and renormalizes (states to sum 1, kernel columns
// to sum 1, POVM point-slices to sum 1/d). Never fails on negativity; the
// audit carries it and sampling refuses unsamplable programs.
WignerProgram compile_to_wigner(const Circuit& c,
                                const CompileOptions& options = {});

// Pre-clip negativity of every element, without building a program.
NegativityReport audit_circuit(const Circuit& c, double tol = 1e-10);

}  // namespace phasesim
