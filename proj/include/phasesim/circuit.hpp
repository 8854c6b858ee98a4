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

#include "phasesim/channels.hpp"
#include "phasesim/measurements.hpp"

namespace phasesim {

// Declarative single-site initial state.
//   "zero"               |0><0|
//   "plus"               uniform-superposition projector
//   "mixed"              Id/d
//   "stabilizer"         eigenprojector `label` of Weyl basis `basis`
//   "strange"            the d=3 negativity witness (|1> - |2>)/sqrt(2)
//   "dense"              explicit density matrix
struct StateSpec {
  std::string preset;
  int basis = 0;
  int label = 0;
  Matrix matrix;  // "dense" only
};

// Declarative gate: a channel preset plus the sites it acts on, in the order
// the kernel's axes use (e.g. "sum" support is [control, target]).
//   "identity" | "fourier" | "phase" | "sum"
//   "multiplier"     a: nonzero multiplier mod d
//   "displacement"   v: 2m integers (q_1, p_1, ..., q_m, p_m)
//   "depolarizing"   lambda in [0, 1]
//   "weyl_mixture"   points: list of 2m-integer displacements; weights
//   "dephasing"
//   "unitary"        matrix: d^m x d^m
//   "kraus"          operators: list of d^m x d^m matrices
struct GateSpec {
  std::string type;
  std::vector<int> support;
  int multiplier = 0;
  double lambda = 0.0;
  std::vector<int> displacement;
  std::vector<std::vector<int>> points;
  std::vector<double> weights;
  std::vector<Matrix> operators;
};

// Declarative single-site POVM.
//   "computational" | "fourier" | "trivial"
//   "basis"     basis in [0, d]  (d = computational, 0 = fourier-line basis)
//   "uniform"   count copies of Id/count
//   "dense"     explicit element list
struct PovmSpec {
  std::string preset;
  int basis = 0;
  int count = 0;
  std::vector<Matrix> elements;  // "dense" only
};

// A full circuit: n qudit sites of odd-prime dimension d, per-site initial
// states, t gates in program order, and one POVM per site measured at the
// end. This is the in-memory form of the versioned file format.
struct Circuit {
  int d = 0;
  int n = 0;
  std::vector<StateSpec> initial;   // length n
  std::vector<GateSpec> gates;      // length t
  std::vector<PovmSpec> povms;      // length n

  int num_gates() const { return static_cast<int>(gates.size()); }
};

bool operator==(const StateSpec& a, const StateSpec& b);
bool operator==(const GateSpec& a, const GateSpec& b);
bool operator==(const PovmSpec& a, const PovmSpec& b);
bool operator==(const Circuit& a, const Circuit& b);

// Parses the versioned circuit format (strict: unknown fields are errors).
// Structural and range validation happens here; physical validation
// (positivity, trace preservation) happens when the objects are built.
Circuit parse_circuit(const std::string& text);
Circuit parse_circuit_file(const std::string& path);

// Canonical serialization; parse_circuit(serialize_circuit(c)) == c.
std::string serialize_circuit(const Circuit& c);

// Builders from declarative specs to concrete objects.
Matrix state_density(const StateSpec& spec, const Dimension& dim);
std::vector<Matrix> povm_elements(const PovmSpec& spec, const Dimension& dim);
ChannelSpec gate_channel(const GateSpec& spec, const Dimension& dim);

}  // namespace phasesim
