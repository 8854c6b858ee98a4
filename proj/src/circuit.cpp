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

#include "phasesim/circuit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "phasesim/errors.hpp"
#include "phasesim/weyl.hpp"

namespace phasesim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kDensityTol = 1e-9;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  std::unordered_set<std::string> allowed;
  for (const char* k : required) allowed.insert(k);
  for (const char* k : optional) allowed.insert(k);
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(where, "unknown field '" + item.key() + "'");
    }
  }
  for (const char* k : required) {
    if (!obj.contains(k)) fail(where, std::string("missing field '") + k + "'");
  }
}

long long get_integer(const json& obj, const char* key,
                      const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    fail(where, std::string("field '") + key + "' must be an integer");
  }
  return v.get<long long>();
}

double get_real(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    fail(where, std::string("field '") + key + "' must be a number");
  }
  return v.get<double>();
}

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    fail(where, "complex entries are [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const json& j, long long rows, long long cols,
                    const std::string& where) {
  if (!j.is_array() || static_cast<long long>(j.size()) != rows) {
    fail(where, "expected " + std::to_string(rows) + " rows");
  }
  Matrix out(rows, cols);
  for (long long r = 0; r < rows; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<long long>(row.size()) != cols) {
      fail(where, "row " + std::to_string(r) + " must have " +
                      std::to_string(cols) + " entries");
    }
    for (long long c = 0; c < cols; ++c) {
      out(r, c) = parse_complex(row[static_cast<size_t>(c)],
                                where + "[" + std::to_string(r) + "][" +
                                    std::to_string(c) + "]");
    }
  }
  return out;
}

std::vector<int> parse_int_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number_integer()) fail(where, "expected an array of integers");
    out.push_back(v.get<int>());
  }
  return out;
}

StateSpec parse_state_spec(const json& j, int d, const std::string& where) {
  StateSpec spec;
  if (j.is_string()) {
    spec.preset = j.get<std::string>();
  } else if (j.is_object()) {
    if (!j.contains("preset") || !j.at("preset").is_string()) {
      fail(where, "state objects need a string 'preset'");
    }
    spec.preset = j.at("preset").get<std::string>();
  } else {
    fail(where, "state specs are preset strings or objects");
  }

  if (spec.preset == "zero" || spec.preset == "plus" ||
      spec.preset == "mixed" || spec.preset == "strange") {
    if (j.is_object()) require_keys(j, where, {"preset"});
    if (spec.preset == "strange" && d != 3) {
      fail(where, "the 'strange' preset is defined only for d = 3");
    }
  } else if (spec.preset == "stabilizer") {
    if (!j.is_object()) fail(where, "'stabilizer' needs 'basis' and 'x'");
    require_keys(j, where, {"preset", "basis", "x"});
    spec.basis = static_cast<int>(get_integer(j, "basis", where));
    spec.label = static_cast<int>(get_integer(j, "x", where));
    if (spec.basis < 0 || spec.basis > d) {
      fail(where, "'basis' must be in [0, " + std::to_string(d) + "]");
    }
    if (spec.label < 0 || spec.label >= d) {
      fail(where, "'x' must be in [0, " + std::to_string(d) + ")");
    }
  } else if (spec.preset == "dense") {
    if (!j.is_object()) fail(where, "'dense' needs a 'matrix'");
    require_keys(j, where, {"preset", "matrix"});
    spec.matrix = parse_matrix(j.at("matrix"), d, d, where + ".matrix");
  } else {
    fail(where, "unknown state preset '" + spec.preset + "'");
  }
  return spec;
}

PovmSpec parse_povm_spec(const json& j, int d, const std::string& where) {
  PovmSpec spec;
  if (j.is_string()) {
    spec.preset = j.get<std::string>();
  } else if (j.is_object()) {
    if (!j.contains("preset") || !j.at("preset").is_string()) {
      fail(where, "POVM objects need a string 'preset'");
    }
    spec.preset = j.at("preset").get<std::string>();
  } else {
    fail(where, "POVM specs are preset strings or objects");
  }

  if (spec.preset == "computational" || spec.preset == "fourier" ||
      spec.preset == "trivial") {
    if (j.is_object()) require_keys(j, where, {"preset"});
  } else if (spec.preset == "basis") {
    if (!j.is_object()) fail(where, "'basis' needs 'b'");
    require_keys(j, where, {"preset", "b"});
    spec.basis = static_cast<int>(get_integer(j, "b", where));
    if (spec.basis < 0 || spec.basis > d) {
      fail(where, "'b' must be in [0, " + std::to_string(d) + "]");
    }
  } else if (spec.preset == "uniform") {
    if (!j.is_object()) fail(where, "'uniform' needs 'k'");
    require_keys(j, where, {"preset", "k"});
    spec.count = static_cast<int>(get_integer(j, "k", where));
    if (spec.count < 1) fail(where, "'k' must be at least 1");
  } else if (spec.preset == "dense") {
    if (!j.is_object()) fail(where, "'dense' needs 'elements'");
    require_keys(j, where, {"preset", "elements"});
    const json& elems = j.at("elements");
    if (!elems.is_array() || elems.empty()) {
      fail(where, "'elements' must be a nonempty array");
    }
    for (size_t i = 0; i < elems.size(); ++i) {
      spec.elements.push_back(parse_matrix(
          elems[i], d, d, where + ".elements[" + std::to_string(i) + "]"));
    }
  } else {
    fail(where, "unknown POVM preset '" + spec.preset + "'");
  }
  return spec;
}

GateSpec parse_gate_spec(const json& j, int d, int n,
                         const std::string& where) {
  if (!j.is_object()) fail(where, "gates are objects");
  if (!j.contains("type") || !j.at("type").is_string()) {
    fail(where, "gates need a string 'type'");
  }
  if (!j.contains("support")) fail(where, "gates need a 'support'");

  GateSpec spec;
  spec.type = j.at("type").get<std::string>();
  spec.support = parse_int_list(j.at("support"), where + ".support");
  check_support(spec.support, n);
  const int m = static_cast<int>(spec.support.size());
  const long long dm = int_pow(d, m);

  auto require_support_size = [&](int want) {
    if (m != want) {
      fail(where, "'" + spec.type + "' acts on " + std::to_string(want) +
                      " site(s), got support of size " + std::to_string(m));
    }
  };

  if (spec.type == "identity" || spec.type == "dephasing") {
    require_keys(j, where, {"type", "support"});
  } else if (spec.type == "fourier" || spec.type == "phase") {
    require_keys(j, where, {"type", "support"});
    require_support_size(1);
  } else if (spec.type == "sum") {
    require_keys(j, where, {"type", "support"});
    require_support_size(2);
  } else if (spec.type == "multiplier") {
    require_keys(j, where, {"type", "support", "a"});
    require_support_size(1);
    spec.multiplier = static_cast<int>(get_integer(j, "a", where));
    if (mod(spec.multiplier, d) == 0) {
      fail(where, "'a' must be nonzero mod " + std::to_string(d));
    }
  } else if (spec.type == "displacement") {
    require_keys(j, where, {"type", "support", "v"});
    spec.displacement = parse_int_list(j.at("v"), where + ".v");
    if (static_cast<int>(spec.displacement.size()) != 2 * m) {
      fail(where, "'v' must have 2 * " + std::to_string(m) + " entries");
    }
  } else if (spec.type == "depolarizing") {
    require_keys(j, where, {"type", "support", "lambda"});
    spec.lambda = get_real(j, "lambda", where);
    if (spec.lambda < 0.0 || spec.lambda > 1.0) {
      fail(where, "'lambda' must be in [0, 1]");
    }
  } else if (spec.type == "weyl_mixture") {
    require_keys(j, where, {"type", "support", "points", "weights"});
    const json& points = j.at("points");
    const json& weights = j.at("weights");
    if (!points.is_array() || points.empty()) {
      fail(where, "'points' must be a nonempty array");
    }
    if (!weights.is_array() || weights.size() != points.size()) {
      fail(where, "'weights' must match 'points' in length");
    }
    for (size_t i = 0; i < points.size(); ++i) {
      std::vector<int> v = parse_int_list(
          points[i], where + ".points[" + std::to_string(i) + "]");
      if (static_cast<int>(v.size()) != 2 * m) {
        fail(where, "each point must have 2 * " + std::to_string(m) +
                        " entries");
      }
      spec.points.push_back(std::move(v));
      if (!weights[i].is_number()) fail(where, "'weights' must be numbers");
      double wgt = weights[i].get<double>();
      if (wgt < 0.0) fail(where, "'weights' must be nonnegative");
      spec.weights.push_back(wgt);
    }
  } else if (spec.type == "unitary") {
    require_keys(j, where, {"type", "support", "matrix"});
    spec.operators.push_back(
        parse_matrix(j.at("matrix"), dm, dm, where + ".matrix"));
  } else if (spec.type == "kraus") {
    require_keys(j, where, {"type", "support", "operators"});
    const json& ops = j.at("operators");
    if (!ops.is_array() || ops.empty()) {
      fail(where, "'operators' must be a nonempty array");
    }
    for (size_t i = 0; i < ops.size(); ++i) {
      spec.operators.push_back(parse_matrix(
          ops[i], dm, dm, where + ".operators[" + std::to_string(i) + "]"));
    }
  } else {
    fail(where, "unknown gate type '" + spec.type + "'");
  }
  return spec;
}

json serialize_complex(Complex z) { return json::array({z.real(), z.imag()}); }

json serialize_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(serialize_complex(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json serialize_state_spec(const StateSpec& s) {
  if (s.preset == "stabilizer") {
    return {{"preset", "stabilizer"}, {"basis", s.basis}, {"x", s.label}};
  }
  if (s.preset == "dense") {
    return {{"preset", "dense"}, {"matrix", serialize_matrix(s.matrix)}};
  }
  return ordered_json(s.preset);
}

ordered_json serialize_povm_spec(const PovmSpec& s) {
  if (s.preset == "basis") {
    return {{"preset", "basis"}, {"b", s.basis}};
  }
  if (s.preset == "uniform") {
    return {{"preset", "uniform"}, {"k", s.count}};
  }
  if (s.preset == "dense") {
    json elems = json::array();
    for (const Matrix& m : s.elements) elems.push_back(serialize_matrix(m));
    return {{"preset", "dense"}, {"elements", std::move(elems)}};
  }
  return ordered_json(s.preset);
}

ordered_json serialize_gate_spec(const GateSpec& g) {
  ordered_json out = {{"type", g.type}, {"support", g.support}};
  if (g.type == "multiplier") {
    out["a"] = g.multiplier;
  } else if (g.type == "displacement") {
    out["v"] = g.displacement;
  } else if (g.type == "depolarizing") {
    out["lambda"] = g.lambda;
  } else if (g.type == "weyl_mixture") {
    out["points"] = g.points;
    out["weights"] = g.weights;
  } else if (g.type == "unitary") {
    out["matrix"] = serialize_matrix(g.operators.at(0));
  } else if (g.type == "kraus") {
    json ops = json::array();
    for (const Matrix& k : g.operators) ops.push_back(serialize_matrix(k));
    out["operators"] = std::move(ops);
  }
  return out;
}

bool matrix_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a.rows() == 0 || (a.array() == b.array()).all());
}

}  // namespace

bool operator==(const StateSpec& a, const StateSpec& b) {
  return a.preset == b.preset && a.basis == b.basis && a.label == b.label &&
         matrix_equal(a.matrix, b.matrix);
}

bool operator==(const GateSpec& a, const GateSpec& b) {
  if (a.type != b.type || a.support != b.support ||
      a.multiplier != b.multiplier || a.lambda != b.lambda ||
      a.displacement != b.displacement || a.points != b.points ||
      a.weights != b.weights || a.operators.size() != b.operators.size()) {
    return false;
  }
  for (size_t i = 0; i < a.operators.size(); ++i) {
    if (!matrix_equal(a.operators[i], b.operators[i])) return false;
  }
  return true;
}

bool operator==(const PovmSpec& a, const PovmSpec& b) {
  if (a.preset != b.preset || a.basis != b.basis || a.count != b.count ||
      a.elements.size() != b.elements.size()) {
    return false;
  }
  for (size_t i = 0; i < a.elements.size(); ++i) {
    if (!matrix_equal(a.elements[i], b.elements[i])) return false;
  }
  return true;
}

bool operator==(const Circuit& a, const Circuit& b) {
  return a.d == b.d && a.n == b.n && a.initial == b.initial &&
         a.gates == b.gates && a.povms == b.povms;
}

Circuit parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid document: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "top level must be an object");
  require_keys(doc, "document",
               {"format", "d", "n", "initial", "gates", "measurements"});
  if (get_integer(doc, "format", "document") != 1) {
    fail("document", "unsupported format version");
  }

  Circuit c;
  c.d = static_cast<int>(get_integer(doc, "d", "document"));
  Dimension dim{c.d};  // validates odd prime
  long long n = get_integer(doc, "n", "document");
  if (n < 1) fail("document", "'n' must be at least 1");
  c.n = static_cast<int>(n);

  const json& initial = doc.at("initial");
  if (!initial.is_array() || static_cast<long long>(initial.size()) != n) {
    fail("initial", "expected exactly " + std::to_string(n) + " state specs");
  }
  for (size_t l = 0; l < initial.size(); ++l) {
    c.initial.push_back(parse_state_spec(
        initial[l], c.d, "initial[" + std::to_string(l) + "]"));
  }

  const json& gates = doc.at("gates");
  if (!gates.is_array()) fail("gates", "expected an array");
  for (size_t t = 0; t < gates.size(); ++t) {
    c.gates.push_back(
        parse_gate_spec(gates[t], c.d, c.n, "gates[" + std::to_string(t) + "]"));
  }

  const json& povms = doc.at("measurements");
  if (!povms.is_array() || static_cast<long long>(povms.size()) != n) {
    fail("measurements",
         "expected exactly " + std::to_string(n) + " POVM specs");
  }
  for (size_t l = 0; l < povms.size(); ++l) {
    c.povms.push_back(parse_povm_spec(
        povms[l], c.d, "measurements[" + std::to_string(l) + "]"));
  }
  return c;
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

std::string serialize_circuit(const Circuit& c) {
  ordered_json doc;
  doc["format"] = 1;
  doc["d"] = c.d;
  doc["n"] = c.n;
  ordered_json initial = ordered_json::array();
  for (const StateSpec& s : c.initial) initial.push_back(serialize_state_spec(s));
  doc["initial"] = std::move(initial);
  ordered_json gates = ordered_json::array();
  for (const GateSpec& g : c.gates) gates.push_back(serialize_gate_spec(g));
  doc["gates"] = std::move(gates);
  ordered_json povms = ordered_json::array();
  for (const PovmSpec& p : c.povms) povms.push_back(serialize_povm_spec(p));
  doc["measurements"] = std::move(povms);
  return doc.dump(2) + "\n";
}

Matrix state_density(const StateSpec& spec, const Dimension& dim) {
  const int d = dim.value();
  if (spec.preset == "zero") {
    Matrix rho = Matrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
  }
  if (spec.preset == "plus") return stabilizer_projector(dim, 0, 0);
  if (spec.preset == "mixed") {
    return Matrix::Identity(d, d) / static_cast<double>(d);
  }
  if (spec.preset == "stabilizer") {
    return stabilizer_projector(dim, spec.basis, spec.label);
  }
  if (spec.preset == "strange") {
    if (d != 3) throw ParseError("'strange' is defined only for d = 3");
    Vector psi(3);
    psi << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return psi * psi.adjoint();
  }
  if (spec.preset == "dense") {
    const Matrix& rho = spec.matrix;
    if (rho.rows() != d || rho.cols() != d) {
      throw ShapeMismatch("density matrix is not " + std::to_string(d) +
                          " x " + std::to_string(d));
    }
    const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTol * scale) {
      throw NotPositiveSemidefinite("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kDensityTol ||
        std::abs(rho.trace().imag()) > kDensityTol) {
      throw NotNormalized("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDensityTol * scale) {
      throw NotPositiveSemidefinite("density matrix has eigenvalue " +
                                    std::to_string(es.eigenvalues().minCoeff()));
    }
    return rho;
  }
  throw ParseError("unknown state preset '" + spec.preset + "'");
}

std::vector<Matrix> povm_elements(const PovmSpec& spec, const Dimension& dim) {
  if (spec.preset == "computational") return computational_povm_elements(dim);
  if (spec.preset == "fourier") return fourier_povm_elements(dim);
  if (spec.preset == "basis") {
    return weyl_basis_povm_elements(dim, spec.basis);
  }
  if (spec.preset == "trivial") return trivial_povm_elements(dim);
  if (spec.preset == "uniform") return uniform_povm_elements(dim, spec.count);
  if (spec.preset == "dense") return spec.elements;
  throw ParseError("unknown POVM preset '" + spec.preset + "'");
}

ChannelSpec gate_channel(const GateSpec& spec, const Dimension& dim) {
  const int m = static_cast<int>(spec.support.size());
  if (spec.type == "identity") {
    return clifford_channel(identity_action(m), dim);
  }
  if (spec.type == "fourier") return clifford_channel(fourier_action(), dim);
  if (spec.type == "phase") return clifford_channel(phase_gate_action(), dim);
  if (spec.type == "sum") return clifford_channel(sum_gate_action(), dim);
  if (spec.type == "multiplier") {
    return clifford_channel(multiplier_action(spec.multiplier, dim), dim);
  }
  if (spec.type == "displacement") {
    std::vector<PhasePoint> sites;
    for (int l = 0; l < m; ++l) {
      sites.push_back(
          {spec.displacement[2 * l], spec.displacement[2 * l + 1]});
    }
    return clifford_channel(displacement_action(PhaseVector(dim.value(), sites)),
                            dim);
  }
  if (spec.type == "depolarizing") {
    return depolarizing_channel(spec.lambda, dim, m);
  }
  if (spec.type == "weyl_mixture") {
    std::vector<PhaseVector> points;
    for (const std::vector<int>& v : spec.points) {
      std::vector<PhasePoint> sites;
      for (int l = 0; l < m; ++l) sites.push_back({v[2 * l], v[2 * l + 1]});
      points.emplace_back(dim.value(), sites);
    }
    return weyl_mixture_channel(points, spec.weights, dim, m);
  }
  if (spec.type == "dephasing") return dephasing_channel(dim, m);
  if (spec.type == "unitary") {
    return unitary_channel(spec.operators.at(0), dim, m);
  }
  if (spec.type == "kraus") return kraus_channel(spec.operators, dim, m);
  throw ParseError("unknown gate type '" + spec.type + "'");
}

}  // namespace phasesim
