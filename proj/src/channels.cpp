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

#include "phasesim/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace phasesim {
namespace {

constexpr double kChannelTol = 1e-9;

std::vector<int> in_positions(int m) {
  std::vector<int> pos(m);
  for (int l = 0; l < m; ++l) pos[l] = 2 * l;
  return pos;
}

std::vector<int> out_positions(int m) {
  std::vector<int> pos(m);
  for (int l = 0; l < m; ++l) pos[l] = 2 * l + 1;
  return pos;
}

void check_square(const Matrix& op, long long rows, const char* what) {
  if (op.rows() != rows || op.cols() != rows) {
    throw ShapeMismatch(std::string(what) + ": expected a " +
                        std::to_string(rows) + "x" + std::to_string(rows) +
                        " matrix");
  }
}

void check_action(const CliffordAction& action, const Dimension& dim) {
  const Eigen::Index rows = action.symplectic.rows();
  if (rows == 0 || rows % 2 != 0 || action.symplectic.cols() != rows) {
    throw ShapeMismatch("symplectic matrix must be square with even size");
  }
  if (action.displacement.size() != rows) {
    throw ShapeMismatch("displacement length must match the symplectic size");
  }
  if (!is_symplectic(action.symplectic, dim)) {
    throw NotSymplectic("matrix does not preserve the symplectic form mod d");
  }
}

PhaseVector transform_point(const CliffordAction& action, const Dimension& dim,
                            const PhaseVector& r) {
  const int m = r.num_sites();
  Eigen::VectorXi x(2 * m);
  for (int l = 0; l < m; ++l) {
    x[2 * l] = r.site(l).q;
    x[2 * l + 1] = r.site(l).p;
  }
  const Eigen::VectorXi y = action.symplectic * x + action.displacement;
  std::vector<PhasePoint> sites(m);
  for (int l = 0; l < m; ++l) {
    sites[l] = {mod(y[2 * l], dim.value()), mod(y[2 * l + 1], dim.value())};
  }
  return PhaseVector(dim.value(), std::move(sites));
}

void finalize_kernel(StochasticKernel& k) {
  k.min_entry = k.matrix.minCoeff();
  k.negative_mass = (-k.matrix.array()).max(0.0).sum() /
                    static_cast<double>(k.matrix.rows());
}

double column_sum_error(const StochasticKernel& k) {
  return (k.matrix.colwise().sum().array() - 1.0).abs().maxCoeff();
}

int mod_inverse(int a, const Dimension& dim) {
  const int d = dim.value();
  long long result = 1;
  long long power = mod(a, d);
  for (int e = d - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * power % d;
    power = power * power % d;
  }
  return static_cast<int>(result);
}

// T = sum_u w(S u) |y><y| w(u)^dagger for the rank-1 seed y (the first basis
// vector when seed is null). Weyl operators are generalized permutations, so
// each term touches one matrix entry per nonzero of y.
Matrix clifford_average(const CliffordAction& linear, const Dimension& dim,
                        const Vector* seed) {
  const int m = linear.num_sites();
  const int d = dim.value();
  const long long dim_total = int_pow(d, m);
  const long long points = phase_space_size(d, m);
  Matrix t = Matrix::Zero(dim_total, dim_total);
  Vector av(dim_total), bv(dim_total);
  for (long long ui = 0; ui < points; ++ui) {
    const PhaseVector u = PhaseVector::from_index(d, m, ui);
    const WeylAction a = weyl_action(dim, transform_point(linear, dim, u));
    const WeylAction b = weyl_action(dim, u);
    if (seed == nullptr) {
      t(a.target[0], b.target[0]) += a.phase[0] * std::conj(b.phase[0]);
    } else {
      av.setZero();
      bv.setZero();
      for (long long x = 0; x < dim_total; ++x) {
        av[a.target[x]] = a.phase[x] * (*seed)[x];
        bv[b.target[x]] = b.phase[x] * (*seed)[x];
      }
      t.noalias() += av * bv.adjoint();
    }
  }
  return t;
}

}  // namespace

ChannelSpec unitary_channel(const Matrix& u, const Dimension& dim,
                            int num_sites) {
  const long long dim_total = int_pow(dim.value(), num_sites);
  check_square(u, dim_total, "unitary");
  const Matrix gram = u.adjoint() * u;
  if ((gram - Matrix::Identity(dim_total, dim_total)).cwiseAbs().maxCoeff() >
      kChannelTol) {
    throw NotTracePreserving("operator is not unitary");
  }
  ChannelSpec spec;
  spec.kind = ChannelSpec::Kind::Unitary;
  spec.num_sites = num_sites;
  spec.operators = {u};
  return spec;
}

ChannelSpec kraus_channel(std::vector<Matrix> kraus, const Dimension& dim,
                          int num_sites) {
  if (kraus.empty()) {
    throw ShapeMismatch("a channel needs at least one Kraus operator");
  }
  const long long dim_total = int_pow(dim.value(), num_sites);
  Matrix sum = Matrix::Zero(dim_total, dim_total);
  for (const Matrix& k : kraus) {
    check_square(k, dim_total, "Kraus operator");
    sum.noalias() += k.adjoint() * k;
  }
  if ((sum - Matrix::Identity(dim_total, dim_total)).cwiseAbs().maxCoeff() >
      kChannelTol) {
    throw NotTracePreserving("Kraus operators do not resolve the identity");
  }
  ChannelSpec spec;
  spec.kind = ChannelSpec::Kind::Kraus;
  spec.num_sites = num_sites;
  spec.operators = std::move(kraus);
  return spec;
}

ChannelSpec choi_channel(const Matrix& f, const Dimension& dim,
                         int num_sites) {
  const int d = dim.value();
  const long long dim_total = int_pow(d, num_sites);
  check_square(f, dim_total * dim_total, "channel state");
  if (hermiticity_error(f) > kChannelTol) {
    throw NotCompletelyPositive("channel state is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(f, Eigen::EigenvaluesOnly);
  const RealVector& eig = solver.eigenvalues();
  const double scale = std::max(1.0, eig.cwiseAbs().maxCoeff());
  if (eig.minCoeff() < -kChannelTol * scale) {
    throw NotCompletelyPositive("channel state has a negative eigenvalue");
  }
  const Matrix reduced =
      partial_trace(f, d, 2 * num_sites, out_positions(num_sites));
  if ((reduced - Matrix::Identity(dim_total, dim_total))
          .cwiseAbs()
          .maxCoeff() > kChannelTol) {
    throw NotTracePreserving("channel state does not trace down to identity");
  }
  ChannelSpec spec;
  spec.kind = ChannelSpec::Kind::Choi;
  spec.num_sites = num_sites;
  spec.operators = {f};
  return spec;
}

ChannelSpec clifford_channel(const CliffordAction& action,
                             const Dimension& dim) {
  check_action(action, dim);
  CliffordAction reduced = action;
  for (Eigen::Index i = 0; i < reduced.symplectic.rows(); ++i) {
    reduced.displacement[i] = mod(reduced.displacement[i], dim.value());
    for (Eigen::Index j = 0; j < reduced.symplectic.cols(); ++j) {
      reduced.symplectic(i, j) = mod(reduced.symplectic(i, j), dim.value());
    }
  }
  ChannelSpec spec;
  spec.kind = ChannelSpec::Kind::Clifford;
  spec.num_sites = action.num_sites();
  spec.action = std::move(reduced);
  return spec;
}

Matrix choi_from_channel(const ChannelSpec& spec, const Dimension& dim) {
  if (spec.kind == ChannelSpec::Kind::Choi) return spec.operators.front();
  const int d = dim.value();
  const long long size = int_pow(d, 2 * spec.num_sites);
  Matrix f = Matrix::Zero(size, size);
  for (const Matrix& k : kraus_operators(spec, dim)) {
    const Vector v = interleave_operator(k.transpose(), d, spec.num_sites);
    f.noalias() += v * v.adjoint();
  }
  return f;
}

Matrix partial_transpose_out(const Matrix& f, const Dimension& dim,
                             int num_sites) {
  check_square(f, int_pow(dim.value(), 2 * num_sites), "channel state");
  return partial_transpose(f, dim.value(), 2 * num_sites,
                           out_positions(num_sites));
}

StochasticKernel kernel_from_choi(const Matrix& f_gamma, const Dimension& dim,
                                  int num_sites) {
  const int d = dim.value();
  const int m = num_sites;
  check_square(f_gamma, int_pow(d, 2 * m), "transposed channel state");
  // Flipping the momenta of the out-transpose's transform evaluates the
  // transform of the in-transpose, which is the direction that reproduces
  // Kraus evolution (see header).
  const WignerTensor w = lambda_permuted(
      wigner_transform(f_gamma, dim, 2 * m, /*declared_hermitian=*/true));
  const auto in_off = position_offsets(d * d, 2 * m, in_positions(m));
  const auto out_off = position_offsets(d * d, 2 * m, out_positions(m));
  const long long size = phase_space_size(d, m);
  const double scale = std::pow(static_cast<double>(d), m);
  StochasticKernel k;
  k.d = d;
  k.num_sites = m;
  k.matrix.resize(size, size);
  for (long long rin = 0; rin < size; ++rin) {
    for (long long rout = 0; rout < size; ++rout) {
      k.matrix(rout, rin) = scale * w.values[in_off[rin] + out_off[rout]];
    }
  }
  finalize_kernel(k);
  if (column_sum_error(k) > kChannelTol) {
    throw NotStochastic("kernel columns do not sum to 1: the map is not "
                        "trace preserving");
  }
  return k;
}

StochasticKernel clifford_kernel(const CliffordAction& action,
                                 const Dimension& dim) {
  check_action(action, dim);
  const int m = action.num_sites();
  const int d = dim.value();
  const long long size = phase_space_size(d, m);
  StochasticKernel k;
  k.d = d;
  k.num_sites = m;
  k.matrix = RealMatrix::Zero(size, size);
  for (long long rin = 0; rin < size; ++rin) {
    const PhaseVector r = PhaseVector::from_index(d, m, rin);
    k.matrix(transform_point(action, dim, r).index(), rin) = 1.0;
  }
  finalize_kernel(k);
  return k;
}

StochasticKernel kernel_from_channel(const ChannelSpec& spec,
                                     const Dimension& dim) {
  if (spec.kind == ChannelSpec::Kind::Clifford) {
    return clifford_kernel(*spec.action, dim);
  }
  const Matrix f = choi_from_channel(spec, dim);
  return kernel_from_choi(partial_transpose_out(f, dim, spec.num_sites), dim,
                          spec.num_sites);
}

KernelValidation validate_kernel(const StochasticKernel& k, double tol) {
  KernelValidation report;
  report.max_column_sum_error = column_sum_error(k);
  report.min_entry = k.matrix.minCoeff();
  report.negative_mass = (-k.matrix.array()).max(0.0).sum() /
                         static_cast<double>(k.matrix.rows());
  if (report.max_column_sum_error > kChannelTol) {
    report.classification = KernelClass::NotTracePreserving;
  } else if (report.min_entry < -tol) {
    report.classification = KernelClass::Negative;
  } else {
    report.classification = KernelClass::Positive;
  }
  return report;
}

WignerTensor apply_kernel_full(const StochasticKernel& k,
                               const std::vector<int>& support,
                               const WignerTensor& w) {
  check_support(support, w.num_sites);
  if (static_cast<int>(support.size()) != k.num_sites || k.d != w.d) {
    throw ShapeMismatch("kernel does not match the support it is applied on");
  }
  const int d = w.d;
  const auto sup_off = position_offsets(d * d, w.num_sites, support);
  const auto comp_off = position_offsets(
      d * d, w.num_sites, complement_positions(w.num_sites, support));
  const long long block = k.matrix.rows();
  WignerTensor out = w;
  RealVector src(block), dst(block);
  for (const long long base : comp_off) {
    for (long long i = 0; i < block; ++i) src[i] = w.values[base + sup_off[i]];
    dst.noalias() = k.matrix * src;
    for (long long i = 0; i < block; ++i) out.values[base + sup_off[i]] = dst[i];
  }
  return out;
}

std::vector<Matrix> kraus_from_choi(const Matrix& f, const Dimension& dim,
                                    int num_sites) {
  const int d = dim.value();
  check_square(f, int_pow(d, 2 * num_sites), "channel state");
  if (hermiticity_error(f) > kChannelTol) {
    throw NotCompletelyPositive("channel state is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(f);
  const RealVector& eig = solver.eigenvalues();
  const double scale = std::max(1.0, eig.cwiseAbs().maxCoeff());
  if (eig.minCoeff() < -kChannelTol * scale) {
    throw NotCompletelyPositive("channel state has a negative eigenvalue");
  }
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig[i] <= 1e-12 * scale) continue;
    const Vector v = std::sqrt(eig[i]) * solver.eigenvectors().col(i);
    kraus.push_back(deinterleave_operator(v, d, num_sites).transpose());
  }
  return kraus;
}

std::vector<Matrix> kraus_operators(const ChannelSpec& spec,
                                    const Dimension& dim) {
  switch (spec.kind) {
    case ChannelSpec::Kind::Unitary:
    case ChannelSpec::Kind::Kraus:
      return spec.operators;
    case ChannelSpec::Kind::Choi:
      return kraus_from_choi(spec.operators.front(), dim, spec.num_sites);
    case ChannelSpec::Kind::Clifford:
      return {clifford_unitary(*spec.action, dim)};
  }
  throw SimError("unreachable channel kind");
}

Matrix clifford_unitary(const CliffordAction& action, const Dimension& dim) {
  check_action(action, dim);
  const int m = action.num_sites();
  const int d = dim.value();
  const long long dim_total = int_pow(d, m);
  CliffordAction linear = action;
  linear.displacement.setZero();

  // The basis seed can land in the average's kernel for unlucky S; retry
  // with fixed pseudorandom seeds until the rescaled average verifies as
  // unitary. Each candidate either verifies or is discarded, so the
  // synthesis cannot return a non-unitary silently.
  std::mt19937_64 gen(0x636c6966ULL);
  std::normal_distribution<double> normal;
  Matrix u0;
  for (int attempt = 0; attempt < 8 && u0.size() == 0; ++attempt) {
    Matrix t;
    if (attempt == 0) {
      t = clifford_average(linear, dim, nullptr);
    } else {
      Vector y(dim_total);
      for (long long i = 0; i < dim_total; ++i) {
        y[i] = Complex(normal(gen), normal(gen));
      }
      t = clifford_average(linear, dim, &y);
    }
    const double c = t.squaredNorm() / static_cast<double>(dim_total);
    if (c < 1e-12) continue;
    Matrix candidate = t / std::sqrt(c);
    const Matrix gram = candidate.adjoint() * candidate;
    if ((gram - Matrix::Identity(dim_total, dim_total)).cwiseAbs().maxCoeff() <
        kChannelTol) {
      u0 = std::move(candidate);
    }
  }
  if (u0.size() == 0) {
    throw SimError("group averaging did not produce a unitary");
  }

  if ((action.displacement.array() != 0).any()) {
    std::vector<PhasePoint> sites(m);
    for (int l = 0; l < m; ++l) {
      sites[l] = {mod(action.displacement[2 * l], d),
                  mod(action.displacement[2 * l + 1], d)};
    }
    return weyl_operator(dim, PhaseVector(d, std::move(sites))) * u0;
  }
  return u0;
}

Matrix apply_channel_choi(const Matrix& f, const Matrix& rho_in,
                          const Dimension& dim, int num_sites) {
  const int d = dim.value();
  const long long dim_total = int_pow(d, num_sites);
  check_square(f, dim_total * dim_total, "channel state");
  check_square(rho_in, dim_total, "input state");
  const auto in_off = position_offsets(d, 2 * num_sites,
                                       in_positions(num_sites));
  const auto out_off = position_offsets(d, 2 * num_sites,
                                        out_positions(num_sites));
  Matrix out(dim_total, dim_total);
  for (long long b = 0; b < dim_total; ++b) {
    for (long long b2 = 0; b2 < dim_total; ++b2) {
      Complex acc = 0.0;
      for (long long a = 0; a < dim_total; ++a) {
        for (long long a2 = 0; a2 < dim_total; ++a2) {
          acc += rho_in(a, a2) *
                 f(in_off[a] + out_off[b], in_off[a2] + out_off[b2]);
        }
      }
      out(b, b2) = acc;
    }
  }
  return out;
}

CliffordAction identity_action(int num_sites) {
  CliffordAction a;
  a.symplectic = Eigen::MatrixXi::Identity(2 * num_sites, 2 * num_sites);
  a.displacement = Eigen::VectorXi::Zero(2 * num_sites);
  return a;
}

CliffordAction displacement_action(const PhaseVector& v) {
  CliffordAction a = identity_action(v.num_sites());
  for (int l = 0; l < v.num_sites(); ++l) {
    a.displacement[2 * l] = v.site(l).q;
    a.displacement[2 * l + 1] = v.site(l).p;
  }
  return a;
}

CliffordAction fourier_action() {
  CliffordAction a = identity_action(1);
  a.symplectic << 0, -1, 1, 0;
  return a;
}

CliffordAction multiplier_action(int scale, const Dimension& dim) {
  if (mod(scale, dim.value()) == 0) {
    throw ParseError("multiplier parameter must be nonzero modulo d");
  }
  CliffordAction a = identity_action(1);
  a.symplectic(0, 0) = mod(scale, dim.value());
  a.symplectic(1, 1) = mod_inverse(scale, dim);
  return a;
}

CliffordAction phase_gate_action() {
  CliffordAction a = identity_action(1);
  a.symplectic(1, 0) = 1;
  return a;
}

CliffordAction sum_gate_action() {
  CliffordAction a = identity_action(2);
  a.symplectic(1, 3) = -1;
  a.symplectic(2, 0) = 1;
  return a;
}

ChannelSpec depolarizing_channel(double lambda, const Dimension& dim,
                                 int num_sites) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ParseError("depolarizing strength must lie in [0, 1]");
  }
  const int d = dim.value();
  const long long points = phase_space_size(d, num_sites);
  const long long dim_total = int_pow(d, num_sites);
  std::vector<Matrix> kraus;
  if (lambda < 1.0) {
    kraus.push_back(std::sqrt(1.0 - lambda) *
                    Matrix::Identity(dim_total, dim_total));
  }
  if (lambda > 0.0) {
    // Averaging over all displacements replaces the state by Id / d^m.
    const double weight = std::sqrt(lambda / static_cast<double>(points));
    for (long long ui = 0; ui < points; ++ui) {
      kraus.push_back(
          weight * weyl_operator(dim, PhaseVector::from_index(d, num_sites, ui)));
    }
  }
  return kraus_channel(std::move(kraus), dim, num_sites);
}

ChannelSpec weyl_mixture_channel(const std::vector<PhaseVector>& points,
                                 const std::vector<double>& weights,
                                 const Dimension& dim, int num_sites) {
  if (points.empty() || points.size() != weights.size()) {
    throw ShapeMismatch("mixture needs one weight per displacement");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] < 0.0) {
      throw ParseError("mixture weights must be nonnegative");
    }
    if (points[i].qudit_dim() != dim.value() ||
        points[i].num_sites() != num_sites) {
      throw ShapeMismatch("mixture displacement has the wrong shape");
    }
    kraus.push_back(std::sqrt(weights[i]) * weyl_operator(dim, points[i]));
  }
  return kraus_channel(std::move(kraus), dim, num_sites);
}

ChannelSpec dephasing_channel(const Dimension& dim, int num_sites) {
  const long long dim_total = int_pow(dim.value(), num_sites);
  std::vector<Matrix> kraus;
  kraus.reserve(dim_total);
  for (long long x = 0; x < dim_total; ++x) {
    Matrix k = Matrix::Zero(dim_total, dim_total);
    k(x, x) = 1.0;
    kraus.push_back(std::move(k));
  }
  return kraus_channel(std::move(kraus), dim, num_sites);
}

}  // namespace phasesim
