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

#include "phasesim/measurements.hpp"

#include <cmath>
#include <string>

#include "phasesim/errors.hpp"
#include "phasesim/weyl.hpp"

namespace phasesim {
namespace {

constexpr double kPovmTol = 1e-9;
constexpr double kNegativeTableTol = 1e-10;

}  // namespace

PovmWignerTable povm_wigner_table(const std::vector<Matrix>& elements,
                                  const Dimension& dim,
                                  bool require_projective) {
  const int d = dim.value();
  if (elements.empty()) {
    throw ShapeMismatch("a POVM needs at least one element");
  }
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& m : elements) {
    if (m.rows() != d || m.cols() != d) {
      throw ShapeMismatch("POVM element is not " + std::to_string(d) + " x " +
                          std::to_string(d));
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kPovmTol * scale) {
      throw NotPositiveSemidefinite("POVM element is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kPovmTol * scale) {
      throw NotPositiveSemidefinite("POVM element has eigenvalue " +
                                    std::to_string(lo));
    }
    if (require_projective &&
        (m * m - m).cwiseAbs().maxCoeff() > kPovmTol * scale) {
      throw NotPositiveSemidefinite("POVM element is not a projector");
    }
    sum += m;
  }
  const double id_err = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (id_err > kPovmTol) {
    throw NotResolutionOfIdentity("POVM elements sum to identity + " +
                                  std::to_string(id_err));
  }

  PovmWignerTable t;
  t.d = d;
  t.table.resize(static_cast<Eigen::Index>(elements.size()),
                 static_cast<Eigen::Index>(d) * d);
  for (Eigen::Index k = 0; k < t.table.rows(); ++k) {
    t.table.row(k) =
        wigner_transform(elements[static_cast<size_t>(k)], dim, 1).values;
  }
  return t;
}

RealVector outcome_distribution_at(const PovmWignerTable& t, PhasePoint r) {
  const int d = t.d;
  const double lo = t.table.minCoeff();
  if (lo < -kNegativeTableTol) {
    throw NegativeTable("POVM table entry " + std::to_string(lo) +
                        " is negative");
  }
  const int idx = point_index({mod(r.q, d), mod(r.p, d)}, d);
  RealVector p = d * t.table.col(idx).cwiseMax(0.0);
  const double total = p.sum();
  if (std::abs(total - 1.0) > kPovmTol) {
    throw NotNormalized("conditional outcome distribution sums to " +
                        std::to_string(total));
  }
  return p;
}

Matrix stabilizer_projector(const Dimension& dim, int basis, int x) {
  const int d = dim.value();
  if (basis < 0 || basis > d) {
    throw ParseError("stabilizer basis " + std::to_string(basis) +
                     " is outside [0, " + std::to_string(d) + "]");
  }
  if (x < 0 || x >= d) {
    throw ParseError("stabilizer label " + std::to_string(x) +
                     " is outside [0, " + std::to_string(d) + ")");
  }
  const PhasePoint u = basis < d ? PhasePoint{1, basis} : PhasePoint{0, 1};
  Matrix p = Matrix::Zero(d, d);
  // w(u) generates a cyclic group of order d with spectrum {w^0, .., w^(d-1)},
  // and w(u)^j = w(j*u); the phase-weighted power sum is the eigenprojector.
  for (int j = 0; j < d; ++j) {
    p += dim.root_of_unity(-1LL * x * j) *
         weyl_operator(dim, PhasePoint{mod(j * u.q, d), mod(j * u.p, d)});
  }
  return p / static_cast<double>(d);
}

std::vector<Matrix> computational_povm_elements(const Dimension& dim) {
  const int d = dim.value();
  std::vector<Matrix> elements;
  elements.reserve(static_cast<size_t>(d));
  for (int x = 0; x < d; ++x) {
    Matrix m = Matrix::Zero(d, d);
    m(x, x) = 1.0;
    elements.push_back(std::move(m));
  }
  return elements;
}

std::vector<Matrix> fourier_povm_elements(const Dimension& dim) {
  const int d = dim.value();
  const Matrix f = fourier_matrix(dim);
  std::vector<Matrix> elements;
  elements.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    elements.push_back(f.col(k) * f.col(k).adjoint());
  }
  return elements;
}

std::vector<Matrix> weyl_basis_povm_elements(const Dimension& dim, int basis) {
  const int d = dim.value();
  std::vector<Matrix> elements;
  elements.reserve(static_cast<size_t>(d));
  for (int x = 0; x < d; ++x) {
    elements.push_back(stabilizer_projector(dim, basis, x));
  }
  return elements;
}

std::vector<Matrix> trivial_povm_elements(const Dimension& dim) {
  return {Matrix::Identity(dim.value(), dim.value())};
}

std::vector<Matrix> uniform_povm_elements(const Dimension& dim, int count) {
  if (count < 1) {
    throw ParseError("uniform POVM needs a positive outcome count");
  }
  const int d = dim.value();
  return std::vector<Matrix>(
      static_cast<size_t>(count),
      Matrix::Identity(d, d) / static_cast<double>(count));
}

}  // namespace phasesim
