// Copyright 2026 The qslcert Authors
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

#include "qslcert/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qslcert {
namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

ScheduleSingularityError::ScheduleSingularityError(const std::string& what,
                                                   double time)
    : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

QuantumState::QuantumState(Vector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) {
    throw DimensionError("QuantumState: dimension must be at least 2");
  }
  if (!amplitudes_.allFinite()) {
    throw NumericalError("QuantumState: non-finite amplitude");
  }
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol.norm) {
    throw NumericalError("QuantumState: norm " + std::to_string(n) +
                         " deviates from 1");
  }
}

QuantumState QuantumState::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw NumericalError("QuantumState::normalized: zero or non-finite vector");
  }
  amplitudes /= n;
  return QuantumState(std::move(amplitudes));
}

QuantumState QuantumState::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw DomainError("QuantumState::basis: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return QuantumState(std::move(v));
}

QuantumState QuantumState::with_phase(double angle) const {
  return QuantumState(amplitudes_ * std::polar(1.0, angle));
}

double hermiticity_defect(const Matrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DimensionError("HermitianOperator: matrix must be square");
  }
  // Non-finite entries are legal here: the propagator reports them as a
  // schedule singularity with the time attached.
  if (!entries_.allFinite()) return;
  const double defect = hermiticity_defect(entries_);
  if (defect > tol.hermiticity) {
    throw NumericalError("HermitianOperator: not Hermitian (defect " +
                         std::to_string(defect) + ")");
  }
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(Matrix::Zero(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(Matrix::Identity(dim, dim), Unchecked{});
}

HermitianOperator HermitianOperator::diagonal(const Eigen::VectorXd& diag) {
  return HermitianOperator(diag.cast<Complex>().asDiagonal().toDenseMatrix(),
                           Unchecked{});
}

// Real linear combinations of Hermitian matrices are Hermitian entry by entry,
// so the arithmetic operators skip the check.
HermitianOperator HermitianOperator::operator+(
    const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "HermitianOperator::operator+");
  return HermitianOperator(entries_ + other.entries_, Unchecked{});
}

HermitianOperator HermitianOperator::operator-(
    const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "HermitianOperator::operator-");
  return HermitianOperator(entries_ - other.entries_, Unchecked{});
}

HermitianOperator HermitianOperator::operator*(double scale) const {
  return HermitianOperator(entries_ * scale, Unchecked{});
}

double expectation(const HermitianOperator& op, const QuantumState& s,
                   const Tolerances& tol) {
  require_same_dim(op.dim(), s.dim(), "expectation");
  const Complex value = s.amplitudes().dot(op.apply(s.amplitudes()));
  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  if (std::abs(value.imag()) > tol.imag_error * scale) {
    throw NumericalError("expectation: imaginary residue " +
                         std::to_string(value.imag()) +
                         " (operator not Hermitian?)");
  }
  return value.real();
}

double variance_sigma(const HermitianOperator& op, const QuantumState& s,
                      const Tolerances& tol) {
  require_same_dim(op.dim(), s.dim(), "variance_sigma");
  // <op^2> - <op>^2 = ||(op - <op>) s||^2 for Hermitian op. The centered form
  // is a sum of squares, so the radicand cannot cancel below zero; the raw
  // moment difference is still checked to catch inconsistent inputs.
  const Vector applied = op.apply(s.amplitudes());
  const double mean = expectation(op, s, tol);
  const double second = applied.squaredNorm();
  const double raw = second - mean * mean;
  if (raw < -tol.variance_error * std::max(1.0, second)) {
    throw NumericalError("variance_sigma: negative radicand " +
                         std::to_string(raw));
  }
  const double sigma = (applied - mean * s.amplitudes()).norm();
  if (!std::isfinite(sigma)) {
    throw NumericalError("variance_sigma: non-finite result");
  }
  return sigma;
}

Complex inner_product(const QuantumState& a, const QuantumState& b) {
  require_same_dim(a.dim(), b.dim(), "inner_product");
  return a.amplitudes().dot(b.amplitudes());
}

double overlap_magnitude(const QuantumState& a, const QuantumState& b,
                         const Tolerances& tol) {
  const double m = std::abs(inner_product(a, b));
  if (m > 1.0 + tol.overlap_clamp) {
    throw NumericalError("overlap_magnitude: |<a|b>| = " + std::to_string(m) +
                         " exceeds 1");
  }
  return std::min(m, 1.0);
}

}  // namespace qslcert
