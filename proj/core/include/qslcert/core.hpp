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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qslcert {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Error hierarchy. Every failure raised by the library derives from Error so
// callers can catch once and still dispatch on the concrete kind.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class AccuracyError : public Error {
 public:
  using Error::Error;
};

class CertificationViolationError : public Error {
 public:
  using Error::Error;
};

/// Raised when a schedule or Hamiltonian entry diverges. Carries the time of
/// the offending evaluation.
class ScheduleSingularityError : public Error {
 public:
  ScheduleSingularityError(const std::string& what, double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Numerical tolerances shared by the primitives. The defaults sit well below
/// any physical effect at double precision; callers may override them.
struct Tolerances {
  double norm = 1e-9;
  double hermiticity = 1e-12;
  // |Im <s|A|s>| below this is discarded, above `imag_error` is an error.
  double imag_discard = 1e-10;
  double imag_error = 1e-8;
  // Negative variance radicands down to -variance_error are clamped to zero.
  double variance_error = 1e-10;
  double overlap_clamp = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Normalized pure state of dimension >= 2.
class QuantumState {
 public:
  explicit QuantumState(Vector amplitudes,
                        const Tolerances& tol = kDefaultTolerances);

  /// Rescales `amplitudes` to unit norm. Throws NumericalError on a zero or
  /// non-finite vector.
  static QuantumState normalized(Vector amplitudes);

  /// Computational basis vector |index> of dimension `dim`.
  static QuantumState basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }

  double norm() const { return amplitudes_.norm(); }

  /// Multiplies by a unit-modulus phase e^{i angle}.
  QuantumState with_phase(double angle) const;

 private:
  Vector amplitudes_;
};

/// Dense Hermitian operator. Hermiticity is checked entrywise on construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries,
                             const Tolerances& tol = kDefaultTolerances);

  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator identity(Eigen::Index dim);
  static HermitianOperator diagonal(const Eigen::VectorXd& diag);

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

  bool all_finite() const { return entries_.allFinite(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;
  friend HermitianOperator operator*(double scale, const HermitianOperator& op) {
    return op * scale;
  }

  Vector apply(const Vector& v) const { return entries_ * v; }

 private:
  struct Unchecked {};
  HermitianOperator(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Largest |A_ij - conj(A_ji)| over all entries.
double hermiticity_defect(const Matrix& m);

/// <s|op|s>. The imaginary residue of the raw inner product is discarded when
/// tiny and reported as NumericalError when it is not.
double expectation(const HermitianOperator& op, const QuantumState& s,
                   const Tolerances& tol = kDefaultTolerances);

/// Standard deviation sqrt(<op^2> - <op>^2) of `op` in state `s`.
double variance_sigma(const HermitianOperator& op, const QuantumState& s,
                      const Tolerances& tol = kDefaultTolerances);

/// |<a|b>| clamped into [0, 1].
double overlap_magnitude(const QuantumState& a, const QuantumState& b,
                         const Tolerances& tol = kDefaultTolerances);

/// <a|b> without magnitude; used where the relative phase matters.
Complex inner_product(const QuantumState& a, const QuantumState& b);

}  // namespace qslcert
