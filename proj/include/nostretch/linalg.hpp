// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file linalg.hpp
 * @brief Dense complex operator algebra on finite spin spaces.
 *
 * Index convention for composite spaces: the left (output) factor is the slow
 * index, so the entry for (a, b) in H_a (x) H_b sits at a * d_b + b.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "nostretch/halfint.hpp"

namespace nostretch {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double unitary = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double imaginary = 1e-10;
inline constexpr double covariance = 1e-8;
}  // namespace tol

enum class Factor { left, right };

/// Kronecker product, left factor slow.
[[nodiscard]] inline OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

[[nodiscard]] inline StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Traces out one factor of an operator on H_a (x) H_b and returns the `keep` factor.
[[nodiscard]] inline OperatorMatrix partial_trace(const OperatorMatrix& m, Factor keep,
                                                  int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    throw DimensionMismatch("partial_trace: operator is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(dim_a * dim_b) + " square");
  }
  if (keep == Factor::left) {
    OperatorMatrix out = OperatorMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int k = 0; k < dim_a; ++k)
        for (int b = 0; b < dim_b; ++b) out(i, k) += m(i * dim_b + b, k * dim_b + b);
    return out;
  }
  OperatorMatrix out = OperatorMatrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

[[nodiscard]] inline OperatorMatrix transpose_in_basis(const OperatorMatrix& m) {
  return m.transpose();
}
[[nodiscard]] inline OperatorMatrix dagger(const OperatorMatrix& m) { return m.adjoint(); }
[[nodiscard]] inline OperatorMatrix conj(const OperatorMatrix& m) { return m.conjugate(); }

[[nodiscard]] inline StateVector basis_vector(int dim, int index) {
  StateVector v = StateVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

/// |j,j>, the first vector of the m-descending basis.
[[nodiscard]] inline StateVector highest_weight(HalfSpin j) { return basis_vector(j.dim(), 0); }

[[nodiscard]] inline OperatorMatrix projector(const StateVector& psi) {
  return psi * psi.adjoint();
}

[[nodiscard]] inline double hermiticity_residual(const OperatorMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// <psi| rho |psi>; throws when the imaginary part exceeds tol::imaginary.
[[nodiscard]] inline double pure_fidelity(const OperatorMatrix& rho, const StateVector& psi) {
  if (rho.rows() != psi.size() || rho.cols() != psi.size()) {
    throw DimensionMismatch("pure_fidelity: state and operator dimensions differ");
  }
  const Complex value = psi.dot(rho * psi);
  if (std::abs(value.imag()) > tol::imaginary) {
    throw std::domain_error("pure_fidelity: expectation has imaginary part " +
                            std::to_string(value.imag()));
  }
  return value.real();
}

struct OperatorNorms {
  double frobenius = 0.0;
  double max_abs_entry = 0.0;
};

[[nodiscard]] inline OperatorNorms operator_norms(const OperatorMatrix& m) {
  if (m.size() == 0) return {};
  return {m.norm(), m.cwiseAbs().maxCoeff()};
}

/// Ascending eigenvalues of a Hermitian matrix.
[[nodiscard]] inline RealVector eigvals_hermitian(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eigvals_hermitian: matrix not square");
  if (m.size() > 0 && hermiticity_residual(m) > tol::hermitian) {
    throw std::domain_error("eigvals_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Number of eigenvalues strictly above `cutoff`.
[[nodiscard]] inline int numerical_rank(const OperatorMatrix& m, double cutoff = 1e-9) {
  const RealVector ev = eigvals_hermitian(m);
  return static_cast<int>((ev.array() > cutoff).count());
}

/// (1/2) || a - b ||_1 for Hermitian a, b.
[[nodiscard]] inline double trace_distance(const OperatorMatrix& a, const OperatorMatrix& b) {
  return 0.5 * eigvals_hermitian(a - b).cwiseAbs().sum();
}

[[nodiscard]] inline bool is_density(const OperatorMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if (hermiticity_residual(rho) > tol::hermitian) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tol::trace) return false;
  return eigvals_hermitian(rho)(0) >= -tol::psd;
}

/// Haar-random pure state of dimension `dim`.
[[nodiscard]] inline StateVector random_state(int dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  return v.normalized();
}

/// Full-rank random density operator G G^dagger / tr, G Ginibre.
[[nodiscard]] inline OperatorMatrix random_density(int dim, Rng& rng) {
  std::normal_distribution<double> gauss;
  OperatorMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  OperatorMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace nostretch
