// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file clone_bridge.hpp
 * @brief Optimal symmetric m -> n qubit cloning, seen as spin stretching.
 *
 * Qubit basis index 0 is spin up (m = +1/2), matching the m-descending order,
 * so the n-qubit symmetric subspace carries spin n/2 with Dicke states as its
 * |n/2, n/2 - k> basis.
 */

#pragma once

#include <bit>
#include <cmath>
#include <string>

#include "nostretch/halfint.hpp"
#include "nostretch/linalg.hpp"
#include "nostretch/stretch_channel.hpp"

namespace nostretch {

inline constexpr int kMaxSymmetricQubits = 12;
inline constexpr int kMaxCloneQubits = 8;

struct SymmetricSubspace {
  int n_qubits = 0;
  /// 2^n x (n+1); column k is the Dicke state with k qubits down.
  OperatorMatrix isometry;
};

[[nodiscard]] inline SymmetricSubspace symmetric_isometry(int n) {
  if (n < 1 || n > kMaxSymmetricQubits) {
    throw InputDomainError("symmetric_isometry: n must lie in [1, " +
                           std::to_string(kMaxSymmetricQubits) + "]");
  }
  const unsigned full = 1u << n;
  std::vector<double> binomial(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) binomial[k] = binomial[k - 1] * (n - k + 1) / k;

  SymmetricSubspace sym{n, OperatorMatrix::Zero(full, n + 1)};
  for (unsigned idx = 0; idx < full; ++idx) {
    const int k = std::popcount(idx);
    sym.isometry(idx, k) = 1.0 / std::sqrt(binomial[static_cast<std::size_t>(k)]);
  }
  return sym;
}

namespace detail {

inline void check_clone_range(int m, int n) {
  if (m > n) throw InputDomainError("cloning: m must not exceed n");
  if (m < 1 || n > kMaxCloneQubits) {
    throw InputDomainError("cloning: need 1 <= m <= n <= " + std::to_string(kMaxCloneQubits));
  }
}

inline OperatorMatrix tensor_power(const OperatorMatrix& a, int times) {
  OperatorMatrix out = OperatorMatrix::Identity(1, 1);
  for (int i = 0; i < times; ++i) out = tensor(out, a);
  return out;
}

}  // namespace detail

/**
 * Optimal universal m -> n cloner restricted to its symmetric output,
 * C(rho) = (m+1)/(n+1) S_n (rho (x) I^{(n-m)}) S_n, returned in the spin-n/2
 * basis of the symmetric subspace. `rho` acts on m qubits.
 */
[[nodiscard]] inline OperatorMatrix clone_symmetric_output(int m, int n, const OperatorMatrix& rho) {
  detail::check_clone_range(m, n);
  const int dm = 1 << m;
  if (rho.rows() != dm || rho.cols() != dm) {
    throw DimensionMismatch("clone_symmetric_output: rho must act on m qubits");
  }
  const OperatorMatrix& v = symmetric_isometry(n).isometry;
  const int pad = 1 << (n - m);
  const OperatorMatrix padded = tensor(rho, OperatorMatrix::Identity(pad, pad));
  return (static_cast<double>(m + 1) / (n + 1)) * (v.adjoint() * padded * v);
}

/// Spin-m/2 operator sigma -> cloner output on spin n/2, through the symmetric isometries.
[[nodiscard]] inline OperatorMatrix clone_on_spin(int m, int n, const OperatorMatrix& sigma) {
  detail::check_clone_range(m, n);
  const OperatorMatrix& vm = symmetric_isometry(m).isometry;
  return clone_symmetric_output(m, n, vm * sigma * vm.adjoint());
}

/// <psi^n| C(psi^m) |psi^n>.
[[nodiscard]] inline double optimal_clone_global_fidelity(int m, int n, const StateVector& psi) {
  detail::check_clone_range(m, n);
  if (psi.size() != 2) throw DimensionMismatch("optimal_clone_global_fidelity: psi must be a qubit");
  const StateVector unit = psi.normalized();
  const OperatorMatrix out = clone_symmetric_output(m, n, detail::tensor_power(projector(unit), m));
  StateVector copies = StateVector::Ones(1);
  for (int i = 0; i < n; ++i) copies = tensor(copies, unit);
  const StateVector in_spin = symmetric_isometry(n).isometry.adjoint() * copies;
  return pure_fidelity(out, in_spin);
}

struct CloneComparison {
  double clone = 0.0;
  double stretch = 0.0;
  double delta = 0.0;
};

[[nodiscard]] inline CloneComparison stretch_equals_clone(int m, int n) {
  CloneComparison out;
  out.clone = optimal_clone_global_fidelity(m, n, basis_vector(2, 0));
  out.stretch = stretch_fidelity(HalfSpin(m), HalfSpin(n));
  out.delta = std::abs(out.clone - out.stretch);
  return out;
}

}  // namespace nostretch
