// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "nostretch/clone_bridge.hpp"

namespace ns = nostretch;
using ns::HalfSpin;
using ns::OperatorMatrix;
using ns::StateVector;

namespace {

double max_abs(const OperatorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(SymmetricIsometry, SingleQubitIsIdentity) {
  EXPECT_LT(max_abs(ns::symmetric_isometry(1).isometry - OperatorMatrix::Identity(2, 2)), 1e-15);
}

TEST(SymmetricIsometry, TwoQubitDickeState) {
  const OperatorMatrix v = ns::symmetric_isometry(2).isometry;
  StateVector expected = StateVector::Zero(4);
  expected(1) = expected(2) = 1.0 / std::sqrt(2.0);  // (|01> + |10>)/sqrt 2
  EXPECT_LT((v.col(1) - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((v.col(0) - ns::basis_vector(4, 0)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((v.col(2) - ns::basis_vector(4, 3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SymmetricIsometry, ColumnsAreOrthonormalAndSymmetric) {
  for (int n = 1; n <= 8; ++n) {
    const OperatorMatrix v = ns::symmetric_isometry(n).isometry;
    EXPECT_LT(max_abs(v.adjoint() * v - OperatorMatrix::Identity(n + 1, n + 1)), 1e-12);
    // Invariant under the swap of the first two qubits.
    if (n >= 2) {
      for (unsigned idx = 0; idx < (1u << n); ++idx) {
        const unsigned hi = (idx >> (n - 1)) & 1u, next = (idx >> (n - 2)) & 1u;
        unsigned swapped = idx & ~((1u << (n - 1)) | (1u << (n - 2)));
        swapped |= (next << (n - 1)) | (hi << (n - 2));
        EXPECT_LT((v.row(idx) - v.row(swapped)).cwiseAbs().maxCoeff(), 1e-15);
      }
    }
  }
}

TEST(SymmetricIsometry, RangeChecked) {
  EXPECT_THROW((void)ns::symmetric_isometry(0), ns::InputDomainError);
  EXPECT_THROW((void)ns::symmetric_isometry(13), ns::InputDomainError);
}

TEST(SymmetricIsometry, MapsCoherentStatesToProductStates) {
  ns::Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    const auto g = ns::haar_sample(rng);
    const StateVector qubit = ns::coherent_state(HalfSpin(1), g);
    StateVector product = StateVector::Ones(1);
    for (int i = 0; i < n; ++i) product = ns::tensor(product, qubit);
    const StateVector lifted = ns::symmetric_isometry(n).isometry * ns::coherent_state(HalfSpin(n), g);
    EXPECT_LT((lifted - product).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Cloner, FidelityExamples) {
  const StateVector up = ns::basis_vector(2, 0);
  EXPECT_NEAR(ns::optimal_clone_global_fidelity(1, 2, up), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(ns::optimal_clone_global_fidelity(2, 4, up), 3.0 / 5.0, 1e-12);
  for (int m = 1; m <= 6; ++m) EXPECT_NEAR(ns::optimal_clone_global_fidelity(m, m, up), 1.0, 1e-12);
}

TEST(Cloner, FormulaAcrossRange) {
  for (int m = 1; m <= 8; ++m)
    for (int n = m; n <= 8; ++n)
      EXPECT_NEAR(ns::optimal_clone_global_fidelity(m, n, ns::basis_vector(2, 1)), (m + 1.0) / (n + 1.0), 1e-12);
}

TEST(Cloner, StateIndependent) {
  ns::Rng rng(2);
  for (auto [m, n] : {std::pair{1, 2}, {2, 5}, {3, 4}}) {
    const double reference = ns::optimal_clone_global_fidelity(m, n, ns::basis_vector(2, 0));
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      worst = std::max(worst, std::abs(ns::optimal_clone_global_fidelity(m, n, ns::random_state(2, rng)) - reference));
    }
    EXPECT_LE(worst, 1e-10);
  }
}

TEST(Cloner, TracePreservingOnSymmetricInputs) {
  ns::Rng rng(3);
  for (auto [m, n] : {std::pair{1, 3}, {2, 4}, {3, 6}}) {
    for (int s = 0; s < 5; ++s) {
      const OperatorMatrix sigma = ns::random_density(m + 1, rng);
      const OperatorMatrix out = ns::clone_on_spin(m, n, sigma);
      EXPECT_NEAR(out.trace().real(), 1.0, 1e-10);
      EXPECT_TRUE(ns::is_density(out));
    }
  }
}

TEST(Cloner, RangeErrors) {
  const StateVector up = ns::basis_vector(2, 0);
  EXPECT_THROW((void)ns::optimal_clone_global_fidelity(3, 2, up), ns::InputDomainError);
  EXPECT_THROW((void)ns::optimal_clone_global_fidelity(0, 2, up), ns::InputDomainError);
  EXPECT_THROW((void)ns::optimal_clone_global_fidelity(1, 9, up), ns::InputDomainError);
  EXPECT_THROW((void)ns::optimal_clone_global_fidelity(1, 2, ns::basis_vector(3, 0)), ns::DimensionMismatch);
  EXPECT_THROW((void)ns::clone_symmetric_output(1, 2, OperatorMatrix::Identity(3, 3)), ns::DimensionMismatch);
}

TEST(Cloner, MatchesStretchOnCoherentInputs) {
  ns::Rng rng(4);
  for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 7}}) {
    const auto stretch = ns::build_channel(HalfSpin(m), HalfSpin(n));
    for (int s = 0; s < 5; ++s) {
      const OperatorMatrix in = ns::projector(ns::coherent_state(HalfSpin(m), ns::haar_sample(rng)));
      EXPECT_LT(max_abs(ns::clone_on_spin(m, n, in) - ns::apply_channel(stretch, in)), 1e-9);
    }
  }
}

TEST(StretchEqualsClone, Examples) {
  const auto a = ns::stretch_equals_clone(1, 2);
  EXPECT_NEAR(a.clone, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(a.stretch, 2.0 / 3.0, 1e-12);
  EXPECT_LE(a.delta, 1e-9);
  const auto b = ns::stretch_equals_clone(2, 3);
  EXPECT_NEAR(b.clone, 0.75, 1e-12);
  EXPECT_NEAR(b.stretch, 0.75, 1e-12);
  const auto c = ns::stretch_equals_clone(3, 3);
  EXPECT_NEAR(c.clone, 1.0, 1e-12);
  EXPECT_NEAR(c.stretch, 1.0, 1e-12);
}
