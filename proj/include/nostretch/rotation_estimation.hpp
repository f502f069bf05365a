// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rotation_estimation.hpp
 * @brief Covariant rotation estimation through a stretch channel.
 *
 * All densities are taken with respect to the normalised Haar measure.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nostretch/halfint.hpp"
#include "nostretch/linalg.hpp"
#include "nostretch/stretch_channel.hpp"
#include "nostretch/su2.hpp"

namespace nostretch {

/// Covariant POVM (2j+1) D(g)|j,j><j,j|D(g)^dagger dg seeded by the highest weight.
struct CovariantPovm {
  HalfSpin j;
};

[[nodiscard]] inline OperatorMatrix povm_density(const CovariantPovm& povm, const GroupElement& g) {
  return static_cast<double>(povm.j.dim()) * projector(coherent_state(povm.j, g));
}

/// <j,j| P_e |j,j>.
[[nodiscard]] inline double likelihood(HalfSpin j) {
  return pure_fidelity(povm_density(CovariantPovm{j}, GroupElement::identity()), highest_weight(j));
}

/// Entrywise max |mean_g P_g - I| over `n_samples` stratified Haar points.
[[nodiscard]] inline double povm_completeness_deviation(HalfSpin j, int n_samples, Rng& rng) {
  const CovariantPovm povm{j};
  OperatorMatrix mean = OperatorMatrix::Zero(j.dim(), j.dim());
  for (const GroupElement& g : haar_stratified_samples(n_samples, rng)) mean += povm_density(povm, g);
  mean /= static_cast<double>(n_samples);
  return (mean - OperatorMatrix::Identity(j.dim(), j.dim())).cwiseAbs().maxCoeff();
}

enum class WitnessVerdict { allowed, impossible };

struct WitnessResult {
  /// |<theta(h)|theta(g)>| needed to keep the total overlap; +inf when unbounded.
  double required_overlap = 1.0;
  WitnessVerdict verdict = WitnessVerdict::allowed;

  [[nodiscard]] bool unbounded() const noexcept { return std::isinf(required_overlap); }
};

/**
 * Ancilla overlap a unitary j -> l transfer would need for two rotations whose
 * relative second Euler angle is `beta`.
 *
 * Equal to the ratio of coherent overlaps, (cos beta/2)^{2j-2l}. At beta = pi
 * with l > j the requirement is unbounded and reported as +inf.
 */
[[nodiscard]] inline WitnessResult no_stretching_witness(HalfSpin j, HalfSpin l, double beta) {
  if (!(beta >= 0.0 && beta <= std::numbers::pi)) {
    throw InputDomainError("no_stretching_witness: beta must lie in [0, pi]");
  }
  constexpr double orthogonal_edge = 1e-12;
  WitnessResult out;
  if (std::numbers::pi - beta < orthogonal_edge) {
    // Both coherent overlaps vanish; take the limit of the ratio.
    if (l > j) {
      out.required_overlap = std::numeric_limits<double>::infinity();
    } else {
      out.required_overlap = (l == j) ? 1.0 : 0.0;
    }
  } else {
    const GroupElement h = GroupElement::identity();
    const GroupElement g{0.0, beta, 0.0};
    out.required_overlap = coherent_overlap_modulus(j, g, h) / coherent_overlap_modulus(l, g, h);
  }
  out.verdict = out.required_overlap > 1.0 ? WitnessVerdict::impossible : WitnessVerdict::allowed;
  return out;
}

/// M^*(P^(l)_g), the output POVM pulled back to the input.
[[nodiscard]] inline OperatorMatrix evolved_povm_density(const StretchChannel& ch,
                                                         const GroupElement& g) {
  return apply_dual(ch, povm_density(CovariantPovm{ch.output_spin()}, g));
}

[[nodiscard]] inline OperatorMatrix evolved_povm_density(HalfSpin j, HalfSpin l,
                                                         const GroupElement& g) {
  return evolved_povm_density(build_channel(j, l), g);
}

struct ConditionalDensities {
  double output = 0.0;  // p(g|h), P^(l)_g after the channel
  double input = 0.0;   // q(g|h), P^(j)_g directly
};

[[nodiscard]] inline ConditionalDensities conditional_densities(const StretchChannel& ch,
                                                                const GroupElement& g,
                                                                const GroupElement& h) {
  const HalfSpin j = ch.input_spin(), l = ch.output_spin();
  const OperatorMatrix signal = projector(coherent_state(j, h));
  ConditionalDensities out;
  out.output = (povm_density(CovariantPovm{l}, g) * apply_channel(ch, signal)).trace().real();
  out.input = (povm_density(CovariantPovm{j}, g) * signal).trace().real();
  return out;
}

[[nodiscard]] inline ConditionalDensities conditional_densities(HalfSpin j, HalfSpin l,
                                                                const GroupElement& g,
                                                                const GroupElement& h) {
  return conditional_densities(build_channel(j, l), g, h);
}

struct MutualInformation {
  double input = 0.0;   // nats, POVM on the spin-j signal
  double output = 0.0;  // nats, POVM on the spin-l channel output
  /// |input - output| of the identity channel j -> j on the same grid and samples.
  double calibration = 0.0;
};

namespace detail {

/// Product grid over (alpha, cos beta) with trapezoid weights summing to 1.
struct HaarGrid {
  std::vector<GroupElement> nodes;
  RealVector weights;
};

inline HaarGrid haar_grid(int grid_size) {
  HaarGrid grid;
  const int n = grid_size;
  grid.weights.resize(static_cast<Eigen::Index>(n) * n);
  for (int a = 0; a < n; ++a) {
    // Periodic axis: the trapezoid rule reduces to equal weights.
    const double alpha = 2.0 * std::numbers::pi * a / n;
    for (int b = 0; b < n; ++b) {
      const double cos_beta = -1.0 + 2.0 * b / (n - 1);
      const double end_factor = (b == 0 || b == n - 1) ? 0.5 : 1.0;
      grid.nodes.push_back({alpha, std::acos(std::clamp(cos_beta, -1.0, 1.0)), 0.0});
      grid.weights(a * n + b) = end_factor / (n * (n - 1.0));
    }
  }
  return grid;
}

/// sum over the grid of w(g) p(g|h) log p(g|h), p(g|h) = (2x+1) <c_g| rho |c_g>.
/// `seeds` holds one coherent state c_g per column.
inline double entropy_gain(const OperatorMatrix& seeds, const RealVector& weights, double dim,
                           const OperatorMatrix& rho) {
  const OperatorMatrix moved = rho * seeds;
  const RealVector p = dim * seeds.conjugate().cwiseProduct(moved).colwise().sum().real().transpose();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) acc += weights(i) * p(i) * std::log(p(i));
  }
  return acc;
}

}  // namespace detail

/**
 * Discretised mutual information between a Haar-random rotation h and the
 * covariant POVM outcome g, at the channel input and output.
 *
 * The outcome marginal is uniform (POVM completeness under a Haar prior), so
 * I = E_h[ integral dg p(g|h) log p(g|h) ]. The g-integral runs over a
 * (alpha, cos beta, gamma) product grid; the seed |x,x> is a J_z eigenvector,
 * so D(g)|x,x> depends on gamma only through a phase and the gamma axis
 * integrates to one. The h-average uses `n_samples` Haar draws.
 */
[[nodiscard]] inline MutualInformation mutual_information_check(HalfSpin j, HalfSpin l,
                                                                int grid_size, int n_samples,
                                                                Rng& rng) {
  if (grid_size < 8) throw InputDomainError("mutual_information_check: grid_size must be >= 8");
  if (n_samples < 1) throw InputDomainError("mutual_information_check: n_samples must be >= 1");
  const detail::HaarGrid grid = detail::haar_grid(grid_size);
  const auto seeds_for = [&](HalfSpin x) {
    OperatorMatrix seeds(x.dim(), static_cast<Eigen::Index>(grid.nodes.size()));
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
      seeds.col(static_cast<Eigen::Index>(i)) = coherent_state(x, grid.nodes[i]);
    }
    return seeds;
  };
  const auto seeds_in = seeds_for(j);
  const auto seeds_out = seeds_for(l);
  const StretchChannel stretch = build_channel(j, l);
  const StretchChannel identity = build_channel(j, j);

  MutualInformation mi;
  double id_in = 0.0, id_out = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const OperatorMatrix signal = projector(coherent_state(j, haar_sample(rng)));
    const double in = detail::entropy_gain(seeds_in, grid.weights, j.dim(), signal);
    mi.input += in;
    mi.output += detail::entropy_gain(seeds_out, grid.weights, l.dim(),
                                      apply_channel(stretch, signal));
    id_in += in;
    id_out += detail::entropy_gain(seeds_in, grid.weights, j.dim(),
                                   apply_channel(identity, signal));
  }
  mi.input /= n_samples;
  mi.output /= n_samples;
  mi.calibration = std::abs(id_in - id_out) / n_samples;
  return mi;
}

}  // namespace nostretch
