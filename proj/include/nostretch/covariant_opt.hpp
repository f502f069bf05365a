// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file covariant_opt.hpp
 * @brief Exact optimisation of the fidelity over every covariant channel j -> l.
 *
 * A Choi operator R on H_out (x) H_in is covariant iff it commutes with
 * D^l (x) conj(D^j). Writing conj(D^j) = C D^j C^dagger with the conjugation
 * intertwiner C|j,m> = (-1)^{j-m} |j,-m>, the commutant is spanned by the
 * projectors P_J onto the total-spin-J blocks of l (x) j (multiplicity free).
 * Hence R = sum_J a_J P_J with a_J >= 0, and Tr_out P_J = (2J+1)/(2j+1) I turns
 * trace preservation into the single constraint sum_J a_J (2J+1) = 2j+1. The
 * fidelity is linear, F = sum_J a_J f_J, so the optimum sits on a vertex.
 */

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nostretch/clebsch_gordan.hpp"
#include "nostretch/halfint.hpp"
#include "nostretch/linalg.hpp"
#include "nostretch/stretch_channel.hpp"

namespace nostretch {

class InfeasibleWeights : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IsotypicBlock {
  HalfSpin total;
  OperatorMatrix projector;
};

struct IsotypicDecomposition {
  HalfSpin j;
  HalfSpin l;
  std::vector<IsotypicBlock> blocks;  // ascending J
};

/// C with C|j,m> = (-1)^{j-m} |j,-m>; conj(D^j) = C D^j C^dagger.
[[nodiscard]] inline OperatorMatrix conjugation_intertwiner(HalfSpin j) {
  OperatorMatrix c = OperatorMatrix::Zero(j.dim(), j.dim());
  for (int col = 0; col < j.dim(); ++col) {
    const int tm = j.projection_at(col);
    const int j_minus_m = (j.twice() - tm) / 2;
    c(j.index_of(-tm), col) = (j_minus_m % 2 == 0) ? 1.0 : -1.0;
  }
  return c;
}

[[nodiscard]] inline IsotypicDecomposition decompose(HalfSpin j, HalfSpin l) {
  const int din = j.dim(), dout = l.dim();
  const OperatorMatrix lift =
      tensor(OperatorMatrix::Identity(dout, dout), conjugation_intertwiner(j));
  IsotypicDecomposition dec{j, l, {}};
  for (int tJ = std::abs(l.twice() - j.twice()); tJ <= l.twice() + j.twice(); tJ += 2) {
    const HalfSpin J(tJ);
    OperatorMatrix p = OperatorMatrix::Zero(dout * din, dout * din);
    for (int tM = -tJ; tM <= tJ; tM += 2) {
      StateVector v = StateVector::Zero(dout * din);
      for (int o = 0; o < dout; ++o) {
        const int tm1 = l.projection_at(o);
        const int tm2 = tM - tm1;
        if (!j.valid_projection(tm2)) continue;
        v(o * din + j.index_of(tm2)) = cg_coefficient(J, tM, l, tm1, j, tm2).to_double();
      }
      const StateVector w = lift * v;
      p += w * w.adjoint();
    }
    dec.blocks.push_back({J, std::move(p)});
  }
  return dec;
}

/// maximise sum_J a_J f_J  s.t.  a_J >= 0, sum_J a_J (2J+1) = budget.
struct CovariantLP {
  std::vector<HalfSpin> totals;
  std::vector<double> objective;     // f_J
  std::vector<double> cost;          // 2J+1
  double budget = 0.0;               // 2j+1
};

struct CovariantOptimum {
  double fidelity = 0.0;
  std::vector<double> weights;  // a_J, aligned with the decomposition blocks
  HalfSpin winner;
  std::size_t winner_index = 0;
};

[[nodiscard]] inline CovariantLP fidelity_program(const IsotypicDecomposition& dec) {
  // |v> = |l,l> (x) (|j,j>)^T; the m-descending basis vector is real.
  const StateVector v = tensor(highest_weight(dec.l), highest_weight(dec.j));
  CovariantLP lp;
  lp.budget = dec.j.dim();
  for (const auto& block : dec.blocks) {
    lp.totals.push_back(block.total);
    lp.objective.push_back(v.dot(block.projector * v).real());
    lp.cost.push_back(block.total.dim());
  }
  return lp;
}

/// Vertex rule: all weight on argmax f_J / (2J+1), ties toward smaller J.
[[nodiscard]] inline CovariantOptimum solve(const CovariantLP& lp) {
  constexpr double tie = 1e-12;
  std::size_t best = 0;
  for (std::size_t i = 1; i < lp.objective.size(); ++i) {
    if (lp.objective[i] / lp.cost[i] > lp.objective[best] / lp.cost[best] + tie) best = i;
  }
  CovariantOptimum opt;
  opt.weights.assign(lp.objective.size(), 0.0);
  opt.weights[best] = lp.budget / lp.cost[best];
  opt.fidelity = opt.weights[best] * lp.objective[best];
  opt.winner = lp.totals[best];
  opt.winner_index = best;
  return opt;
}

[[nodiscard]] inline CovariantOptimum optimal_covariant_fidelity(HalfSpin j, HalfSpin l) {
  return solve(fidelity_program(decompose(j, l)));
}

/// R = sum_J a_J P_J; throws InfeasibleWeights off the constraint set.
[[nodiscard]] inline ChoiOperator choi_from_weights(const IsotypicDecomposition& dec,
                                                    const std::vector<double>& weights) {
  if (weights.size() != dec.blocks.size()) {
    throw InfeasibleWeights("choi_from_weights: one weight per isotypic block required");
  }
  double spent = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < -1e-12) throw InfeasibleWeights("choi_from_weights: negative weight");
    spent += weights[i] * dec.blocks[i].total.dim();
  }
  if (std::abs(spent - dec.j.dim()) > 1e-10) {
    throw InfeasibleWeights("choi_from_weights: sum_J a_J (2J+1) must equal 2j+1");
  }
  const Eigen::Index n = dec.blocks.front().projector.rows();
  ChoiOperator choi{dec.j, dec.l, OperatorMatrix::Zero(n, n)};
  for (std::size_t i = 0; i < weights.size(); ++i) choi.matrix += weights[i] * dec.blocks[i].projector;
  return choi;
}

/// a_J = Tr(P_J R) / (2J+1), the block content of an arbitrary Choi operator.
[[nodiscard]] inline std::vector<double> block_weights(const IsotypicDecomposition& dec,
                                                       const ChoiOperator& choi) {
  std::vector<double> out;
  for (const auto& block : dec.blocks) {
    out.push_back((block.projector * choi.matrix).trace().real() / block.total.dim());
  }
  return out;
}

}  // namespace nostretch
