// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file stretch_channel.hpp
 * @brief The optimal covariant channel from spin j to spin l.
 *
 * The Kraus family {M_k}, k = -kappa..kappa with kappa = |j - l|, is built as
 * the components of a rank-kappa irreducible tensor operator:
 *
 *     <l, m+k | M_k | j, m> = sqrt((2j+1)/(2l+1)) <l, m+k | j, m; kappa, k>.
 *
 * Schur's lemma then makes sum_k M_k^dagger M_k proportional to the identity
 * and the prefactor fixes it to exactly I. Because U^l M_k U^{j dagger} mixes
 * the M_k through the unitary D^kappa, the map rho -> sum_k M_k rho M_k^dagger
 * is rotation covariant.
 */

#pragma once

#include <cmath>
#include <vector>

#include "nostretch/clebsch_gordan.hpp"
#include "nostretch/halfint.hpp"
#include "nostretch/linalg.hpp"
#include "nostretch/su2.hpp"

namespace nostretch {

/// Phase convention for the Kraus matrix elements.
enum class KrausPhase {
  /// Irreducible tensor operator components; covariant.
  tensor_operator,
  /// s_jl <kappa,k | j,-m; l,m+k> taken literally in the Condon-Shortley
  /// convention. Same moduli, but an m-dependent sign (-1)^{j-m} breaks
  /// covariance. Kept as a negative control.
  bare_clebsch_gordan,
};

class StretchChannel {
 public:
  StretchChannel(HalfSpin j, HalfSpin l, std::vector<OperatorMatrix> kraus)
      : j_(j), l_(l), kraus_(std::move(kraus)) {
    if (static_cast<int>(kraus_.size()) != spin_gap(j, l).dim()) {
      throw InputDomainError("StretchChannel: expected 2|j-l|+1 Kraus operators");
    }
    for (const auto& m : kraus_) {
      if (m.rows() != l.dim() || m.cols() != j.dim()) {
        throw DimensionMismatch("StretchChannel: Kraus operator has wrong shape");
      }
    }
  }

  [[nodiscard]] HalfSpin input_spin() const noexcept { return j_; }
  [[nodiscard]] HalfSpin output_spin() const noexcept { return l_; }
  [[nodiscard]] HalfSpin rank() const noexcept { return spin_gap(j_, l_); }

  [[nodiscard]] const std::vector<OperatorMatrix>& kraus() const noexcept { return kraus_; }

  /// M_k for twice-k in {-2kappa, ..., 2kappa}.
  [[nodiscard]] const OperatorMatrix& kraus_at(int twice_k) const {
    rank().require_projection(twice_k);
    return kraus_[static_cast<std::size_t>(rank().index_of(-twice_k))];
  }

 private:
  HalfSpin j_;
  HalfSpin l_;
  std::vector<OperatorMatrix> kraus_;  // ascending k
};

[[nodiscard]] inline StretchChannel build_channel(HalfSpin j, HalfSpin l,
                                                  KrausPhase phase = KrausPhase::tensor_operator) {
  const HalfSpin kappa = spin_gap(j, l);
  const double tensor_norm = std::sqrt(static_cast<double>(j.dim()) / l.dim());
  const double bare_norm = std::sqrt(static_cast<double>(j.dim()) / kappa.dim());

  std::vector<OperatorMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kappa.dim()));
  for (int tk = -kappa.twice(); tk <= kappa.twice(); tk += 2) {
    OperatorMatrix m = OperatorMatrix::Zero(l.dim(), j.dim());
    for (int col = 0; col < j.dim(); ++col) {
      const int tm = j.projection_at(col);
      const int tn = tm + tk;
      if (!l.valid_projection(tn)) continue;
      const double entry =
          phase == KrausPhase::tensor_operator
              ? tensor_norm * cg_coefficient(l, tn, j, tm, kappa, tk).to_double()
              : bare_norm * cg_coefficient(kappa, tk, j, -tm, l, tn).to_double();
      m(l.index_of(tn), col) = entry;
    }
    kraus.push_back(std::move(m));
  }
  return StretchChannel(j, l, std::move(kraus));
}

/// sum_k M_k rho M_k^dagger.
[[nodiscard]] inline OperatorMatrix apply_channel(const StretchChannel& ch, const OperatorMatrix& rho) {
  const int din = ch.input_spin().dim();
  if (rho.rows() != din || rho.cols() != din) {
    throw DimensionMismatch("apply_channel: input operator must be " + std::to_string(din) + "x" +
                            std::to_string(din));
  }
  const int dout = ch.output_spin().dim();
  OperatorMatrix out = OperatorMatrix::Zero(dout, dout);
  for (const auto& m : ch.kraus()) out += m * rho * m.adjoint();
  return out;
}

/// Heisenberg picture: sum_k M_k^dagger a M_k.
[[nodiscard]] inline OperatorMatrix apply_dual(const StretchChannel& ch, const OperatorMatrix& a) {
  const int dout = ch.output_spin().dim();
  if (a.rows() != dout || a.cols() != dout) {
    throw DimensionMismatch("apply_dual: observable must be " + std::to_string(dout) + "x" +
                            std::to_string(dout));
  }
  const int din = ch.input_spin().dim();
  OperatorMatrix out = OperatorMatrix::Zero(din, din);
  for (const auto& m : ch.kraus()) out += m.adjoint() * a * m;
  return out;
}

/// || sum_k M_k^dagger M_k - I ||_F
[[nodiscard]] inline double trace_preservation_residual(const StretchChannel& ch) {
  const int din = ch.input_spin().dim();
  OperatorMatrix sum = OperatorMatrix::Zero(din, din);
  for (const auto& m : ch.kraus()) sum += m.adjoint() * m;
  return (sum - OperatorMatrix::Identity(din, din)).norm();
}

/// Choi-Jamiolkowski operator on H_out (x) H_in.
struct ChoiOperator {
  HalfSpin j;
  HalfSpin l;
  OperatorMatrix matrix;

  /// Tr_out R, which is I_in for a trace-preserving map.
  [[nodiscard]] OperatorMatrix input_marginal() const {
    return partial_trace(matrix, Factor::right, l.dim(), j.dim());
  }
};

/// R = (M (x) id)(|Omega><Omega|), |Omega> = sum_m |m>|m> unnormalized.
[[nodiscard]] inline ChoiOperator choi_of(const StretchChannel& ch) {
  const int din = ch.input_spin().dim(), dout = ch.output_spin().dim();
  OperatorMatrix r = OperatorMatrix::Zero(dout * din, dout * din);
  StateVector v(dout * din);
  for (const auto& m : ch.kraus()) {
    for (int o = 0; o < dout; ++o)
      for (int i = 0; i < din; ++i) v(o * din + i) = m(o, i);
    r += v * v.adjoint();
  }
  return {ch.input_spin(), ch.output_spin(), std::move(r)};
}

/// M(rho) = Tr_in[(I_out (x) rho^T) R].
[[nodiscard]] inline OperatorMatrix channel_from_choi(const ChoiOperator& choi,
                                                      const OperatorMatrix& rho) {
  const int din = choi.j.dim(), dout = choi.l.dim();
  if (rho.rows() != din || rho.cols() != din) {
    throw DimensionMismatch("channel_from_choi: input has wrong dimension");
  }
  const OperatorMatrix lifted = tensor(OperatorMatrix::Identity(dout, dout),
                                       transpose_in_basis(rho)) * choi.matrix;
  return partial_trace(lifted, Factor::left, dout, din);
}

/// D^l(g) (x) conj(D^j(g)), the representation commuting with covariant Choi operators.
[[nodiscard]] inline OperatorMatrix choi_symmetry(HalfSpin j, HalfSpin l, const GroupElement& g) {
  return tensor(wigner_D(l, g), conj(wigner_D(j, g)));
}

/**
 * Largest covariance defect over `n_samples` Haar rotations.
 *
 * Each sample contributes both || M(U rho U^dag) - U M(rho) U^dag ||_F for a
 * random density rho and || [D^l (x) conj D^j, R] ||_F.
 */
[[nodiscard]] inline double verify_covariance(const StretchChannel& ch, int n_samples, Rng& rng) {
  if (n_samples < 1) throw InputDomainError("verify_covariance: n_samples must be >= 1");
  const HalfSpin j = ch.input_spin(), l = ch.output_spin();
  const auto n_kraus = static_cast<Eigen::Index>(ch.kraus().size());
  // Columns hold |M_k>> (row-major vec), so R = V V^dag.
  const auto vec_columns = [&](const auto& transform) {
    OperatorMatrix cols(l.dim() * j.dim(), n_kraus);
    for (Eigen::Index k = 0; k < n_kraus; ++k) {
      const OperatorMatrix m = transform(ch.kraus()[static_cast<std::size_t>(k)]);
      for (int o = 0; o < l.dim(); ++o)
        for (int i = 0; i < j.dim(); ++i) cols(o * j.dim() + i, k) = m(o, i);
    }
    return cols;
  };
  const OperatorMatrix plain = vec_columns([](const OperatorMatrix& m) { return m; });

  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const GroupElement g = haar_sample(rng);
    const OperatorMatrix rho = random_density(j.dim(), rng);
    const OperatorMatrix uj = wigner_D(j, g), ul = wigner_D(l, g);
    const OperatorMatrix lhs = apply_channel(ch, uj * rho * uj.adjoint());
    const OperatorMatrix rhs = ul * apply_channel(ch, rho) * ul.adjoint();
    worst = std::max(worst, (lhs - rhs).norm());

    // ||[S, R]||_F = ||S R S^dag - R||_F for unitary S = D^l (x) conj(D^j), and
    // S |M>> = |D^l M D^{j dagger}>>, so S R S^dag - R = [A, B] [A, -B]^dag.
    const OperatorMatrix ujd = uj.adjoint();
    const OperatorMatrix moved =
        vec_columns([&](const OperatorMatrix& m) -> OperatorMatrix { return ul * m * ujd; });
    OperatorMatrix left(plain.rows(), 2 * n_kraus), right(plain.rows(), 2 * n_kraus);
    left << moved, plain;
    right << moved, -plain;
    worst = std::max(worst, (left * right.adjoint()).norm());
  }
  return worst;
}

/// Optimal fidelity min(1, (2j+1)/(2l+1)).
[[nodiscard]] inline double stretch_fidelity(HalfSpin j, HalfSpin l) {
  if (j >= l) return 1.0;
  return static_cast<double>(j.dim()) / l.dim();
}

/// <l,l| M(|j,j><j,j|) |l,l> evaluated through the channel.
[[nodiscard]] inline double channel_fidelity(const StretchChannel& ch) {
  const OperatorMatrix out = apply_channel(ch, projector(highest_weight(ch.input_spin())));
  return pure_fidelity(out, highest_weight(ch.output_spin()));
}

/**
 * Exact populations of M(|j,j><j,j|) on |l,l>, |l,l-1>, ..., |l,-l>.
 *
 * For j >= l the output is |l,l><l,l|. For j < l the weight on |l,k+j> is
 * (2j+1)/(2l+1) (2l-2j)! (l+j+k)! / ((2l)! (l-j+k)!) for k = j-l .. l-j.
 */
[[nodiscard]] inline std::vector<Rational> north_output_weights(HalfSpin j, HalfSpin l) {
  std::vector<Rational> w(static_cast<std::size_t>(l.dim()), Rational(0));
  if (j >= l) {
    w[0] = 1;
    return w;
  }
  const int tj = j.twice(), tl = l.twice();
  const Rational lead(j.dim(), l.dim());
  for (int tk = tj - tl; tk <= tl - tj; tk += 2) {
    const Rational ratio(factorial(tl - tj) * factorial((tl + tj + tk) / 2),
                         factorial(tl) * factorial((tl - tj + tk) / 2));
    w[static_cast<std::size_t>(l.index_of(tk + tj))] = lead * ratio;
  }
  return w;
}

[[nodiscard]] inline OperatorMatrix north_output_closed_form(HalfSpin j, HalfSpin l) {
  const auto w = north_output_weights(j, l);
  OperatorMatrix out = OperatorMatrix::Zero(l.dim(), l.dim());
  for (int i = 0; i < l.dim(); ++i) out(i, i) = w[static_cast<std::size_t>(i)].convert_to<double>();
  return out;
}

}  // namespace nostretch
