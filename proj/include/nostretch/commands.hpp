// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file commands.hpp
 * @brief Batch commands behind the `nostretch` CLI. Each returns a RunReport;
 * argument parsing, output formats and exit codes live in tools/.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "nostretch/clone_bridge.hpp"
#include "nostretch/covariant_opt.hpp"
#include "nostretch/report.hpp"
#include "nostretch/rotation_estimation.hpp"
#include "nostretch/stretch_channel.hpp"

namespace nostretch {

inline constexpr int kDefaultCovarianceSamples = 50;
inline constexpr int kDefaultInfoSamples = 100;
inline constexpr int kDefaultInfoGrid = 32;
inline constexpr int kDefaultPovmSamples = 2000;
inline constexpr int kPovmSpotChecks = 100;
inline constexpr double kDualIdentityTol = 1e-9;
inline constexpr double kOptimumTol = 1e-9;
inline constexpr double kWitnessTol = 1e-12;
inline constexpr double kDensityMatchTol = 1e-9;
inline constexpr double kInformationTol = 0.01;

namespace detail {

inline std::string spin_pair(HalfSpin j, HalfSpin l) {
  return "j=" + j.to_string() + ", l=" + l.to_string();
}

inline std::string fmt(double x) { return format_significant(x); }

}  // namespace detail

inline RunReport cmd_fidelity(int two_j, int two_l) {
  const HalfSpin j(two_j), l(two_l);
  RunReport rep;
  rep.command = "fidelity";
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l", std::to_string(two_l));
  const double closed = stretch_fidelity(j, l);
  const double via_channel = channel_fidelity(build_channel(j, l));
  rep.lines.push_back(detail::spin_pair(j, l));
  rep.lines.push_back("closed form F = " + detail::fmt(closed));
  rep.lines.push_back("channel     F = " + detail::fmt(via_channel));
  rep.at_most("fidelity_difference", std::abs(closed - via_channel), 1e-10);
  return rep;
}

/// Rows (two_l, F) for two_l = 0..two_l_max, F from the closed form and cross-checked on the channel.
inline RunReport cmd_table(int two_j, int two_l_max) {
  const HalfSpin j(two_j);
  if (two_l_max < 0) throw InputDomainError("two_l_max must be non-negative");
  RunReport rep;
  rep.command = "table";
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l_max", std::to_string(two_l_max));
  double worst = 0.0;
  for (int tl = 0; tl <= two_l_max; ++tl) {
    const HalfSpin l(tl);
    const double f = stretch_fidelity(j, l);
    worst = std::max(worst, std::abs(f - channel_fidelity(build_channel(j, l))));
    rep.table.push_back({tl, f});
  }
  rep.at_most("max_channel_deviation", worst, 1e-10);
  return rep;
}

inline RunReport cmd_verify(int two_j, int two_l, int samples, std::uint64_t seed,
                            double covariance_tol = tol::covariance,
                            KrausPhase phase = KrausPhase::tensor_operator) {
  const HalfSpin j(two_j), l(two_l);
  if (samples < 1) throw InputDomainError("samples must be >= 1");
  RunReport rep;
  rep.command = "verify";
  rep.seed = seed;
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l", std::to_string(two_l));
  rep.param("samples", std::to_string(samples));
  rep.param("tol", detail::fmt(covariance_tol));
  rep.param("kraus_phase",
            phase == KrausPhase::tensor_operator ? "tensor_operator" : "bare_clebsch_gordan");
  rep.lines.push_back(detail::spin_pair(j, l));

  const StretchChannel ch = build_channel(j, l, phase);
  const ChoiOperator choi = choi_of(ch);
  const int expected_kraus = spin_gap(j, l).dim();

  rep.check("kraus_count", static_cast<double>(ch.kraus().size()), 0.0,
            static_cast<int>(ch.kraus().size()) == expected_kraus);
  rep.at_most("trace_preservation", trace_preservation_residual(ch), 1e-10);
  const RealVector ev = eigvals_hermitian(choi.matrix);
  rep.check("choi_min_eigenvalue", ev(0), tol::psd, ev(0) >= -tol::psd);
  rep.check("choi_rank", static_cast<double>((ev.array() > 1e-9).count()), 0.0,
            (ev.array() > 1e-9).count() == expected_kraus);
  rep.at_most("choi_input_marginal",
              (choi.input_marginal() - OperatorMatrix::Identity(j.dim(), j.dim())).norm(), 1e-10);
  Rng rng(seed);
  rep.at_most("covariance", verify_covariance(ch, samples, rng), covariance_tol);

  const OperatorMatrix north = apply_channel(ch, projector(highest_weight(j)));
  rep.at_most("closed_form_output", (north - north_output_closed_form(j, l)).norm(), 1e-10);
  rep.at_most("fidelity_law",
              std::abs(pure_fidelity(north, highest_weight(l)) - stretch_fidelity(j, l)), 1e-10);
  if (j > l) {
    rep.at_most("exact_shrink", trace_distance(north, projector(highest_weight(l))), 1e-10);
  }
  if (l > j) {
    const OperatorMatrix pulled =
        static_cast<double>(l.dim()) * apply_dual(ch, projector(highest_weight(l)));
    const OperatorMatrix target = static_cast<double>(j.dim()) * projector(highest_weight(j));
    rep.at_most("dual_identity", (pulled - target).norm(), kDualIdentityTol);
  }
  return rep;
}

inline RunReport cmd_optimize(int two_j, int two_l) {
  const HalfSpin j(two_j), l(two_l);
  RunReport rep;
  rep.command = "optimize";
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l", std::to_string(two_l));
  rep.lines.push_back(detail::spin_pair(j, l));

  const IsotypicDecomposition dec = decompose(j, l);
  const CovariantLP lp = fidelity_program(dec);
  const CovariantOptimum opt = solve(lp);
  for (std::size_t i = 0; i < lp.totals.size(); ++i) {
    rep.lines.push_back("  J=" + lp.totals[i].to_string() + "  f_J=" + detail::fmt(lp.objective[i]) +
                        "  f_J/(2J+1)=" + detail::fmt(lp.objective[i] / lp.cost[i]) +
                        "  a_J=" + detail::fmt(opt.weights[i]));
  }
  const double closed = stretch_fidelity(j, l);
  rep.lines.push_back("winning block J=" + opt.winner.to_string());
  rep.lines.push_back("F_star = " + detail::fmt(opt.fidelity) + "  closed form = " + detail::fmt(closed));
  rep.at_most("optimum_vs_closed_form", std::abs(opt.fidelity - closed), kOptimumTol);
  rep.check("winning_block_twice_J", opt.winner.twice(), 0.0, opt.winner == spin_gap(j, l));
  return rep;
}

inline RunReport cmd_witness(int two_j, int two_l, double beta) {
  const HalfSpin j(two_j), l(two_l);
  RunReport rep;
  rep.command = "witness";
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l", std::to_string(two_l));
  rep.param("beta", detail::fmt(beta));
  const WitnessResult w = no_stretching_witness(j, l, beta);
  const bool impossible = w.verdict == WitnessVerdict::impossible;
  rep.lines.push_back(detail::spin_pair(j, l));
  rep.lines.push_back("required ancilla overlap = " + detail::fmt(w.required_overlap) + "  -> " +
                      (impossible ? "IMPOSSIBLE" : "ALLOWED"));
  const bool interior = beta > 0.0 && std::numbers::pi - beta >= 1e-12;
  if (w.unbounded()) {
    rep.check("closed_form_match", w.required_overlap, kWitnessTol, l > j);
  } else {
    const double expected = std::pow(std::cos(0.5 * beta), j.twice() - l.twice());
    rep.at_most("closed_form_match", std::abs(w.required_overlap - expected), kWitnessTol);
  }
  const bool should_be_impossible = l > j && (interior || w.unbounded());
  rep.check("verdict", impossible ? 1.0 : 0.0, 0.0, impossible == should_be_impossible);
  return rep;
}

inline RunReport cmd_povm(int two_j, int samples, std::uint64_t seed) {
  const HalfSpin j(two_j);
  if (samples < 1) throw InputDomainError("samples must be >= 1");
  RunReport rep;
  rep.command = "povm";
  rep.seed = seed;
  rep.param("two_j", std::to_string(two_j));
  rep.param("samples", std::to_string(samples));
  const CovariantPovm povm{j};
  const double lik = likelihood(j);
  rep.lines.push_back("j=" + j.to_string() + "  likelihood <j,j|P_e|j,j> = " + detail::fmt(lik));
  rep.at_most("likelihood_equals_2j+1", std::abs(lik - j.dim()), 1e-12);

  Rng rng(seed);
  double worst_trace = 0.0, worst_eig = 0.0;
  for (int s = 0; s < std::min(samples, kPovmSpotChecks); ++s) {
    const OperatorMatrix p = povm_density(povm, haar_sample(rng));
    worst_trace = std::max(worst_trace, std::abs(p.trace().real() - j.dim()));
    worst_eig = std::min(worst_eig, eigvals_hermitian(p)(0));
  }
  rep.at_most("trace_equals_2j+1", worst_trace, 1e-10);
  rep.check("min_eigenvalue", worst_eig, tol::psd, worst_eig >= -tol::psd);
  rep.at_most("completeness_max_entry", povm_completeness_deviation(j, samples, rng),
              5.0 / std::sqrt(static_cast<double>(samples)));
  return rep;
}

inline RunReport cmd_info_check(int two_j, int two_l, int samples, std::uint64_t seed,
                                int grid_size = kDefaultInfoGrid) {
  const HalfSpin j(two_j), l(two_l);
  if (samples < 1) throw InputDomainError("samples must be >= 1");
  RunReport rep;
  rep.command = "info-check";
  rep.seed = seed;
  rep.param("two_j", std::to_string(two_j));
  rep.param("two_l", std::to_string(two_l));
  rep.param("samples", std::to_string(samples));
  rep.param("grid", std::to_string(grid_size));
  rep.lines.push_back(detail::spin_pair(j, l));

  Rng rng(seed);
  const StretchChannel ch = build_channel(j, l);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const GroupElement g = haar_sample(rng), h = haar_sample(rng);
    const ConditionalDensities d = conditional_densities(ch, g, h);
    worst = std::max(worst, std::abs(d.output - d.input));
  }
  const MutualInformation mi = mutual_information_check(j, l, grid_size, samples, rng);
  rep.lines.push_back("max |p(g|h) - q(g|h)| = " + detail::fmt(worst));
  rep.lines.push_back("I_in = " + detail::fmt(mi.input) + " nats, I_out = " + detail::fmt(mi.output) +
                      " nats, identity calibration = " + detail::fmt(mi.calibration));
  const double gap = std::abs(mi.input - mi.output) - mi.calibration;
  if (l >= j) {
    rep.at_most("pointwise_density_match", worst, kDensityMatchTol);
    rep.at_most("information_preserved", gap, kInformationTol);
  } else {
    // Shrinking loses information; only data processing is asserted.
    rep.at_most("data_processing", mi.output - mi.input - mi.calibration, kInformationTol);
  }
  return rep;
}

inline RunReport cmd_clone_compare(int m, int n, std::uint64_t seed) {
  RunReport rep;
  rep.command = "clone-compare";
  rep.seed = seed;
  rep.param("m", std::to_string(m));
  rep.param("n", std::to_string(n));
  const CloneComparison cmp = stretch_equals_clone(m, n);
  rep.lines.push_back("m=" + std::to_string(m) + " -> n=" + std::to_string(n) + "  (" +
                      detail::spin_pair(HalfSpin(m), HalfSpin(n)) + ")");
  rep.lines.push_back("cloner F = " + detail::fmt(cmp.clone) + "  stretch F = " + detail::fmt(cmp.stretch));
  rep.at_most("clone_vs_stretch", cmp.delta, 1e-9);
  rep.at_most("clone_vs_formula",
              std::abs(cmp.clone - static_cast<double>(m + 1) / (n + 1)), 1e-9);

  Rng rng(seed);
  double spread = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double f = optimal_clone_global_fidelity(m, n, random_state(2, rng));
    spread = std::max(spread, std::abs(f - cmp.clone));
  }
  rep.at_most("state_independence", spread, 1e-10);

  const StretchChannel ch = build_channel(HalfSpin(m), HalfSpin(n));
  double worst = 0.0;
  for (int s = 0; s < 5; ++s) {
    const OperatorMatrix sigma = projector(coherent_state(HalfSpin(m), haar_sample(rng)));
    worst = std::max(worst, (clone_on_spin(m, n, sigma) - apply_channel(ch, sigma)).norm());
  }
  rep.at_most("coherent_action_match", worst, 1e-9);
  return rep;
}

}  // namespace nostretch
