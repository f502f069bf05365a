// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file su2.hpp
 * @brief SU(2) group elements, Wigner matrices and Haar sampling.
 *
 * Conventions used throughout the library:
 *   - z-y-z Euler angles, active rotations: g = R_z(alpha) R_y(beta) R_z(gamma);
 *   - D^j(g) = exp(-i alpha J_z) d^j(beta) exp(-i gamma J_z) in the
 *     m-descending |j,m> basis;
 *   - group elements are stored only up to the double-cover sign.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "nostretch/halfint.hpp"
#include "nostretch/linalg.hpp"

namespace nostretch {

struct GroupElement {
  double alpha = 0.0;  // [0, 2pi)
  double beta = 0.0;   // [0, pi]
  double gamma = 0.0;  // [0, 2pi)

  [[nodiscard]] static constexpr GroupElement identity() noexcept { return {}; }
};

namespace detail {

inline double wrap_angle(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

inline long double factorial_ld(int n) {
  static const auto table = [] {
    std::array<long double, 171> t{};
    t[0] = 1.0L;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

}  // namespace detail

/// The spin-1/2 matrix of g (rows m' = +1/2, -1/2).
[[nodiscard]] inline Eigen::Matrix2cd spin_half_matrix(const GroupElement& g) {
  const double c = std::cos(0.5 * g.beta), s = std::sin(0.5 * g.beta);
  const double sum = 0.5 * (g.alpha + g.gamma), diff = 0.5 * (g.alpha - g.gamma);
  Eigen::Matrix2cd u;
  u << std::polar(c, -sum), -std::polar(s, -diff),
       std::polar(s, diff), std::polar(c, sum);
  return u;
}

/// Euler angles of a spin-1/2 matrix; the global sign is discarded.
[[nodiscard]] inline GroupElement from_spin_half(const Eigen::Matrix2cd& u) {
  const Complex a = u(0, 0), c = u(1, 0);
  const double mod_a = std::abs(a), mod_c = std::abs(c);
  GroupElement g;
  g.beta = 2.0 * std::atan2(mod_c, mod_a);
  // a = e^{-i(alpha+gamma)/2} cos(beta/2), c = e^{i(alpha-gamma)/2} sin(beta/2)
  constexpr double edge = 1e-15;
  if (mod_c < edge) {
    g.alpha = -2.0 * std::arg(a);
    g.gamma = 0.0;
  } else if (mod_a < edge) {
    g.alpha = 2.0 * std::arg(c);
    g.gamma = 0.0;
  } else {
    const double sum = -2.0 * std::arg(a);
    const double diff = 2.0 * std::arg(c);
    g.alpha = 0.5 * (sum + diff);
    g.gamma = 0.5 * (sum - diff);
  }
  g.alpha = detail::wrap_angle(g.alpha);
  g.gamma = detail::wrap_angle(g.gamma);
  return g;
}

/// g * h.
[[nodiscard]] inline GroupElement compose(const GroupElement& g, const GroupElement& h) {
  return from_spin_half(spin_half_matrix(g) * spin_half_matrix(h));
}

[[nodiscard]] inline GroupElement inverse(const GroupElement& g) {
  return from_spin_half(spin_half_matrix(g).adjoint());
}

/// Second Euler angle of h^{-1} g.
[[nodiscard]] inline double relative_beta(const GroupElement& g, const GroupElement& h) {
  return compose(inverse(h), g).beta;
}

/// Haar-distributed element: alpha, gamma uniform, cos(beta) uniform on [-1, 1].
[[nodiscard]] inline GroupElement haar_sample(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> cosine(-1.0, 1.0);
  GroupElement g;
  g.alpha = angle(rng);
  g.beta = std::acos(cosine(rng));
  g.gamma = angle(rng);
  return g;
}

/**
 * n Haar-distributed elements from a Latin hypercube over (alpha, cos beta):
 * each axis is cut into n equal strata, every stratum is hit once, and the
 * pairing between axes is a random permutation. gamma is drawn uniformly.
 * Each element is marginally Haar, so sample means stay unbiased, with far
 * less variance than independent draws for functions smooth in beta.
 */
[[nodiscard]] inline std::vector<GroupElement> haar_stratified_samples(int n, Rng& rng) {
  if (n < 1) throw InputDomainError("haar_stratified_samples: n must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> alpha_stratum(static_cast<std::size_t>(n));
  std::vector<int> beta_stratum(static_cast<std::size_t>(n));
  std::iota(alpha_stratum.begin(), alpha_stratum.end(), 0);
  std::iota(beta_stratum.begin(), beta_stratum.end(), 0);
  std::shuffle(alpha_stratum.begin(), alpha_stratum.end(), rng);
  std::shuffle(beta_stratum.begin(), beta_stratum.end(), rng);
  std::vector<GroupElement> out(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double a = (alpha_stratum[i] + unit(rng)) / n;
    const double c = -1.0 + 2.0 * (beta_stratum[i] + unit(rng)) / n;
    out[i] = {2.0 * std::numbers::pi * a, std::acos(std::clamp(c, -1.0, 1.0)),
              2.0 * std::numbers::pi * unit(rng)};
  }
  return out;
}

/// Wigner small-d matrix d^j(beta), evaluated with the Wigner sum in extended precision.
[[nodiscard]] inline Eigen::MatrixXd wigner_small_d(HalfSpin j, double beta) {
  const int tj = j.twice();
  const long double c = std::cos(0.5L * static_cast<long double>(beta));
  const long double s = std::sin(0.5L * static_cast<long double>(beta));
  Eigen::MatrixXd d(j.dim(), j.dim());
  for (int r = 0; r < j.dim(); ++r) {
    const int tmp = j.projection_at(r);  // 2m'
    for (int col = 0; col < j.dim(); ++col) {
      const int tm = j.projection_at(col);  // 2m
      const int jpm_ = (tj + tmp) / 2, jmm_ = (tj - tmp) / 2;
      const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
      const int dm = (tmp - tm) / 2;  // m' - m
      const long double root = std::sqrt(detail::factorial_ld(jpm_) * detail::factorial_ld(jmm_) *
                                          detail::factorial_ld(jpm) * detail::factorial_ld(jmm));
      const int s_min = std::max(0, -dm);
      const int s_max = std::min(jpm, jmm_);
      long double acc = 0.0L;
      for (int k = s_min; k <= s_max; ++k) {
        const long double denom = detail::factorial_ld(jpm - k) * detail::factorial_ld(k) *
                                  detail::factorial_ld(dm + k) * detail::factorial_ld(jmm_ - k);
        const int cos_pow = tj - dm - 2 * k;
        const int sin_pow = dm + 2 * k;
        long double term = root / denom * std::pow(c, cos_pow) * std::pow(s, sin_pow);
        if ((dm + k) % 2 != 0) term = -term;
        acc += term;
      }
      d(r, col) = static_cast<double>(acc);
    }
  }
  return d;
}

/// D^j(g) in the m-descending basis.
[[nodiscard]] inline OperatorMatrix wigner_D(HalfSpin j, const GroupElement& g) {
  const Eigen::MatrixXd d = wigner_small_d(j, g.beta);
  OperatorMatrix out(j.dim(), j.dim());
  for (int r = 0; r < j.dim(); ++r) {
    const double mp = 0.5 * j.projection_at(r);
    for (int c = 0; c < j.dim(); ++c) {
      const double m = 0.5 * j.projection_at(c);
      out(r, c) = std::polar(d(r, c), -(mp * g.alpha + m * g.gamma));
    }
  }
  return out;
}

/// D^j(g)|j,j>, the spin coherent state pointing along g.
/// Uses d^j_{m,j}(beta) = sqrt(C(2j, j-m)) cos^{j+m}(beta/2) sin^{j-m}(beta/2).
[[nodiscard]] inline StateVector coherent_state(HalfSpin j, const GroupElement& g) {
  const int tj = j.twice();
  const double c = std::cos(0.5 * g.beta);
  const double s = std::sin(0.5 * g.beta);
  StateVector out(j.dim());
  double binomial = 1.0;
  for (int r = 0; r <= tj; ++r) {
    const double m = 0.5 * j.projection_at(r);
    const double mag = std::sqrt(binomial) * std::pow(c, tj - r) * std::pow(s, r);
    out(r) = std::polar(mag, -(m * g.alpha + 0.5 * tj * g.gamma));
    binomial = binomial * (tj - r) / (r + 1);
  }
  return out;
}

/// |<x,x| D(h)^dagger D(g) |x,x>|.
[[nodiscard]] inline double coherent_overlap_modulus(HalfSpin x, const GroupElement& g,
                                                     const GroupElement& h) {
  return std::abs(coherent_state(x, h).dot(coherent_state(x, g)));
}

/// Angular momentum component J_z, J_+ or J_- in the m-descending basis.
enum class Component { z, plus, minus };

[[nodiscard]] inline OperatorMatrix angular_momentum(HalfSpin j, Component which) {
  OperatorMatrix out = OperatorMatrix::Zero(j.dim(), j.dim());
  const double jj = j.value();
  for (int r = 0; r < j.dim(); ++r) {
    const double m = 0.5 * j.projection_at(r);
    switch (which) {
      case Component::z:
        out(r, r) = m;
        break;
      case Component::plus:  // |m+1> <m|
        if (r > 0) out(r - 1, r) = std::sqrt(jj * (jj + 1) - m * (m + 1));
        break;
      case Component::minus:  // |m-1> <m|
        if (r + 1 < j.dim()) out(r + 1, r) = std::sqrt(jj * (jj + 1) - m * (m - 1));
        break;
    }
  }
  return out;
}

}  // namespace nostretch
