// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file clebsch_gordan.hpp
 * @brief Exact Clebsch-Gordan coefficients in the Condon-Shortley convention.
 *
 * Coefficients are evaluated with the Racah closed form over arbitrary
 * precision integers and returned as sign * sqrt(p/q). Nothing is rounded
 * until to_double() is called.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nostretch/halfint.hpp"

namespace nostretch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! for 0 <= n, cached.
inline const BigInt& factorial(int n) {
  static std::vector<BigInt> table{BigInt(1)};
  static std::mutex guard;
  if (n < 0) throw InputDomainError("factorial of a negative number");
  std::lock_guard lock(guard);
  while (static_cast<int>(table.size()) <= n) {
    table.push_back(table.back() * static_cast<unsigned>(table.size()));
  }
  return table[static_cast<std::size_t>(n)];
}

/// A real number sign * sqrt(square) with rational square.
struct SignedRoot {
  int sign = 0;  // -1, 0, +1
  Rational square{0};

  [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }
  [[nodiscard]] double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::sqrt(square.convert_to<double>());
  }
  friend bool operator==(const SignedRoot& a, const SignedRoot& b) {
    return a.sign == b.sign && (a.sign == 0 || a.square == b.square);
  }
};

/// Whether J lies in the triangle |j1-j2| <= J <= j1+j2 with integer j1+j2+J.
[[nodiscard]] constexpr bool triangle(HalfSpin j1, HalfSpin j2, HalfSpin J) noexcept {
  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  return c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0;
}

/**
 * <J,M | j1,m1; j2,m2>, all spins and projections as twice-values.
 *
 * Throws InputDomainError when a projection is invalid for its spin.
 * Returns exact zero when M != m1 + m2 or the triangle rule fails.
 */
[[nodiscard]] inline SignedRoot cg_coefficient(HalfSpin J, int M, HalfSpin j1, int m1,
                                               HalfSpin j2, int m2) {
  J.require_projection(M);
  j1.require_projection(m1);
  j2.require_projection(m2);
  if (M != m1 + m2 || !triangle(j1, j2, J)) return {};

  // Every quantity below is an integer once the selection rules hold.
  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  const int apb_c = (a + b - c) / 2;
  const int amb_c = (a - b + c) / 2;
  const int bmc_a = (-a + b + c) / 2;
  const int abc1 = (a + b + c) / 2 + 1;
  const int a_m1 = (a - m1) / 2, a_p1 = (a + m1) / 2;
  const int b_m2 = (b - m2) / 2, b_p2 = (b + m2) / 2;
  const int c_pM = (c + M) / 2, c_mM = (c - M) / 2;
  const int c_b_1 = (c - b + m1) / 2;  // J - j2 + m1
  const int c_a_2 = (c - a - m2) / 2;  // J - j1 - m2

  Rational prefactor(BigInt(c + 1) * factorial(apb_c) * factorial(amb_c) * factorial(bmc_a),
                     factorial(abc1));
  prefactor *= Rational(factorial(c_pM) * factorial(c_mM) * factorial(a_m1) *
                        factorial(a_p1) * factorial(b_m2) * factorial(b_p2));

  const int k_min = std::max({0, -c_b_1, -c_a_2});
  const int k_max = std::min({apb_c, a_m1, b_p2});
  Rational sum(0);
  for (int k = k_min; k <= k_max; ++k) {
    Rational term(BigInt(1), factorial(k) * factorial(apb_c - k) * factorial(a_m1 - k) *
                                 factorial(b_p2 - k) * factorial(c_b_1 + k) *
                                 factorial(c_a_2 + k));
    if (k % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return {};
  SignedRoot out;
  out.sign = sum > 0 ? 1 : -1;
  out.square = prefactor * sum * sum;
  return out;
}

}  // namespace nostretch
