// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace nostretch {

/// Raised when a spin or magnetic index is outside its allowed domain.
class InputDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when operand dimensions do not fit together.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Renders a twice-value as "3", "1/2", "-5/2".
inline std::string twice_to_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

/**
 * A spin quantum number j stored as the integer 2j.
 *
 * Magnetic numbers accompanying a HalfSpin are also carried as twice-values;
 * a valid 2m satisfies |2m| <= 2j and 2m = 2j (mod 2).
 */
class HalfSpin {
 public:
  constexpr HalfSpin() = default;
  constexpr explicit HalfSpin(int twice_value) : twice_(twice_value) {
    if (twice_value < 0) throw InputDomainError("spin must be non-negative");
  }

  [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
  [[nodiscard]] constexpr int dim() const noexcept { return twice_ + 1; }
  [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

  [[nodiscard]] constexpr bool valid_projection(int twice_m) const noexcept {
    return std::abs(twice_m) <= twice_ && (twice_ - twice_m) % 2 == 0;
  }

  /// Row/column of |j,m> in the m-descending basis.
  [[nodiscard]] constexpr int index_of(int twice_m) const noexcept {
    return (twice_ - twice_m) / 2;
  }
  /// Twice-magnetic number at basis position `index`.
  [[nodiscard]] constexpr int projection_at(int index) const noexcept {
    return twice_ - 2 * index;
  }

  void require_projection(int twice_m) const {
    if (!valid_projection(twice_m)) {
      throw InputDomainError("invalid magnetic index m=" + twice_to_string(twice_m) +
                             " for j=" + twice_to_string(twice_));
    }
  }

  [[nodiscard]] std::string to_string() const { return twice_to_string(twice_); }

  friend constexpr bool operator==(HalfSpin, HalfSpin) = default;
  friend constexpr auto operator<=>(HalfSpin, HalfSpin) = default;

 private:
  int twice_ = 0;
};

/// |j - l| as a spin.
[[nodiscard]] constexpr HalfSpin spin_gap(HalfSpin j, HalfSpin l) {
  return HalfSpin(std::abs(j.twice() - l.twice()));
}

}  // namespace nostretch
