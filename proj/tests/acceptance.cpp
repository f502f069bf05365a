// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nostretch/commands.hpp"

namespace ns = nostretch;
using ns::HalfSpin;
using ns::OperatorMatrix;

namespace {

constexpr int kGrid = 16;
constexpr std::uint64_t kSeed = 0xC0FFEE;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

template <typename F>
void run(int id, const char* title, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %2d %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", id, title, out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double closed_form(int tj, int tl) { return std::min(1.0, (tj + 1.0) / (tl + 1.0)); }

OperatorMatrix north(HalfSpin x) { return ns::projector(ns::highest_weight(x)); }

// Builds every channel of the grid once; criteria 1, 3, 4 and 5 share them.
std::vector<ns::StretchChannel> grid_channels() {
  std::vector<ns::StretchChannel> out;
  for (int tj = 0; tj <= kGrid; ++tj)
    for (int tl = 0; tl <= kGrid; ++tl) out.push_back(ns::build_channel(HalfSpin(tj), HalfSpin(tl)));
  return out;
}

const ns::StretchChannel& channel(const std::vector<ns::StretchChannel>& all, int tj, int tl) {
  return all[static_cast<std::size_t>(tj * (kGrid + 1) + tl)];
}

}  // namespace

int main() {
  const auto channels = grid_channels();

  run(1, "fidelity law", [&] {
    double worst = 0.0;
    for (int tj = 0; tj <= kGrid; ++tj)
      for (int tl = 0; tl <= kGrid; ++tl)
        worst = std::max(worst, std::abs(ns::channel_fidelity(channel(channels, tj, tl)) - closed_form(tj, tl)));
    return Outcome{worst <= 1e-10, "max deviation " + sci(worst)};
  });

  run(2, "fidelity table j=10", [] {
    std::istringstream csv(ns::render_csv(ns::cmd_table(20, 40)));
    std::string line;
    std::getline(csv, line);
    if (line != "two_l,fidelity") return Outcome{false, "bad header"};
    int rows = 0, bad = 0;
    while (std::getline(csv, line)) {
      const auto comma = line.find(',');
      const int tl = std::stoi(line.substr(0, comma));
      char expected[32];
      std::snprintf(expected, sizeof expected, "%.12g", tl <= 20 ? 1.0 : 21.0 / (tl + 1.0));
      if (tl != rows || line.substr(comma + 1) != expected) ++bad;
      ++rows;
    }
    return Outcome{rows == 41 && bad == 0, std::to_string(rows) + " rows, " + std::to_string(bad) + " mismatches"};
  });

  run(3, "exact shrink", [&] {
    double worst = 0.0;
    for (int tj = 0; tj <= kGrid; ++tj)
      for (int tl = 0; tl < tj; ++tl) {
        const OperatorMatrix out = ns::apply_channel(channel(channels, tj, tl), north(HalfSpin(tj)));
        worst = std::max(worst, ns::trace_distance(out, north(HalfSpin(tl))));
      }
    return Outcome{worst <= 1e-10, "max trace distance " + sci(worst)};
  });

  run(4, "channel validity", [&] {
    double tp = 0.0, min_eig = 0.0, cov = 0.0;
    ns::Rng rng(kSeed);
    for (int tj = 0; tj <= kGrid; ++tj)
      for (int tl = 0; tl <= kGrid; ++tl) {
        const auto& ch = channel(channels, tj, tl);
        tp = std::max(tp, ns::trace_preservation_residual(ch));
        min_eig = std::min(min_eig, ns::eigvals_hermitian(ns::choi_of(ch).matrix)(0));
        cov = std::max(cov, ns::verify_covariance(ch, 50, rng));
      }
    ns::Rng control_rng(kSeed);
    const double control = ns::verify_covariance(
        ns::build_channel(HalfSpin(1), HalfSpin(2), ns::KrausPhase::bare_clebsch_gordan), 50, control_rng);
    const bool pass = tp <= 1e-10 && min_eig >= -1e-10 && cov <= 1e-8 && control > 0.1;
    return Outcome{pass, "tp " + sci(tp) + ", choi min eig " + sci(min_eig) + ", covariance " + sci(cov) +
                             ", control " + sci(control)};
  });

  run(5, "dual identity", [&] {
    double worst = 0.0;
    for (int tj = 0; tj <= kGrid; ++tj)
      for (int tl = tj + 1; tl <= kGrid; ++tl) {
        const OperatorMatrix pulled = (tl + 1.0) * ns::apply_dual(channel(channels, tj, tl), north(HalfSpin(tl)));
        worst = std::max(worst, (pulled - (tj + 1.0) * north(HalfSpin(tj))).norm());
      }
    return Outcome{worst <= 1e-9, "max Frobenius deviation " + sci(worst)};
  });

  run(6, "covariant LP optimum", [] {
    double worst = 0.0;
    int wrong_winner = 0;
    for (int tj = 0; tj <= 12; ++tj)
      for (int tl = 0; tl <= 12; ++tl) {
        const auto opt = ns::optimal_covariant_fidelity(HalfSpin(tj), HalfSpin(tl));
        worst = std::max(worst, std::abs(opt.fidelity - closed_form(tj, tl)));
        // With 2j = 0 or 2l = 0 there is a single block, so the winner is forced.
        if (opt.winner.twice() != std::abs(tj - tl)) ++wrong_winner;
      }
    return Outcome{worst <= 1e-9 && wrong_winner == 0,
                   "max deviation " + sci(worst) + ", wrong winners " + std::to_string(wrong_winner)};
  });

  run(7, "estimation chain", [&] {
    int bad_likelihood = 0, bad_bound = 0;
    for (int tj = 0; tj <= kGrid; ++tj) {
      if (ns::likelihood(HalfSpin(tj)) != tj + 1.0) ++bad_likelihood;
      for (int tl = 0; tl <= kGrid; ++tl) {
        const double chain = (tl + 1.0) * ns::channel_fidelity(channel(channels, tj, tl));
        if (chain > tj + 1.0 + 1e-12) ++bad_bound;
        if (tl >= tj && std::abs(chain - (tj + 1.0)) > 1e-12) ++bad_bound;
      }
    }
    double worst = 0.0;
    ns::Rng rng(kSeed);
    for (auto [tj, tl] : {std::pair{1, 2}, {2, 4}, {3, 6}}) {
      const auto ch = ns::build_channel(HalfSpin(tj), HalfSpin(tl));
      for (int s = 0; s < 100; ++s) {
        const auto g = ns::haar_sample(rng), h = ns::haar_sample(rng);
        const auto d = ns::conditional_densities(ch, g, h);
        worst = std::max(worst, std::abs(d.output - d.input));
      }
    }
    return Outcome{bad_likelihood == 0 && bad_bound == 0 && worst <= 1e-9,
                   "likelihood misses " + std::to_string(bad_likelihood) + ", bound misses " +
                       std::to_string(bad_bound) + ", max |p - q| " + sci(worst)};
  });

  run(8, "no-stretching witness", [] {
    const double beta = std::numbers::pi / 2;
    const auto up = ns::no_stretching_witness(HalfSpin(1), HalfSpin(2), beta);
    const auto down = ns::no_stretching_witness(HalfSpin(2), HalfSpin(1), beta);
    const double e_up = std::abs(up.required_overlap - std::pow(std::cos(beta / 2), -1.0));
    const double e_down = std::abs(down.required_overlap - std::cos(beta / 2));
    const bool pass = e_up <= 1e-12 && e_down <= 1e-12 && up.required_overlap > 1.0 &&
                      up.verdict == ns::WitnessVerdict::impossible && down.required_overlap <= 1.0 &&
                      down.verdict == ns::WitnessVerdict::allowed;
    return Outcome{pass, "overlaps " + ns::format_significant(up.required_overlap) + " and " +
                             ns::format_significant(down.required_overlap)};
  });

  run(9, "cloning equivalence", [] {
    double worst = 0.0;
    for (auto [m, n] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}}) {
      const auto c = ns::stretch_equals_clone(m, n);
      const double formula = (m + 1.0) / (n + 1.0);
      worst = std::max({worst, std::abs(c.clone - formula), std::abs(c.clone - c.stretch)});
    }
    return Outcome{worst <= 1e-9, "max deviation " + sci(worst)};
  });

  run(10, "statistical checks", [] {
    constexpr int n = 100000;
    const double bound = 5.0 / std::sqrt(static_cast<double>(n));
    std::string detail = "completeness";
    bool pass = true;
    ns::Rng rng(kSeed);
    for (int tj : {1, 2, 10}) {
      const double dev = ns::povm_completeness_deviation(HalfSpin(tj), n, rng);
      pass = pass && dev <= bound;
      detail += " " + sci(dev);
    }
    const auto mi = ns::mutual_information_check(HalfSpin(1), HalfSpin(2), 32, n, rng);
    const double gap = std::abs(mi.input - mi.output) - mi.calibration;
    pass = pass && gap <= 0.01;
    return Outcome{pass, detail + " (bound " + sci(bound) + "), mutual information gap " + sci(gap)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
