// Copyright 2026 The nostretch Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nostretch/commands.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("NOSTRETCH_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t value = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("NOSTRETCH_SEED is not an integer: ") + env);
  }
  return 0;
}

int emit(const nostretch::RunReport& report, const std::string& format, const std::string& out_path) {
  std::string body;
  if (format == "json") {
    body = nostretch::render_json(report);
  } else if (format == "csv") {
    body = nostretch::render_csv(report);
  } else {
    body = nostretch::render_text(report);
  }
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file || !(file << body) || !file.flush()) {
      std::cerr << "nostretch: cannot write " << out_path << "\n";
      return kExitUsage;
    }
  }
  return report.pass() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal spin-stretching channels: construction, verification and tables"};
  app.require_subcommand(1);

  int two_j = 0, two_l = 0, two_l_max = 0, grid = nostretch::kDefaultInfoGrid;
  int verify_samples = nostretch::kDefaultCovarianceSamples;
  int povm_samples = nostretch::kDefaultPovmSamples;
  int info_samples = nostretch::kDefaultInfoSamples;
  int m = 1, n = 1;
  double tol = nostretch::tol::covariance, beta = 0.0;
  bool bare_phase = false;
  std::optional<std::uint64_t> seed_flag;
  std::string format = "text", out_path;

  const auto add_spin = [](CLI::App* cmd, const char* name, int& target, const char* help) {
    cmd->add_option(name, target, help)->required()->check(CLI::NonNegativeNumber);
  };
  const auto add_output = [&](CLI::App* cmd, std::vector<std::string> formats) {
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember(std::move(formats)));
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  };

  auto* fidelity = app.add_subcommand("fidelity", "closed-form vs channel fidelity");
  add_spin(fidelity, "--two-j", two_j, "twice the input spin");
  add_spin(fidelity, "--two-l", two_l, "twice the output spin");
  add_output(fidelity, {"text", "json"});

  auto* table = app.add_subcommand("table", "fidelity as a function of the output spin");
  add_spin(table, "--two-j", two_j, "twice the input spin");
  add_spin(table, "--two-l-max", two_l_max, "largest twice output spin");
  add_output(table, {"table", "text", "csv", "json"});

  auto* verify = app.add_subcommand("verify", "CP, TP, covariance and closed-form checks");
  add_spin(verify, "--two-j", two_j, "twice the input spin");
  add_spin(verify, "--two-l", two_l, "twice the output spin");
  verify->add_option("--samples", verify_samples, "Haar samples for covariance")
      ->default_val(nostretch::kDefaultCovarianceSamples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed_flag, "random seed (overrides NOSTRETCH_SEED)");
  verify->add_option("--tol", tol, "covariance tolerance")->default_val(nostretch::tol::covariance);
  verify->add_flag("--bare-cg-phase", bare_phase,
                   "use bare Clebsch-Gordan Kraus elements without the tensor-operator phase");
  add_output(verify, {"text", "json"});

  auto* optimize = app.add_subcommand("optimize", "optimise over all covariant channels");
  add_spin(optimize, "--two-j", two_j, "twice the input spin");
  add_spin(optimize, "--two-l", two_l, "twice the output spin");
  add_output(optimize, {"text", "json"});

  auto* witness = app.add_subcommand("witness", "ancilla overlap required by a unitary transfer");
  add_spin(witness, "--two-j", two_j, "twice the input spin");
  add_spin(witness, "--two-l", two_l, "twice the output spin");
  witness->add_option("--beta", beta, "relative second Euler angle in radians")
      ->required()->check(CLI::Range(0.0, std::numbers::pi));
  add_output(witness, {"text", "json"});

  auto* povm = app.add_subcommand("povm", "covariant POVM likelihood and completeness");
  add_spin(povm, "--two-j", two_j, "twice the spin");
  povm->add_option("--samples", povm_samples, "Haar samples for completeness")
      ->default_val(nostretch::kDefaultPovmSamples)->check(CLI::PositiveNumber);
  povm->add_option("--seed", seed_flag, "random seed (overrides NOSTRETCH_SEED)");
  add_output(povm, {"text", "json"});

  auto* info = app.add_subcommand("info-check", "estimation statistics before and after the channel");
  add_spin(info, "--two-j", two_j, "twice the input spin");
  add_spin(info, "--two-l", two_l, "twice the output spin");
  info->add_option("--samples", info_samples, "Haar samples")
      ->default_val(nostretch::kDefaultInfoSamples)->check(CLI::PositiveNumber);
  info->add_option("--grid", grid, "grid points per Euler axis")
      ->default_val(nostretch::kDefaultInfoGrid)->check(CLI::Range(8, 4096));
  info->add_option("--seed", seed_flag, "random seed (overrides NOSTRETCH_SEED)");
  add_output(info, {"text", "json"});

  auto* clone = app.add_subcommand("clone-compare", "optimal m -> n qubit cloning vs stretching");
  clone->add_option("--m", m, "input copies")->required();
  clone->add_option("--n", n, "output copies")->required();
  clone->add_option("--seed", seed_flag, "random seed (overrides NOSTRETCH_SEED)");
  add_output(clone, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const std::uint64_t seed = resolve_seed(seed_flag);
    nostretch::RunReport report;
    if (*fidelity) {
      report = nostretch::cmd_fidelity(two_j, two_l);
    } else if (*table) {
      report = nostretch::cmd_table(two_j, two_l_max);
      if (format == "text") format = "table";
    } else if (*verify) {
      report = nostretch::cmd_verify(two_j, two_l, verify_samples, seed, tol,
                                     bare_phase ? nostretch::KrausPhase::bare_clebsch_gordan
                                                : nostretch::KrausPhase::tensor_operator);
    } else if (*optimize) {
      report = nostretch::cmd_optimize(two_j, two_l);
    } else if (*witness) {
      report = nostretch::cmd_witness(two_j, two_l, beta);
    } else if (*povm) {
      report = nostretch::cmd_povm(two_j, povm_samples, seed);
    } else if (*info) {
      report = nostretch::cmd_info_check(two_j, two_l, info_samples, seed, grid);
    } else {
      report = nostretch::cmd_clone_compare(m, n, seed);
    }
    return emit(report, format == "table" ? "text" : format, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "nostretch: " << e.what() << "\n";
    return kExitUsage;
  }
}
