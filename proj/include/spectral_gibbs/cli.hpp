#pragma once

// Command-line front end. Exit codes: 0 pass, 1 verification failure,
// 2 usage, 3 resource or I/O.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spectral_gibbs/bounds.hpp"

namespace spectral_gibbs {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2, kExitResource = 3 };

struct Check {
  std::string name;
  Verdict verdict = Verdict::not_applicable;
  double value = 0.0;
  std::string relation;  // how value compares with limit for a pass
  double limit = 0.0;
};

struct VerifyReport {
  ModelSpec spec;
  std::vector<Check> checks;
  KappaResult kappa;
  bool all_pass() const noexcept;
};

/// Detailed balance, stationarity, spectrum sanity, slice identities, per-edge
/// certificates and kappa and bound dominance for one model.
VerifyReport run_verify(const ModelSpec& spec, const Budget& budget = {});

struct SweepConfig {
  std::vector<std::size_t> ns;
  std::vector<Color> colors;
  std::vector<double> temperatures;
  Budget budget;
  std::uint64_t seed = 0;
};

struct SweepRow {
  std::size_t n = 0;
  Color colors = 0;
  double temperature = 0.0;
  double potts = 0.0;
  double ingrassia_beta1 = 0.0;
  double theta = 0.0;
  double crossover_n = 0.0;
  bool improves = false;  // Potts gap exceeds the comparison gap
  bool skipped_exact = false;
  std::optional<double> beta1;
  std::optional<double> beta_star;
};

/// One row per (n, N, T) in ascending n, then N, then T. Rows whose state
/// space exceeds the dense budget carry no exact columns and skipped_exact.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Parses "1..10", "1,2,5" or a mix ("1..3,8").
std::vector<std::size_t> parse_index_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral_gibbs
