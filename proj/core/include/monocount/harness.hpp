#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "monocount/formula.hpp"
#include "monocount/predictor.hpp"
#include "monocount/psi_sampler.hpp"

namespace monocount::harness {

/// Worker count from MONOCOUNT_THREADS, else the hardware concurrency (>= 1).
unsigned default_threads();

/// Shortest decimal that reads back as the same double.
std::string format_real(double x);

// CSV rows, each writer emitting its header first.
void write_trace_csv(const PredictResult& r, std::ostream& out);
std::string result_header();
std::string result_row(const PredictResult& r);
void write_trials_csv(const PsiSummary& s, std::ostream& out);
std::string summary_header();
std::string summary_row(const PsiSummary& s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::vector<std::uint32_t> n_list;
  std::vector<double> delta_list;
  std::vector<double> lambda_list;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  /// Largest n for which the sampler is run.
  std::uint32_t sim_cap = 1U << 20;
  std::filesystem::path output_dir;
};

/// JSON object with exactly the keys n_list, delta_list, lambda_list, trials,
/// master_seed, sim_cap, output_dir. Throws ConfigError otherwise.
SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRow {
  std::uint32_t n = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::optional<std::size_t> i_stop_pred;
  std::optional<double> bound;
  std::optional<double> obs_mean;
  std::optional<std::size_t> obs_min;
  std::optional<std::size_t> obs_max;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> master_seed;
  std::string error;

  /// "n,delta,lambda" as written in the CSV; identifies a grid point.
  std::string key() const;
};

std::string sweep_header();
std::string sweep_row(const SweepRow& row);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
/// Reads back a file written by write_sweep_csv.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

struct SweepOptions {
  unsigned threads = 1;
  /// Largest n for which the predictor is run.
  std::uint32_t predict_cap = 1U << 24;
  PsiOptions psi;
};

/// Evaluates one grid point. Failures land in row.error instead of throwing.
SweepRow evaluate_point(std::uint32_t n, double delta, double lambda, const SweepConfig& cfg,
                        const SweepOptions& options);

/// Runs every grid point and merges the rows into output_dir/sweep.csv,
/// replacing existing rows with the same key. Returns the rows of this run.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg, const SweepOptions& options = {});

/// Small random formula number `index` of a selfcheck seeded with `seed`:
/// n in [1, 16], m in [0, 18], widths from {1, 2, 3, ceil(log2 n), n}, with
/// occasional duplicate and tautological clauses. Index 0 is the empty formula.
Formula selfcheck_formula(std::uint64_t seed, std::size_t index);

struct SelfcheckReport {
  std::size_t total = 0;
  std::size_t count_ok = 0;
  std::size_t ledger_ok = 0;
  std::size_t bonferroni_ok = 0;
  std::vector<std::string> failures;

  bool passed() const noexcept {
    return count_ok == total && ledger_ok == total && bonferroni_ok == total;
  }
  /// "X/N count-oracle, Y/N ledger-oracle, Z/N bonferroni".
  std::string summary() const;
};

/// Counting, ledger and Bonferroni checks of one formula against the oracles.
struct FormulaCheck {
  bool count = false;
  bool ledger = false;
  bool bonferroni = false;
  std::string detail;
};
FormulaCheck check_formula(const Formula& f, unsigned threads = 1);

SelfcheckReport run_selfcheck(std::size_t count, std::uint64_t seed, unsigned threads = 1);

}  // namespace monocount::harness
