// monocount: exact model counting over monotone sub-formulae, plus the
// predictor / simulator pair for the size of a greedy maximal monotone
// sub-formula of a random sparse formula.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "monocount/dimacs.hpp"
#include "monocount/exact_counter.hpp"
#include "monocount/harness.hpp"
#include "monocount/instance_gen.hpp"
#include "monocount/oracle.hpp"
#include "monocount/predictor.hpp"
#include "monocount/psi_sampler.hpp"

namespace {

using namespace monocount;

enum Exit : int { kOk = 0, kUsage = 1, kInconsistent = 2, kLimit = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts a plain integer or 2^k.
std::uint32_t parse_n(const std::string& s) {
  try {
    std::size_t pos = 0;
    if (auto caret = s.find('^'); caret != std::string::npos) {
      if (s.substr(0, caret) != "2") throw UsageError("only powers of 2 may use '^'");
      const unsigned long e = std::stoul(s.substr(caret + 1), &pos);
      if (pos != s.size() - caret - 1 || e > 31) throw UsageError("bad exponent");
      return std::uint32_t{1} << e;
    }
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size() || v > 0xFFFFFFFFULL) throw UsageError("bad integer");
    return static_cast<std::uint32_t>(v);
  } catch (const UsageError& e) {
    throw UsageError(fmt::format("--n '{}': {}", s, e.what()));
  } catch (const std::exception&) {
    throw UsageError(fmt::format("--n '{}': expected an integer or 2^k", s));
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, const char* name) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  fmt::print(stderr, "{}={}\n", name, s);
  return s;
}

template <class F>
void with_output(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError(fmt::format("cannot open {} for writing", path));
  write(out);
}

struct Common {
  unsigned threads = harness::default_threads();
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact #SAT by monotone sub-formula enumeration, with i_stop prediction"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (default: MONOCOUNT_THREADS or cores)")
      ->check(CLI::Range(1U, 1024U));

  // count
  auto* count = app.add_subcommand("count", "Print the exact number of models of a DIMACS file");
  std::string count_input;
  bool count_stats = false;
  std::optional<std::uint64_t> count_seed;
  count->add_option("input", count_input, "DIMACS file, or - for standard input")->required();
  count->add_flag("--stats", count_stats, "Also print ledger size, largest sub-formula and wall time");
  count->add_option("--seed", count_seed, "Accepted for uniformity; counting is not randomised");
  count->add_option("--threads", common.threads)->check(CLI::Range(1U, 1024U));

  // generate
  auto* gen = app.add_subcommand("generate", "Write a random sparse formula in DIMACS");
  std::string gen_n;
  GenParams gp;
  std::optional<std::uint32_t> gen_lambda_up;
  std::optional<std::uint64_t> gen_seed;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Variables (integer or 2^k)")->required();
  gen->add_option("--delta", gp.delta, "Clauses per variable")->check(CLI::PositiveNumber);
  gen->add_option("--lambda", gp.lambda, "Clause length factor")->check(CLI::PositiveNumber);
  gen->add_option("--lambda-up", gen_lambda_up, "Largest clause length (default: the lower length)");
  gen->add_option("--seed", gen_seed, "Seed (random and printed if omitted)");
  gen->add_flag("--distinct", gp.distinct, "No duplicate clauses");
  gen->add_option("-o,--out", gen_out, "Output file (default: standard output)");

  // predict
  auto* pred = app.add_subcommand("predict", "Run the i_stop recurrence");
  std::string pred_n;
  double pred_delta = 1.0, pred_lambda = 1.0;
  std::string pred_trace;
  std::optional<std::uint64_t> pred_seed;
  pred->add_option("--n", pred_n, "Variables (integer or 2^k)")->required();
  pred->add_option("--delta", pred_delta)->check(CLI::PositiveNumber);
  pred->add_option("--lambda", pred_lambda)->check(CLI::PositiveNumber);
  pred->add_option("--trace", pred_trace, "Write the i,s,p,w trace to this CSV");
  pred->add_option("--seed", pred_seed, "Accepted for uniformity; the recurrence is deterministic");

  // psi
  auto* psi = app.add_subcommand("psi", "Simulate the greedy build of a maximal monotone sub-formula");
  std::string psi_n;
  double psi_delta = 1.0, psi_lambda = 1.0;
  std::size_t psi_trials = 100;
  std::optional<std::uint64_t> psi_seed;
  std::string psi_trials_csv, psi_summary_csv;
  PsiOptions psi_opts;
  psi->add_option("--n", psi_n, "Variables (integer or 2^k)")->required();
  psi->add_option("--delta", psi_delta)->check(CLI::PositiveNumber);
  psi->add_option("--lambda", psi_lambda)->check(CLI::PositiveNumber);
  psi->add_option("--trials", psi_trials)->check(CLI::PositiveNumber);
  psi->add_option("--master-seed,--seed", psi_seed, "Master seed (random and printed if omitted)");
  psi->add_option("--trials-csv", psi_trials_csv, "Per-trial CSV (trial,i_final,consumed)");
  psi->add_option("--summary-csv", psi_summary_csv, "Summary CSV");
  psi->add_flag("--materialize", psi_opts.materialize,
                "Generate the formula first and scan a random permutation of it");
  psi->add_flag("--distinct", psi_opts.distinct, "With --materialize: no duplicate clauses");
  psi->add_option("--threads", common.threads)->check(CLI::Range(1U, 1024U));

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run predictor and simulator over a parameter grid");
  std::string sweep_config;
  std::uint32_t predict_cap = 1U << 24;
  std::optional<std::uint64_t> sweep_seed;
  sweep->add_option("config", sweep_config, "JSON sweep configuration")->required();
  sweep->add_option("--predict-cap", predict_cap, "Largest n for the predictor");
  sweep->add_option("--master-seed,--seed", sweep_seed, "Overrides master_seed from the config");
  sweep->add_flag("--materialize", psi_opts.materialize);
  sweep->add_flag("--distinct", psi_opts.distinct);
  sweep->add_option("--threads", common.threads)->check(CLI::Range(1U, 1024U));

  // selfcheck
  auto* self = app.add_subcommand("selfcheck", "Compare the counter against brute-force oracles");
  std::size_t self_count = 100;
  std::optional<std::uint64_t> self_seed;
  self->add_option("--count", self_count)->check(CLI::PositiveNumber);
  self->add_option("--seed", self_seed, "Seed (random and printed if omitted)");
  self->add_option("--threads", common.threads)->check(CLI::Range(1U, 1024U));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) {
      Formula f;
      if (count_input == "-") {
        f = parse_dimacs(std::cin);
      } else {
        std::ifstream in(count_input);
        if (!in) throw UsageError(fmt::format("cannot open {}", count_input));
        f = parse_dimacs(in);
      }
      const auto t0 = std::chrono::steady_clock::now();
      CountOptions opts;
      opts.threads = common.threads;
      const CountReport rep = count_with_report(f, opts);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      fmt::print("{}\n", rep.models.str());
      if (count_stats) {
        fmt::print("ledger_entries={}\n", rep.ledger.entries().size());
        fmt::print("monotone_subformulae={}\n", rep.visited);
        fmt::print("max_monotone_size={}\n", rep.max_size);
        fmt::print("wall_seconds={:.6f}\n", secs);
      }
    } else if (*gen) {
      gp.n = parse_n(gen_n);
      gp.lambda_up = gen_lambda_up;
      gp.seed = resolve_seed(gen_seed, "seed");
      const Formula f = random_formula(gp);
      with_output(gen_out, [&](std::ostream& out) { emit_dimacs(f, out); });
    } else if (*pred) {
      const PredictResult r = predict_istop(parse_n(pred_n), pred_delta, pred_lambda,
                                            PredictOptions{.keep_trace = !pred_trace.empty()});
      fmt::print("{}\n{}\n", harness::result_header(), harness::result_row(r));
      if (!pred_trace.empty()) {
        with_output(pred_trace, [&](std::ostream& out) { harness::write_trace_csv(r, out); });
      }
    } else if (*psi) {
      const std::uint64_t seed = resolve_seed(psi_seed, "master_seed");
      const PsiSummary s = sample_summary(parse_n(psi_n), psi_delta, psi_lambda, psi_trials, seed,
                                          common.threads, psi_opts);
      fmt::print("{}\n{}\n", harness::summary_header(), harness::summary_row(s));
      if (!psi_trials_csv.empty()) {
        with_output(psi_trials_csv, [&](std::ostream& out) { harness::write_trials_csv(s, out); });
      }
      if (!psi_summary_csv.empty()) {
        with_output(psi_summary_csv, [&](std::ostream& out) {
          out << harness::summary_header() << '\n' << harness::summary_row(s) << '\n';
        });
      }
    } else if (*sweep) {
      harness::SweepConfig cfg = harness::load_sweep_config(sweep_config);
      if (sweep_seed) cfg.master_seed = *sweep_seed;
      harness::SweepOptions opts;
      opts.threads = common.threads;
      opts.predict_cap = predict_cap;
      opts.psi = psi_opts;
      const auto rows = harness::run_sweep(cfg, opts);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += !r.error.empty();
      fmt::print("{} grid points written to {}", rows.size(), (cfg.output_dir / "sweep.csv").string());
      if (failed) fmt::print(", {} with errors", failed);
      fmt::print("\n");
    } else if (*self) {
      const std::uint64_t seed = resolve_seed(self_seed, "seed");
      const harness::SelfcheckReport rep = harness::run_selfcheck(self_count, seed, common.threads);
      for (const std::string& f : rep.failures) fmt::print(stderr, "FAIL {}\n", f);
      fmt::print("{}\n", rep.summary());
      if (!rep.passed()) return kInconsistent;
    }
  } catch (const ParseError& e) {
    fmt::print(stderr, "monocount: parse error: {}\n", e.what());
    return kUsage;
  } catch (const UsageError& e) {
    fmt::print(stderr, "monocount: {}\n", e.what());
    return kUsage;
  } catch (const harness::ConfigError& e) {
    fmt::print(stderr, "monocount: {}\n", e.what());
    return kUsage;
  } catch (const InconsistencyError& e) {
    fmt::print(stderr, "monocount: internal inconsistency: {}\n", e.what());
    return kInconsistent;
  } catch (const oracle::LimitExceeded& e) {
    fmt::print(stderr, "monocount: limit exceeded: {}\n", e.what());
    return kLimit;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "monocount: {}\n", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    fmt::print(stderr, "monocount: {}\n", e.what());
    return kUsage;
  } catch (const std::bad_alloc&) {
    fmt::print(stderr, "monocount: limit exceeded: out of memory\n");
    return kLimit;
  }
  return kOk;
}
