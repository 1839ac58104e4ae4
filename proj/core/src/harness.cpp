#include "monocount/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"
#include "monocount/exact_counter.hpp"
#include "monocount/instance_gen.hpp"
#include "monocount/oracle.hpp"
#include "monocount/rng.hpp"

namespace monocount::harness {

unsigned default_threads() {
  if (const char* env = std::getenv("MONOCOUNT_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(std::min(v, 1024L));
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::string format_real(double x) { return fmt::format("{}", x); }

void write_trace_csv(const PredictResult& r, std::ostream& out) {
  out << "i,s,p,w\n";
  for (const RecurrenceState& st : r.trace) {
    out << fmt::format("{},{},{},{}\n", st.i, st.s, st.p, st.w);
  }
}

std::string result_header() { return "n,delta,lambda,i_stop,bound,exponent"; }

std::string result_row(const PredictResult& r) {
  return fmt::format("{},{},{},{},{},{}", r.n, r.delta, r.lambda, r.i_stop, r.bound,
                     std::isnan(r.exponent) ? std::string() : format_real(r.exponent));
}

void write_trials_csv(const PsiSummary& s, std::ostream& out) {
  out << "trial,i_final,consumed\n";
  for (std::size_t t = 0; t < s.runs.size(); ++t) {
    out << fmt::format("{},{},{}\n", t, s.runs[t].i_final, s.runs[t].consumed);
  }
}

std::string summary_header() { return "n,delta,lambda,trials,mean,min,max,stddev,master_seed"; }

std::string summary_row(const PsiSummary& s) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", s.n, s.delta, s.lambda, s.trials, s.mean,
                     s.min, s.max, s.stddev, s.master_seed);
}

// ---- sweep configuration ---------------------------------------------------

namespace {

using nlohmann::json;

const std::set<std::string> kConfigKeys = {"n_list",  "delta_list",  "lambda_list", "trials",
                                           "master_seed", "sim_cap", "output_dir"};

template <class T>
std::vector<T> list_of(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(fmt::format("{} must be a nonempty list", key));
  std::vector<T> out;
  for (const json& x : v) {
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_unsigned()) {
        throw ConfigError(fmt::format("{} entries must be positive integers", key));
      }
    } else if (!x.is_number()) {
      throw ConfigError(fmt::format("{} entries must be numbers", key));
    }
    out.push_back(x.get<T>());
  }
  return out;
}

std::uint64_t unsigned_of(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(fmt::format("{} must be a non-negative integer", key));
  return v.get<std::uint64_t>();
}

}  // namespace

SweepConfig parse_sweep_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("sweep config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw ConfigError(fmt::format("unknown sweep config key '{}'", key));
  }
  for (const std::string& key : kConfigKeys) {
    if (!j.contains(key)) throw ConfigError(fmt::format("missing sweep config key '{}'", key));
  }

  SweepConfig cfg;
  for (std::uint64_t n : list_of<std::uint64_t>(j, "n_list")) {
    if (n < 2 || n > 0xFFFFFFFFULL) throw ConfigError(fmt::format("n_list entry {} out of range", n));
    cfg.n_list.push_back(static_cast<std::uint32_t>(n));
  }
  cfg.delta_list = list_of<double>(j, "delta_list");
  cfg.lambda_list = list_of<double>(j, "lambda_list");
  for (double d : cfg.delta_list) {
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("delta_list entries must be positive");
  }
  for (double l : cfg.lambda_list) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("lambda_list entries must be positive");
  }
  cfg.trials = unsigned_of(j, "trials");
  if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
  cfg.master_seed = unsigned_of(j, "master_seed");
  const std::uint64_t cap = unsigned_of(j, "sim_cap");
  cfg.sim_cap = static_cast<std::uint32_t>(std::min<std::uint64_t>(cap, 0xFFFFFFFFULL));
  if (!j.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
  cfg.output_dir = j.at("output_dir").get<std::string>();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read {}", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

// ---- sweep rows ------------------------------------------------------------

namespace {

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return fmt::format("{}", *v);
  }
}

std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = c == ',' ? ';' : ' ';
  }
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <class T>
std::optional<T> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  T v{};
  if constexpr (std::is_floating_point_v<T>) {
    v = std::stod(s, &pos);
  } else {
    v = static_cast<T>(std::stoull(s, &pos));
  }
  if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  return v;
}

using GridKey = std::tuple<std::uint32_t, double, double>;

}  // namespace

std::string SweepRow::key() const { return fmt::format("{},{},{}", n, delta, lambda); }

std::string sweep_header() {
  return "n,delta,lambda,i_stop_pred,bound,obs_mean,obs_min,obs_max,trials,master_seed,error";
}

std::string sweep_row(const SweepRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", r.key(), opt(r.i_stop_pred), opt(r.bound),
                     opt(r.obs_mean), opt(r.obs_min), opt(r.obs_max), opt(r.trials),
                     opt(r.master_seed), csv_safe(r.error));
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << sweep_header() << '\n';
  for (const SweepRow& r : rows) out << sweep_row(r) << '\n';
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != sweep_header()) throw ConfigError("sweep.csv has an unexpected header");
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_fields(line);
    if (f.size() != 11) throw ConfigError(fmt::format("sweep.csv line {}: expected 11 fields", lineno));
    try {
      SweepRow r;
      r.n = *parse_opt<std::uint32_t>(f[0]);
      r.delta = *parse_opt<double>(f[1]);
      r.lambda = *parse_opt<double>(f[2]);
      r.i_stop_pred = parse_opt<std::size_t>(f[3]);
      r.bound = parse_opt<double>(f[4]);
      r.obs_mean = parse_opt<double>(f[5]);
      r.obs_min = parse_opt<std::size_t>(f[6]);
      r.obs_max = parse_opt<std::size_t>(f[7]);
      r.trials = parse_opt<std::size_t>(f[8]);
      r.master_seed = parse_opt<std::uint64_t>(f[9]);
      r.error = f[10];
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ConfigError(fmt::format("sweep.csv line {}: {}", lineno, e.what()));
    }
  }
  return rows;
}

SweepRow evaluate_point(std::uint32_t n, double delta, double lambda, const SweepConfig& cfg,
                        const SweepOptions& options) {
  SweepRow row;
  row.n = n;
  row.delta = delta;
  row.lambda = lambda;
  try {
    (void)clause_length(n, lambda);
    row.bound = closed_form_bound(n, delta, lambda);
    if (n <= options.predict_cap) {
      row.i_stop_pred = predict_istop(n, delta, lambda, PredictOptions{.keep_trace = false}).i_stop;
    }
    if (n <= cfg.sim_cap) {
      const PsiSummary s =
          sample_summary(n, delta, lambda, cfg.trials, cfg.master_seed, 1, options.psi);
      row.obs_mean = s.mean;
      row.obs_min = s.min;
      row.obs_max = s.max;
      row.trials = s.trials;
      row.master_seed = s.master_seed;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, const SweepOptions& options) {
  std::vector<GridKey> grid;
  for (std::uint32_t n : cfg.n_list) {
    for (double d : cfg.delta_list) {
      for (double l : cfg.lambda_list) grid.emplace_back(n, d, l);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < grid.size(); k = next.fetch_add(1)) {
      const auto& [n, d, l] = grid[k];
      rows[k] = evaluate_point(n, d, l, cfg, options);
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, grid.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::filesystem::create_directories(cfg.output_dir);
  const auto path = cfg.output_dir / "sweep.csv";
  std::map<GridKey, SweepRow> merged;
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    for (SweepRow& r : read_sweep_csv(in)) {
      GridKey k{r.n, r.delta, r.lambda};
      merged[k] = std::move(r);
    }
  }
  for (const SweepRow& r : rows) merged[GridKey{r.n, r.delta, r.lambda}] = r;
  std::vector<SweepRow> all;
  all.reserve(merged.size());
  for (auto& [k, r] : merged) all.push_back(std::move(r));

  const auto tmp = cfg.output_dir / "sweep.csv.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write {}", tmp.string()));
    write_sweep_csv(all, out);
  }
  std::filesystem::rename(tmp, path);
  return rows;
}

// ---- selfcheck ---------------------------------------------------------------

Formula selfcheck_formula(std::uint64_t seed, std::size_t index) {
  Rng rng(derive_seed(seed, index));
  const auto n = static_cast<std::uint32_t>(1 + rng.below(16));
  if (index == 0) return Formula(n);
  const auto m = static_cast<std::size_t>(rng.below(19));
  const std::uint32_t lg = static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(n)) - 1e-9));
  const std::uint32_t widths[] = {1, 2, 3, std::max(lg, 1U), n};

  std::vector<Clause> clauses;
  clauses.reserve(m);
  while (clauses.size() < m) {
    const std::uint64_t roll = rng.below(20);
    if (roll == 0 && !clauses.empty()) {
      clauses.push_back(clauses[rng.below(clauses.size())]);
      continue;
    }
    if (roll == 1 && n >= 1) {
      const auto v = static_cast<int>(1 + rng.below(n));
      std::vector<int> lits{v, -v};
      if (n >= 2 && rng.coin()) {
        auto u = static_cast<int>(1 + rng.below(n));
        lits.push_back(rng.coin() ? u : -u);
      }
      clauses.push_back(Clause::from_literals(lits));
      continue;
    }
    const std::uint32_t k = std::min(widths[rng.below(5)], n);
    clauses.push_back(random_clause(n, k, rng));
  }
  return Formula(n, std::move(clauses));
}

FormulaCheck check_formula(const Formula& f, unsigned threads) {
  FormulaCheck c;
  CountOptions opts;
  opts.threads = threads;
  const CountReport rep = count_with_report(f, opts);
  const BigCount models = oracle::brute_force_models(f);
  c.count = rep.models == models && unsat_fused(f, threads) == pow2(f.num_vars()) - models;
  c.ledger = rep.ledger == oracle::brute_force_ledger(f);

  const BigCount unsat = oracle::brute_force_unsat(f);
  const std::size_t top = max_monotone_size(f, threads);
  c.bonferroni = top == rep.max_size;
  for (std::size_t r = 1; r <= top + 1 && c.bonferroni; ++r) {
    const BigInt v = truncated_unsat(f, r, threads).value;
    if (r >= top) {
      c.bonferroni = v == unsat;
    } else {
      c.bonferroni = (r % 2 == 1) ? v >= unsat : v <= unsat;
    }
  }
  if (!(c.count && c.ledger && c.bonferroni)) {
    c.detail = fmt::format("n={} m={} models={} oracle={}", f.num_vars(), f.num_clauses(),
                           rep.models.str(), models.str());
  }
  return c;
}

std::string SelfcheckReport::summary() const {
  return fmt::format("{}/{} count-oracle, {}/{} ledger-oracle, {}/{} bonferroni", count_ok, total,
                     ledger_ok, total, bonferroni_ok, total);
}

SelfcheckReport run_selfcheck(std::size_t count, std::uint64_t seed, unsigned threads) {
  if (count < 1) throw std::invalid_argument("selfcheck: count must be at least 1");
  SelfcheckReport rep;
  rep.total = count;
  for (std::size_t i = 0; i < count; ++i) {
    const Formula f = selfcheck_formula(seed, i);
    const FormulaCheck c = check_formula(f, threads);
    rep.count_ok += c.count;
    rep.ledger_ok += c.ledger;
    rep.bonferroni_ok += c.bonferroni;
    if (!c.detail.empty()) rep.failures.push_back(fmt::format("formula {}: {}", i, c.detail));
  }
  return rep;
}

}  // namespace monocount::harness
