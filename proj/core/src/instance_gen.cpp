#include "monocount/instance_gen.hpp"
#include "monocount/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace monocount {

namespace {

// Guards ceil() against products like 20.000000000000004.
constexpr double kCeilSlack = 1e-9;

double log_candidates(std::uint32_t n, std::uint32_t k) {
  return k * std::log(2.0) + std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

}  // namespace

std::uint32_t clause_length(std::uint32_t n, double lambda) {
  if (n < 2) throw std::domain_error("clause_length: n must be at least 2");
  if (!(lambda > 0.0)) throw std::domain_error("clause_length: lambda must be positive");
  const double k = std::ceil(lambda * std::log2(static_cast<double>(n)) - kCeilSlack);
  if (k > static_cast<double>(n)) {
    throw std::domain_error(
        fmt::format("clause_length: ceil({} * log2 {}) = {} exceeds n", lambda, n, k));
  }
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(k));
}

std::size_t clause_count(std::uint32_t n, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("clause_count: delta must be positive");
  return static_cast<std::size_t>(std::ceil(delta * n - kCeilSlack));
}

void validate(const GenParams& p) {
  const auto k = clause_length(p.n, p.lambda);
  (void)clause_count(p.n, p.delta);
  if (p.lambda_up && (*p.lambda_up < k || *p.lambda_up > p.n)) {
    throw std::domain_error(fmt::format(
        "upper clause length {} must lie in [{}, {}]", *p.lambda_up, k, p.n));
  }
}

ClauseSampler::ClauseSampler(std::uint32_t n) : n_(n), stamp_(n, 0) {}

std::span<const Literal> ClauseSampler::draw(std::uint32_t k, Rng& rng) {
  if (k < 1 || k > n_) throw std::invalid_argument("ClauseSampler: need 1 <= k <= n");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  lits_.clear();
  // Floyd: for j = n-k .. n-1 pick t in [0, j]; take j if t is already taken.
  for (std::uint32_t j = n_ - k; j < n_; ++j) {
    auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
    if (stamp_[t] == epoch_) t = j;
    stamp_[t] = epoch_;
    lits_.push_back(Literal{var(t + 1), false});
  }
  for (Literal& l : lits_) l.negated = rng.coin();
  return lits_;
}

Clause ClauseSampler::draw_clause(std::uint32_t k, Rng& rng) {
  std::vector<VarId> pos;
  std::vector<VarId> neg;
  for (const Literal& l : draw(k, rng)) (l.negated ? neg : pos).push_back(l.var);
  return Clause(std::move(pos), std::move(neg));
}

Clause random_clause(std::uint32_t n, std::uint32_t k, Rng& rng) {
  ClauseSampler sampler(n);
  return sampler.draw_clause(k, rng);
}

LengthDistribution::LengthDistribution(std::uint32_t n, std::uint32_t k_min, std::uint32_t k_max)
    : k_min_(k_min), k_max_(k_max) {
  if (k_min < 1 || k_min > k_max || k_max > n) {
    throw std::invalid_argument("LengthDistribution: need 1 <= k_min <= k_max <= n");
  }
  std::vector<double> logw;
  for (std::uint32_t k = k_min; k <= k_max; ++k) logw.push_back(log_candidates(n, k));
  const double top = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  for (double lw : logw) total += std::exp(lw - top);
  double acc = 0.0;
  for (double lw : logw) {
    const double p = std::exp(lw - top) / total;
    probs_.push_back(p);
    acc += p;
    cumulative_.push_back(acc);
  }
}

std::uint32_t LengthDistribution::sample(Rng& rng) const {
  const double u = rng.unit();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto i = it == cumulative_.end() ? cumulative_.size() - 1
                                         : static_cast<std::size_t>(it - cumulative_.begin());
  return k_min_ + static_cast<std::uint32_t>(i);
}

Formula random_formula(const GenParams& p) {
  validate(p);
  const std::uint32_t k = clause_length(p.n, p.lambda);
  const std::uint32_t k_max = p.lambda_up.value_or(k);
  const std::size_t m = clause_count(p.n, p.delta);

  std::optional<LengthDistribution> lengths;
  if (k_max > k) lengths.emplace(p.n, k, k_max);

  if (p.distinct) {
    double log_total = -std::numeric_limits<double>::infinity();
    for (std::uint32_t len = k; len <= k_max; ++len) {
      const double lc = log_candidates(p.n, len);
      log_total = std::max(log_total, lc) + std::log1p(std::exp(-std::abs(log_total - lc)));
    }
    bool short_supply = log_total < std::log(static_cast<double>(m)) - 1e-6;
    if (!short_supply && log_total < std::log(static_cast<double>(m)) + 1e-6) {
      // Too close to call in floating point: count the candidates exactly.
      BigInt total = 0;
      for (std::uint32_t len = k; len <= k_max; ++len) {
        BigInt c = 1;
        for (std::uint32_t t = 0; t < len; ++t) c = c * (p.n - t) / (t + 1);
        total += c << len;
      }
      short_supply = total < m;
    }
    if (short_supply) {
      throw std::domain_error("random_formula: fewer distinct candidate clauses than requested");
    }
  }

  Rng rng(p.seed);
  ClauseSampler sampler(p.n);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  std::set<Clause> seen;
  while (clauses.size() < m) {
    const std::uint32_t len = lengths ? lengths->sample(rng) : k;
    Clause c = sampler.draw_clause(len, rng);
    if (p.distinct && !seen.insert(c).second) continue;
    clauses.push_back(std::move(c));
  }
  return Formula(p.n, std::move(clauses),
                 Provenance{p.seed, p.delta, p.lambda, k, k_max, p.distinct});
}

}  // namespace monocount
