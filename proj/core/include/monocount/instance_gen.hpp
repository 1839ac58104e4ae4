#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "monocount/formula.hpp"
#include "monocount/rng.hpp"

namespace monocount {

/// Parameters of a random sparse formula: n variables, ceil(delta * n)
/// clauses, clause lengths in [ceil(lambda * log2 n), lambda_up].
struct GenParams {
  std::uint32_t n = 0;
  double delta = 1.0;
  double lambda = 1.0;
  /// Upper clause length; unset means every clause has the lower length.
  std::optional<std::uint32_t> lambda_up;
  std::uint64_t seed = 0;
  /// Reject duplicate clauses instead of sampling with replacement.
  bool distinct = false;
};

/// ceil(lambda * log2 n). Throws std::domain_error if n < 2 or the length
/// exceeds n.
std::uint32_t clause_length(std::uint32_t n, double lambda);

/// ceil(delta * n).
std::size_t clause_count(std::uint32_t n, double delta);

/// Throws std::invalid_argument / std::domain_error when params are unusable.
void validate(const GenParams& params);

/// Draws uniform clauses: k distinct variables by Floyd's subset sampling,
/// each with an independent fair sign. Keeps an O(n) scratch table so that
/// one draw costs O(k).
class ClauseSampler {
 public:
  explicit ClauseSampler(std::uint32_t n);

  std::uint32_t num_vars() const noexcept { return n_; }

  /// Literals of one clause, in sampling order. Valid until the next draw.
  std::span<const Literal> draw(std::uint32_t k, Rng& rng);

  Clause draw_clause(std::uint32_t k, Rng& rng);

 private:
  std::uint32_t n_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<Literal> lits_;
};

/// Clause with k distinct variables drawn uniformly among the 2^k C(n,k)
/// candidates. Requires 1 <= k <= n.
Clause random_clause(std::uint32_t n, std::uint32_t k, Rng& rng);

/// Picks clause lengths in [k_min, k_max] with probability proportional to
/// 2^k C(n,k), so clauses are uniform over the whole candidate set.
class LengthDistribution {
 public:
  LengthDistribution(std::uint32_t n, std::uint32_t k_min, std::uint32_t k_max);

  std::uint32_t sample(Rng& rng) const;
  std::uint32_t k_min() const noexcept { return k_min_; }
  std::uint32_t k_max() const noexcept { return k_max_; }
  /// Probability of length k_min + i.
  std::span<const double> probabilities() const noexcept { return probs_; }

 private:
  std::uint32_t k_min_;
  std::uint32_t k_max_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

/// The random formula fully determined by params (including the seed).
Formula random_formula(const GenParams& params);

}  // namespace monocount
