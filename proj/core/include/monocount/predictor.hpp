#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace monocount {

/// ln C(a, b) via lgamma. Throws std::domain_error unless 0 <= b <= a.
double log_binomial(std::int64_t a, std::int64_t b);

/// ln C(a, b) for real a >= 0 and integer b >= 0, using the falling
/// factorial a (a-1) ... (a-b+1) / b!. Returns -infinity when b > a, which
/// is how "no such choice" is encoded in the overlap weights below.
double log_binomial_real(double a, std::uint32_t b);

/// Distribution of the overlap j between a compatible random K-clause and a
/// crystal of s crystalised variables out of n:
///   pi_j  proportional to  2^(K-j) C(n-s, K-j) C(s, j).
struct OverlapDistribution {
  std::uint32_t K = 0;
  std::vector<double> weights;  // pi_0 .. pi_K, summing to 1
  /// ln of the unnormalised total, i.e. the number of compatible clauses.
  double log_total = 0.0;

  double mean() const noexcept;
};

OverlapDistribution overlap_distribution(std::uint32_t n, std::uint32_t K, double s_prev);

/// Expected crystal size after enrolling one more compatible clause:
/// s_prev + K - E[j], clamped to [s_prev, min(n, s_prev + K)].
double s_next(std::uint32_t n, std::uint32_t K, double s_prev);

/// Probability that a random clause is compatible with a crystal of s_i
/// variables after i enrollments and w_i clauses examined:
///   (C_compat(s_i) - i) / (2^K C(n, K) - w_i),
/// evaluated in log space. The -i and -w_i corrections are applied as
/// log1p factors when they exceed 1e-15 relative, otherwise dropped. Returns
/// 0 when the compatible supply is used up. Throws std::domain_error if w_i
/// reaches the total number of candidate clauses.
double p_at(std::uint32_t n, std::uint32_t K, double s_i, std::size_t i, double w_i);

struct RecurrenceState {
  std::size_t i = 0;
  double s = 0.0;
  double p = 1.0;
  double w = 0.0;
};

struct PredictResult {
  std::uint32_t n = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::uint32_t K = 0;
  std::size_t m = 0;
  std::size_t i_stop = 0;
  /// Rows i = 0 .. i_stop (empty when the trace was not requested).
  std::vector<RecurrenceState> trace;
  double bound = 0.0;
  double exponent = 0.0;
  /// True when the loop ended because p reached 0 rather than w >= m.
  bool exhausted = false;
};

struct PredictOptions {
  bool keep_trace = true;
};

/// Unrolls s, p, w from (0, 1, 0) until the first i with w_i >= ceil(delta n).
PredictResult predict_istop(std::uint32_t n, double delta, double lambda,
                            const PredictOptions& options = {});

/// (n / (lambda log2 n)) (1 - n^(-lambda/2)) + delta n n^(-lambda/2).
double closed_form_bound(std::uint64_t n, double delta, double lambda);

/// n log2(delta lambda log2 n) / (lambda log2 n): log2 of the asymptotic
/// enumeration cost. Throws std::domain_error unless delta lambda log2 n > 1.
double runtime_exponent(std::uint64_t n, double delta, double lambda);

}  // namespace monocount
