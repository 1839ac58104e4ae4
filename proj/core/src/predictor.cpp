#include "monocount/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "monocount/instance_gen.hpp"

namespace monocount {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kCorrectionCutoff = 1e-15;
constexpr double kSnap = 1e-9;
const double kLn2 = std::log(2.0);

double snap(double a) {
  const double r = std::round(a);
  return std::abs(a - r) < kSnap ? r : a;
}

// out[b] = ln C(a, b) for b = 0..K, -inf once b exceeds a.
void log_binomial_row(double a, std::uint32_t K, std::vector<double>& out) {
  a = snap(a);
  out.assign(K + 1, kNegInf);
  out[0] = 0.0;
  for (std::uint32_t b = 0; b < K; ++b) {
    if (static_cast<double>(b) + 1.0 > a) break;
    out[b + 1] = out[b] + std::log(a - b) - std::log(b + 1.0);
  }
}

double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  if (top == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

// Unnormalised log weights of the overlap j = 0..K at crystal size s.
struct OverlapTerms {
  std::vector<double> free_row;
  std::vector<double> frozen_row;
  std::vector<double> terms;

  void compute(std::uint32_t n, std::uint32_t K, double s) {
    log_binomial_row(static_cast<double>(n) - s, K, free_row);
    log_binomial_row(s, K, frozen_row);
    terms.assign(K + 1, kNegInf);
    for (std::uint32_t j = 0; j <= K; ++j) {
      const double f = free_row[K - j];
      const double c = frozen_row[j];
      if (f == kNegInf || c == kNegInf) continue;
      terms[j] = (K - j) * kLn2 + f + c;
    }
  }
};

void check_args(std::uint32_t n, std::uint32_t K, double s) {
  if (K > n) throw std::domain_error("clause length exceeds n");
  if (!(s >= 0.0) || s > static_cast<double>(n) + kSnap) {
    throw std::domain_error(fmt::format("crystal size {} outside [0, {}]", s, n));
  }
}

OverlapDistribution distribution_from(const OverlapTerms& t, std::uint32_t K) {
  OverlapDistribution d;
  d.K = K;
  d.log_total = log_sum_exp(t.terms);
  d.weights.assign(K + 1, 0.0);
  for (std::uint32_t j = 0; j <= K; ++j) {
    if (t.terms[j] != kNegInf) d.weights[j] = std::exp(t.terms[j] - d.log_total);
  }
  return d;
}

double next_size(double s_prev, std::uint32_t n, std::uint32_t K, const OverlapDistribution& d) {
  const double s = s_prev + K - d.mean();
  return std::clamp(s, s_prev, std::min<double>(n, s_prev + K));
}

double log_all_clauses(std::uint32_t n, std::uint32_t K) {
  std::vector<double> row;
  log_binomial_row(n, K, row);
  return K * kLn2 + row[K];
}

// ln(exp(log_x) - y) for y >= 0, or -inf when y >= exp(log_x).
double log_minus(double log_x, double y) {
  if (y <= 0.0) return log_x;
  const double ratio = std::exp(std::log(y) - log_x);
  if (ratio >= 1.0) return kNegInf;
  if (ratio <= kCorrectionCutoff) return log_x;
  return log_x + std::log1p(-ratio);
}

double p_from(double log_compat, double log_all, std::size_t i, double w) {
  const double log_den = log_minus(log_all, w);
  if (log_den == kNegInf) {
    throw std::domain_error("p_at: clauses examined reach the total number of candidates");
  }
  const double log_num = log_minus(log_compat, static_cast<double>(i));
  if (log_num == kNegInf) return 0.0;
  return std::clamp(std::exp(log_num - log_den), 0.0, 1.0);
}

}  // namespace

double log_binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) {
    throw std::domain_error(fmt::format("log_binomial: need 0 <= b <= a, got a={}, b={}", a, b));
  }
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double log_binomial_real(double a, std::uint32_t b) {
  std::vector<double> row;
  log_binomial_row(a, b, row);
  return row[b];
}

double OverlapDistribution::mean() const noexcept {
  double e = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) e += static_cast<double>(j) * weights[j];
  return e;
}

OverlapDistribution overlap_distribution(std::uint32_t n, std::uint32_t K, double s_prev) {
  check_args(n, K, s_prev);
  OverlapTerms t;
  t.compute(n, K, s_prev);
  return distribution_from(t, K);
}

double s_next(std::uint32_t n, std::uint32_t K, double s_prev) {
  return next_size(s_prev, n, K, overlap_distribution(n, K, s_prev));
}

double p_at(std::uint32_t n, std::uint32_t K, double s_i, std::size_t i, double w_i) {
  const auto d = overlap_distribution(n, K, s_i);
  return p_from(d.log_total, log_all_clauses(n, K), i, w_i);
}

PredictResult predict_istop(std::uint32_t n, double delta, double lambda,
                            const PredictOptions& options) {
  PredictResult r;
  r.n = n;
  r.delta = delta;
  r.lambda = lambda;
  r.K = clause_length(n, lambda);
  r.m = clause_count(n, delta);
  r.bound = closed_form_bound(n, delta, lambda);
  const double x = lambda * std::log2(static_cast<double>(n));
  r.exponent = delta * x > 1.0 ? runtime_exponent(n, delta, lambda)
                               : std::numeric_limits<double>::quiet_NaN();

  const std::uint32_t K = r.K;
  const double m = static_cast<double>(r.m);
  const double log_all = log_all_clauses(n, K);

  RecurrenceState st;  // i = 0: s = 0, p = 1, w = 0
  if (options.keep_trace) r.trace.push_back(st);

  OverlapTerms terms;
  OverlapDistribution at_s = overlap_distribution(n, K, 0.0);
  for (;;) {
    if (st.p <= 0.0) {
      r.exhausted = true;
      r.i_stop = st.i;
      break;
    }
    RecurrenceState next;
    next.i = st.i + 1;
    next.w = st.w + 1.0 / st.p;
    next.s = next_size(st.s, n, K, at_s);
    terms.compute(n, K, next.s);
    at_s = distribution_from(terms, K);
    const bool past_supply = !(log_minus(log_all, next.w) > kNegInf);
    next.p = past_supply ? 0.0 : p_from(at_s.log_total, log_all, next.i, next.w);
    st = next;
    if (options.keep_trace) r.trace.push_back(st);
    if (st.w >= m || st.i >= r.m) {
      r.i_stop = std::min(st.i, r.m);
      break;
    }
  }
  return r;
}

double closed_form_bound(std::uint64_t n, double delta, double lambda) {
  if (n < 2) throw std::domain_error("closed_form_bound: n must be at least 2");
  const double nn = n;
  const double lg = std::log2(nn);
  const double inv_root = std::pow(nn, -lambda / 2.0);  // 1 / sqrt(n^lambda)
  return nn / (lambda * lg) * (1.0 - inv_root) + delta * nn * inv_root;
}

double runtime_exponent(std::uint64_t n, double delta, double lambda) {
  if (n < 2) throw std::domain_error("runtime_exponent: n must be at least 2");
  const double x = lambda * std::log2(static_cast<double>(n));
  if (!(delta * x > 1.0)) {
    throw std::domain_error("runtime_exponent: requires delta * lambda * log2 n > 1");
  }
  return n * std::log2(delta * x) / x;
}

}  // namespace monocount
