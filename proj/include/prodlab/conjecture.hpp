#ifndef PRODLAB_CONJECTURE_HPP
#define PRODLAB_CONJECTURE_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "closed_form.hpp"
#include "const_expr.hpp"
#include "evaluator.hpp"
#include "product.hpp"

namespace prodlab {

inline constexpr std::uint64_t kConjectureFactorBudget = 10'000'000;
inline constexpr long kDefaultQMax = 12;
inline constexpr long kDefaultRMax = 64;
inline constexpr int kRecognitionMinBits = 133;  // 40 decimal digits
inline constexpr std::size_t kDefaultConjectureBlocks = 10;
inline constexpr int kDefaultConjecturePrecision = 256;

/// e^x K^y r
struct RecognitionCandidate {
  long K = 2;
  Rational x;
  Rational y;
  Rational r{1};
  PrecisionReal residual;

  long complexity() const {
    return x.denominator().get_si() + y.denominator().get_si() + r.numerator().get_si() +
           r.denominator().get_si();
  }

  ConstExpr expr() const {
    using E = ConstExpr;
    std::optional<E> out;
    auto mul = [&](const E& f) { out = out ? *out * f : f; };
    if (!x.is_zero()) mul(x == Rational(1) ? E::e() : pow(E::e(), x));
    if (!y.is_zero()) mul(y == Rational(1) ? E::integer(K) : pow(E::integer(K), y));
    if (r != Rational(1) || !out) mul(E::rational(r));
    return *out;
  }

  std::string render() const { return expr().render(); }
};

namespace detail {

inline bool candidate_less(const RecognitionCandidate& a, const RecognitionCandidate& b) {
  if (a.complexity() != b.complexity()) return a.complexity() < b.complexity();
  const auto ra = a.residual.value().abs();
  const auto rb = b.residual.value().abs();
  if (ra < rb) return true;
  if (rb < ra) return false;
  return std::tie(a.x, a.y, a.r) < std::tie(b.x, b.y, b.r);
}

// p/q in lowest terms with q <= q_max and |p/q| <= bound, ascending.
inline std::vector<Rational> bounded_fractions(long q_max, long bound) {
  std::set<Rational> seen;
  for (long q = 1; q <= q_max; ++q)
    for (long p = -bound * q; p <= bound * q; ++p) seen.insert(Rational(p, q));
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// Block-sum estimate of pippenger_general(K) through n_blocks blocks.
inline EvalReport estimate_general_limit(long K, std::size_t n_blocks, int p) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "K must be at least 2");
  if (n_blocks < 1) throw Error(ErrorKind::InvalidArgument, "need at least one block");
  const auto prod = pippenger_general(K);
  const mpz_class total = cumulative_size(prod.schedule, n_blocks);
  if (total > static_cast<unsigned long>(kConjectureFactorBudget))
    throw Error(ErrorKind::BudgetExceeded, "K=" + std::to_string(K) + " with " + std::to_string(n_blocks) +
                                               " blocks needs " + total.get_str() + " factors (limit " +
                                               std::to_string(kConjectureFactorBudget) + ")");
  return catalan_block_partial(prod, n_blocks, p, kConjectureFactorBudget);
}

/// All e^x K^y r within 1e-30 of `value` in log space, with |x|, |y| <= 4,
/// denominators of x and y at most q_max and r = a/b, a, b <= r_max.
/// Sorted by complexity, residual, then (x, y, r).
inline std::vector<RecognitionCandidate> recognize_constant(const PrecisionReal& value, long K,
                                                            long q_max = kDefaultQMax, long r_max = kDefaultRMax) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "K must be at least 2");
  if (q_max < 1 || r_max < 1) throw Error(ErrorKind::InvalidArgument, "search bounds must be positive");
  if (value.precision_bits() < kRecognitionMinBits)
    throw Error(ErrorKind::InvalidArgument, "recognition needs at least 40 accurate digits");
  if (value.value().sign() <= 0) return {};

  const int w = value.precision_bits() + kGuardBits;
  const BigFloat ln_v = log(BigFloat(value.value(), w));
  const BigFloat ln_K = log(BigFloat(K, w));
  const long double lv = ln_v.to_long_double();
  const long double lk = ln_K.to_long_double();
  const BigFloat threshold = BigFloat::from_string("1e-30", w);

  const auto fractions = detail::bounded_fractions(q_max, 4);
  std::vector<std::pair<Rational, long double>> rationals;
  for (long a = 1; a <= r_max; ++a)
    for (long b = 1; b <= r_max; ++b)
      if (std::gcd(a, b) == 1) rationals.emplace_back(Rational(a, b), std::log(static_cast<long double>(a) / b));

  std::vector<RecognitionCandidate> out;
  for (const auto& y : fractions) {
    const long double ly = y.to_double() * lk;
    for (const auto& [r, lr] : rationals) {
      const long double t = lv - ly - lr;  // wants x = t
      if (std::fabs(t) > 4.0L + 1e-9L) continue;
      std::set<Rational> xs;
      for (long q = 1; q <= q_max; ++q) {
        const long double pq = std::nearbyint(t * q);
        if (std::fabs(t - pq / q) < 1e-12L) xs.insert(Rational(static_cast<long>(pq), q));
      }
      for (const auto& x : xs) {
        BigFloat res = ln_v - BigFloat(x, w) - mul_rational(ln_K, y) - log_rational(r, w);
        if (res.abs() < threshold)
          out.push_back(RecognitionCandidate{K, x, y, r, PrecisionReal(res, value.precision_bits())});
      }
    }
  }
  std::sort(out.begin(), out.end(), detail::candidate_less);
  return out;
}

/// a + b/K through two recognized points.
struct ExponentFit {
  Rational a;
  Rational b;
  Rational at(long K) const { return a + b / Rational(K); }
  std::string render() const { return a.to_string() + " + (" + b.to_string() + ")/K"; }
};

struct ConjectureRow {
  long K = 2;
  EvalReport estimate;      // block sum with tail bound
  EvalReport high_precision;  // gamma route, used for recognition
  bool consistent = false;  // the two agree within the estimate's tail bound
  std::vector<RecognitionCandidate> candidates;
  bool conjectural = true;
};

struct TrendPrediction {
  long K;
  Rational x;
  Rational y;
  bool matches;  // e^x K^y equals the high-precision value within 1e-30 (log space)
};

struct ConjectureReport {
  std::vector<ConjectureRow> rows;
  std::optional<ExponentFit> x_fit;
  std::optional<ExponentFit> y_fit;
  std::vector<TrendPrediction> predictions;
  bool conjectural = true;
};

namespace detail {

inline ExponentFit fit_two_points(long K1, const Rational& v1, long K2, const Rational& v2) {
  // v = a + b/K
  const Rational i1(1, K1), i2(1, K2);
  const Rational b = (v1 - v2) / (i1 - i2);
  return {v1 - b * i1, b};
}

}  // namespace detail

/// Per-K estimates and recognition, plus an a + b/K trend of the exponents
/// fitted from the first two rows whose top candidate has r = 1.
inline ConjectureReport conjecture_report(const std::vector<long>& K_range, int p,
                                          std::size_t n_blocks = kDefaultConjectureBlocks) {
  ConjectureReport report;
  const int hp = std::max(p, kRecognitionMinBits + 32);
  for (long K : K_range) {
    ConjectureRow row;
    row.K = K;
    row.estimate = estimate_general_limit(K, n_blocks, p);
    row.high_precision = catalan_limit_gamma(pippenger_general(K), hp);
    if (row.estimate.error_bound) {
      const BigFloat diff =
          abs(log(row.estimate.value.value()) - log(row.high_precision.value.value())).round_to(96);
      row.consistent = !(row.estimate.error_bound->value() + row.estimate.value.slack() < diff);
    }
    row.candidates = recognize_constant(row.high_precision.value, K);
    row.conjectural = !(K == 2 || K == 3);
    report.rows.push_back(std::move(row));
  }

  std::vector<const RecognitionCandidate*> fitted;
  for (const auto& row : report.rows)
    if (!row.candidates.empty() && row.candidates.front().r == Rational(1)) fitted.push_back(&row.candidates.front());
  if (fitted.size() >= 2) {
    const auto& c1 = *fitted[0];
    const auto& c2 = *fitted[1];
    report.x_fit = detail::fit_two_points(c1.K, c1.x, c2.K, c2.x);
    report.y_fit = detail::fit_two_points(c1.K, c1.y, c2.K, c2.y);
    for (const auto& row : report.rows) {
      TrendPrediction pr{row.K, report.x_fit->at(row.K), report.y_fit->at(row.K), false};
      const int w = row.high_precision.value.precision_bits() + kGuardBits;
      const BigFloat res = log(BigFloat(row.high_precision.value.value(), w)) - BigFloat(pr.x, w) -
                           mul_rational(log(BigFloat(row.K, w)), pr.y);
      pr.matches = res.abs() < BigFloat::from_string("1e-30", w);
      report.predictions.push_back(pr);
    }
  }
  return report;
}

}  // namespace prodlab

#endif  // PRODLAB_CONJECTURE_HPP
