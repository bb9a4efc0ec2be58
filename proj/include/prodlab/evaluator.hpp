#ifndef PRODLAB_EVALUATOR_HPP
#define PRODLAB_EVALUATOR_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "big_float.hpp"
#include "closed_form.hpp"
#include "gamma.hpp"
#include "product.hpp"
#include "rational.hpp"

namespace prodlab {

enum class EvalMethod { ExactPartial, Extrapolated, Gamma, StirlingClosed, BlockSum };

inline const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::ExactPartial: return "exact-partial";
    case EvalMethod::Extrapolated: return "extrapolated";
    case EvalMethod::Gamma: return "gamma";
    case EvalMethod::StirlingClosed: return "stirling-closed";
    case EvalMethod::BlockSum: return "block-sum";
  }
  return "?";
}

/// Result of a numeric evaluation.
///
/// `error_bound` empty means the method has no computed bound (the value is
/// then "heuristic"); `error_estimate` may still carry an indicative size.
/// For block-sum and gamma on Catalan-type products the bound is the tail
/// bound on the logarithm, i.e. a bound on the relative error.
struct EvalReport {
  PrecisionReal value;
  std::uint64_t terms_or_blocks_used = 0;
  EvalMethod method = EvalMethod::ExactPartial;
  std::optional<PrecisionReal> error_bound;
  std::optional<PrecisionReal> error_estimate;
  std::optional<Rational> exact;
};

inline constexpr std::uint64_t kDefaultFactorBudget = 10'000'000;

namespace detail {

inline int bit_length(const mpz_class& z) {
  return z == 0 ? 0 : static_cast<int>(mpz_sizeinbase(z.get_mpz_t(), 2));
}
inline int bit_length(std::uint64_t v) { return bit_length(mpz_class(static_cast<unsigned long>(v))); }

/// Exact product of many small factors: short runs are multiplied
/// directly, runs are then combined by a balanced tree.
class ExactProduct {
 public:
  void mul(const mpz_class& f) {
    current_ *= f;
    if (++count_ == kRun) flush();
  }
  void mul_ui(unsigned long f) {
    mpz_mul_ui(current_.get_mpz_t(), current_.get_mpz_t(), f);
    if (++count_ == kRun) flush();
  }
  mpz_class take() {
    flush();
    if (runs_.empty()) return 1;
    while (runs_.size() > 1) {
      std::vector<mpz_class> next;
      next.reserve((runs_.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < runs_.size(); i += 2) next.push_back(runs_[i] * runs_[i + 1]);
      if (runs_.size() % 2) next.push_back(std::move(runs_.back()));
      runs_ = std::move(next);
    }
    mpz_class r = std::move(runs_.front());
    runs_.clear();
    return r;
  }

 private:
  static constexpr std::size_t kRun = 64;
  void flush() {
    if (count_ == 0) return;
    runs_.push_back(std::move(current_));
    current_ = 1;
    count_ = 0;
  }
  mpz_class current_ = 1;
  std::size_t count_ = 0;
  std::vector<mpz_class> runs_;
};

// P*n + r as an exact integer.
inline void linear_value(mpz_class& out, const mpz_class& n, Residue period, Residue r) {
  out = n * static_cast<long>(period);
  out += static_cast<long>(r);
}

/// Sum of ln(factor) over stream positions [start, start + count), with
/// factors multiplied exactly in chunks and one logarithm per chunk.
inline BigFloat stream_log_sum(const PairStream& s, const mpz_class& start, const mpz_class& count, mpfr_prec_t w) {
  constexpr unsigned long kChunk = 256;
  BigFloat sum(w);
  if (count <= 0) return sum;
  const unsigned long m = s.pairs.size();
  mpz_class idx = start + static_cast<unsigned long>(s.offset);
  mpz_class n, i_mpz;
  mpz_fdiv_qr_ui(n.get_mpz_t(), i_mpz.get_mpz_t(), idx.get_mpz_t(), m);
  unsigned long i = i_mpz.get_ui();
  mpz_class remaining = count;
  mpz_class base;
  linear_value(base, n, s.period, 0);
  Residue max_residue = 0;
  for (const auto& [u, v] : s.pairs) max_residue = std::max({max_residue, u, v});
  const mpz_class max_value = base + static_cast<long>(s.period) * (count / m + 2) + static_cast<long>(max_residue);
  const bool small = max_value < (mpz_class(1) << 62);
  mpz_class num = 1, den = 1, a, b;
  unsigned long in_chunk = 0;
  auto flush = [&] {
    if (in_chunk == 0) return;
    sum += log(BigFloat(num, w) / BigFloat(den, w));
    num = 1;
    den = 1;
    in_chunk = 0;
  };
  long base_small = small ? base.get_si() : 0;
  while (remaining > 0) {
    const auto& [u, v] = s.pairs[i];
    if (small) {
      mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(base_small + u));
      mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(base_small + v));
    } else {
      a = base + static_cast<long>(u);
      b = base + static_cast<long>(v);
      num *= a;
      den *= b;
    }
    if (++in_chunk == kChunk) flush();
    --remaining;
    if (++i == m) {
      i = 0;
      if (small) base_small += s.period;
      else base += static_cast<long>(s.period);
    }
  }
  flush();
  return sum;
}

inline mpz_class chunk_count(const mpz_class& factors) { return factors / 256 + 1; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Wallis-type products

/// Exact partial product over the first N complete periods.
inline Rational wallis_partial(const WallisProduct& prod, std::uint64_t periods) {
  validate(prod);
  detail::ExactProduct num, den;
  mpz_class v;
  for (std::uint64_t n = 0; n < periods; ++n) {
    const mpz_class base = mpz_class(static_cast<unsigned long>(n)) * static_cast<long>(prod.period);
    for (Residue u : prod.num) num.mul(base + static_cast<long>(u));
    for (Residue d : prod.den) den.mul(base + static_cast<long>(d));
  }
  return Rational(num.take(), den.take());
}

/// Exact product of the first `count` printed fractions (half periods allowed).
inline Rational wallis_fraction_partial(const WallisProduct& prod, std::uint64_t count) {
  validate(prod);
  detail::ExactProduct num, den;
  const std::uint64_t k = prod.num.size();
  for (std::uint64_t t = 0; t < count; ++t) {
    const mpz_class base = mpz_class(static_cast<unsigned long>(t / k)) * static_cast<long>(prod.period);
    num.mul(base + static_cast<long>(prod.num[t % k]));
    den.mul(base + static_cast<long>(prod.den[t % k]));
  }
  return Rational(num.take(), den.take());
}

inline constexpr int kMaxRichardsonLevels = 4;

/// Richardson-extrapolated limit from the per-period partials P_N, P_{N/2},
/// ..., P_{N/2^levels}, under the model P_N = L (1 + c1/N + c2/N^2 + ...).
inline EvalReport wallis_limit_extrapolated(const WallisProduct& prod, std::uint64_t N, int levels, int p) {
  validate(prod);
  if (levels < 1 || levels > kMaxRichardsonLevels)
    throw Error(ErrorKind::InvalidArgument, "levels must be in [1, " + std::to_string(kMaxRichardsonLevels) + "]");
  if (N < (std::uint64_t{1} << levels))
    throw Error(ErrorKind::InsufficientTerms,
                "need N >= 2^levels (N=" + std::to_string(N) + ", levels=" + std::to_string(levels) + ")");
  const mpfr_prec_t w = p + kGuardBits + detail::bit_length(N) + 8;

  std::vector<std::uint64_t> checkpoints;
  for (int i = levels; i >= 0; --i) checkpoints.push_back(N >> i);

  std::vector<BigFloat> partials;
  BigFloat value(1, w);
  detail::ExactProduct num, den;
  std::size_t next = 0;
  auto flush = [&] { value *= BigFloat(num.take(), w) / BigFloat(den.take(), w); };
  for (std::uint64_t n = 0; n < N; ++n) {
    const mpz_class base = mpz_class(static_cast<unsigned long>(n)) * static_cast<long>(prod.period);
    for (Residue u : prod.num) num.mul(base + static_cast<long>(u));
    for (Residue d : prod.den) den.mul(base + static_cast<long>(d));
    if ((n + 1) % 64 == 0) flush();
    while (next < checkpoints.size() && checkpoints[next] == n + 1) {
      flush();
      partials.push_back(value);
      ++next;
    }
  }

  // table[i][j]: j-fold extrapolation ending at checkpoint i
  std::vector<std::vector<BigFloat>> table(partials.size());
  for (std::size_t i = 0; i < partials.size(); ++i) {
    table[i].push_back(partials[i]);
    for (std::size_t j = 1; j <= i; ++j) {
      const BigFloat diff = table[i][j - 1] - table[i - 1][j - 1];
      BigFloat scale(static_cast<long>((1L << j) - 1), w);
      table[i].push_back(table[i][j - 1] + diff / scale);
    }
  }
  const auto L = static_cast<std::size_t>(levels);
  EvalReport report;
  report.value = PrecisionReal(table[L][L], p);
  report.terms_or_blocks_used = N;
  report.method = EvalMethod::Extrapolated;
  report.error_estimate = PrecisionReal((table[L][L] - table[L][L - 1]).abs(), 64);
  return report;
}

// ---------------------------------------------------------------------------
// Catalan-type products

/// Tail bounds T_0..T_max_n (bounds on |ln(limit) - ln(partial_n)|).
///
/// T_n = sum_{k>n} exponent_k * size_k * m_k, where m_k bounds |ln f| over
/// block k by evaluating each pair at the period containing the block's
/// first index (|ln f| decreases along each pair). Unbounded schedules are
/// summed 200 blocks beyond max_n and closed with a geometric remainder;
/// NoConvergence if the terms stop shrinking.
inline std::vector<BigFloat> catalan_tail_bounds(const CatalanProduct& prod, std::size_t max_n) {
  validate(prod);
  constexpr mpfr_prec_t w = 96;
  const auto finite = block_count(prod.schedule);
  const std::size_t last = finite ? *finite : max_n + 200;

  BigFloat log_const(w);
  if (const auto* c = std::get_if<ConstStream>(&prod.stream)) log_const = log_rational(c->value, w).abs();

  std::vector<BigFloat> terms(last + 1, BigFloat(w));
  mpz_class start = 0;
  for (std::size_t k = 1; k <= last; ++k) {
    const mpz_class size = block_size(prod.schedule, k);
    BigFloat m(w);
    if (const auto* s = std::get_if<PairStream>(&prod.stream)) {
      mpz_class n0 = (start + static_cast<unsigned long>(s->offset)) / static_cast<unsigned long>(s->pairs.size());
      const BigFloat base(mpz_class(n0 * static_cast<long>(s->period)), w);
      for (const auto& [u, v] : s->pairs) {
        // |ln((B+u)/(B+v))| = |log1p((u-v)/(B+v))|
        BigFloat d = BigFloat(static_cast<long>(u - v), w) / (base + BigFloat(static_cast<long>(v), w));
        mpfr_log1p(d.get(), d.get(), MPFR_RNDU);
        if (d.abs() > m) m = d.abs();
      }
    } else {
      m = log_const;
    }
    terms[k] = mul_rational(BigFloat(size, w) * m, block_exponent(prod.schedule, k));
    start += size;
  }

  BigFloat remainder(w);
  if (!finite && last >= 2) {
    const BigFloat& a = terms[last - 1];
    const BigFloat& b = terms[last];
    if (!b.is_zero()) {
      const BigFloat rho = b / a;
      if (a.is_zero() || rho >= BigFloat(1, w))
        throw Error(ErrorKind::NoConvergence, "tail bound is not decreasing; schedule does not converge");
      remainder = b * rho / (BigFloat(1, w) - rho);
    }
  }

  std::vector<BigFloat> tails(max_n + 1, BigFloat(w));
  BigFloat acc = remainder;
  for (std::size_t k = last; k >= 1; --k) {
    if (k - 1 <= max_n) tails[k - 1] = acc + terms[k];
    acc += terms[k];
  }
  for (std::size_t n = last; n <= max_n; ++n) tails[n] = BigFloat(w);
  return tails;
}

/// Partial product through n_blocks blocks, computed in log space:
/// exp(sum prefix e ln f + sum_k exponent_k * sum_{f in block k} ln f).
inline EvalReport catalan_block_partial(const CatalanProduct& prod, std::size_t n_blocks, int p,
                                        std::uint64_t factor_budget = 5 * kDefaultFactorBudget) {
  validate(prod);
  if (auto count = block_count(prod.schedule)) n_blocks = std::min(n_blocks, *count);
  const mpz_class total = cumulative_size(prod.schedule, n_blocks);
  if (std::holds_alternative<PairStream>(prod.stream) && total > static_cast<unsigned long>(factor_budget))
    throw Error(ErrorKind::BudgetExceeded,
                total.get_str() + " factors exceed the budget of " + std::to_string(factor_budget));
  const mpfr_prec_t w = p + kGuardBits + 8 + detail::bit_length(detail::chunk_count(total) + n_blocks);

  BigFloat log_sum(w);
  for (const auto& f : prod.prefix) log_sum += mul_rational(log_rational(f.factor, w), f.exponent);

  mpz_class start = 0;
  for (std::size_t k = 1; k <= n_blocks; ++k) {
    const mpz_class size = block_size(prod.schedule, k);
    BigFloat block(w);
    if (const auto* s = std::get_if<PairStream>(&prod.stream)) {
      block = detail::stream_log_sum(*s, start, size, w);
    } else {
      block = BigFloat(size, w) * log_rational(std::get<ConstStream>(prod.stream).value, w);
    }
    log_sum += mul_rational(block, block_exponent(prod.schedule, k));
    start += size;
  }

  EvalReport report;
  report.value = PrecisionReal(exp(log_sum), p);
  report.terms_or_blocks_used = n_blocks;
  report.method = EvalMethod::BlockSum;
  try {
    const auto tails = catalan_tail_bounds(prod, n_blocks);
    report.error_bound = PrecisionReal(tails[n_blocks], 64);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoConvergence) throw;
  }
  return report;
}

/// Evaluates blocks until the tail bound drops below tol.
inline EvalReport catalan_limit(const CatalanProduct& prod, const Rational& tol, int p,
                                std::uint64_t factor_budget = 5 * kDefaultFactorBudget) {
  validate(prod);
  if (tol.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const BigFloat t(tol, 96);
  std::size_t horizon = 64;
  for (;;) {
    const auto tails = catalan_tail_bounds(prod, horizon);
    for (std::size_t n = 0; n <= horizon; ++n) {
      if (tails[n] < t) {
        const mpz_class need = cumulative_size(prod.schedule, n);
        if (std::holds_alternative<PairStream>(prod.stream) && need > static_cast<unsigned long>(factor_budget))
          throw Error(ErrorKind::BudgetExceeded, "reaching tolerance " + tol.to_string() + " needs " +
                                                     need.get_str() + " factors");
        return catalan_block_partial(prod, n, p, factor_budget);
      }
      if (n > 0 && !(tails[n] < tails[n - 1]) && !tails[n].is_zero())
        throw Error(ErrorKind::NoConvergence, "tail bound stopped decreasing at block " + std::to_string(n));
    }
    if (horizon >= 1u << 16) throw Error(ErrorKind::NoConvergence, "tail bound never reached the tolerance");
    horizon *= 4;
  }
}

namespace detail {

// Cumulative log of the pair stream before absolute index T, without the
// T-independent constants: sum_i [lnG(n + u_i/P) - lnG(n + v_i/P)] plus
// the partial period, n = T / |pairs|. Differences of this function are
// exact block log sums (the P^n factors cancel pairwise).
inline BigFloat stream_log_prefix(const PairStream& s, const mpz_class& T, int p) {
  const unsigned long m = s.pairs.size();
  mpz_class n, rem;
  mpz_fdiv_qr_ui(n.get_mpz_t(), rem.get_mpz_t(), T.get_mpz_t(), m);
  const int w = p + 2 * bit_length(n + 2) + 16;
  BigFloat sum(w);
  for (const auto& [u, v] : s.pairs) {
    sum += lngamma(Rational(n) + Rational(static_cast<long>(u), static_cast<long>(s.period)), w).value();
    sum -= lngamma(Rational(n) + Rational(static_cast<long>(v), static_cast<long>(s.period)), w).value();
  }
  mpz_class base = n * static_cast<long>(s.period);
  for (unsigned long i = 0; i < rem.get_ui(); ++i) {
    sum += log_rational(Rational(base + static_cast<long>(s.pairs[i].first), base + static_cast<long>(s.pairs[i].second)), w);
  }
  return sum;
}

}  // namespace detail

/// High-precision limit of a Catalan-type product: each block's log sum is
/// a difference of lnGamma values, so blocks of any size cost O(1) and the
/// sum runs until the tail bound is below 2^(-p-8).
inline EvalReport catalan_limit_gamma(const CatalanProduct& prod, int p) {
  validate(prod);
  const mpfr_prec_t w = p + kGuardBits + 16;
  const BigFloat target = BigFloat::pow2(-p - 8, 96);

  std::size_t horizon = 64;
  std::vector<BigFloat> tails;
  std::size_t n_blocks = 0;
  for (;;) {
    tails = catalan_tail_bounds(prod, horizon);
    auto it = std::find_if(tails.begin(), tails.end(), [&](const BigFloat& t) { return t < target; });
    if (it != tails.end()) {
      n_blocks = static_cast<std::size_t>(it - tails.begin());
      break;
    }
    if (horizon >= 1u << 14) throw Error(ErrorKind::NoConvergence, "tail bound never reached 2^-(p+8)");
    horizon *= 2;
  }

  BigFloat log_sum(w);
  for (const auto& f : prod.prefix) log_sum += mul_rational(log_rational(f.factor, w), f.exponent);

  if (const auto* s = std::get_if<PairStream>(&prod.stream)) {
    const mpz_class off(static_cast<unsigned long>(s->offset));
    mpz_class start = 0;
    BigFloat prev = detail::stream_log_prefix(*s, off, static_cast<int>(w));
    for (std::size_t k = 1; k <= n_blocks; ++k) {
      start += block_size(prod.schedule, k);
      BigFloat cur = detail::stream_log_prefix(*s, off + start, static_cast<int>(w));
      log_sum += mul_rational((cur - prev).round_to(w), block_exponent(prod.schedule, k));
      prev = std::move(cur);
    }
  } else {
    const BigFloat lc = log_rational(std::get<ConstStream>(prod.stream).value, w);
    for (std::size_t k = 1; k <= n_blocks; ++k)
      log_sum += mul_rational(BigFloat(block_size(prod.schedule, k), w) * lc, block_exponent(prod.schedule, k));
  }

  EvalReport report;
  report.value = PrecisionReal(exp(log_sum), p);
  report.terms_or_blocks_used = n_blocks;
  report.method = EvalMethod::Gamma;
  report.error_bound = PrecisionReal(tails[n_blocks] + report.value.slack().round_to(96), 64);
  return report;
}

// ---------------------------------------------------------------------------
// factorial closed forms

/// E_n = 2n 3^(n-1) - (3^n - 1)/2.
inline mpz_class exponent_E(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "exponent_E needs n >= 1");
  mpz_class p3;
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, static_cast<unsigned long>(n - 1));
  return 2 * n * p3 - (3 * p3 - 1) / 2;
}

inline constexpr long kExactFactorialLimit = 256;

/// ln N! : exact below 256, Stirling series above.
inline PrecisionReal stirling_lnfactorial(const mpz_class& N, int p) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "stirling_lnfactorial needs N >= 1");
  if (N < kExactFactorialLimit) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), N.get_ui());
    return PrecisionReal(log(BigFloat(f, p + kGuardBits)), p);
  }
  return lngamma(Rational(mpz_class(N + 1)), p);
}

inline PrecisionReal stirling_lnfactorial(long N, int p) { return stirling_lnfactorial(mpz_class(N), p); }

/// n-th partial of (2/3)^(1/2) (6*6/(5*7))^(1/4) ... via
/// 2^((n+1)/2) ((2^n)!^2 / ((2^(n-1))! (2^(n+1))!))^(1/2^n).
inline PrecisionReal closed_partial_sqrt_e(long n, int p) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "closed_partial_sqrt_e needs n >= 1");
  const int w = p + kGuardBits + static_cast<int>(n) + 16;
  mpz_class N;
  mpz_ui_pow_ui(N.get_mpz_t(), 2, static_cast<unsigned long>(n));
  const BigFloat f_n = stirling_lnfactorial(N, w).value();
  const BigFloat f_lo = stirling_lnfactorial(mpz_class(N / 2), w).value();
  const BigFloat f_hi = stirling_lnfactorial(mpz_class(N * 2), w).value();
  BigFloat inner = f_n * BigFloat(2, w) - f_lo - f_hi;
  mpfr_div_2ui(inner.get(), inner.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  const BigFloat ln2 = log(BigFloat(2, w));
  const BigFloat total = mul_rational(ln2, Rational(n + 1, 2)) + inner;
  return PrecisionReal(exp(total), p);
}

/// n-th partial of (3/2)^(1/3) (3/4 6/5 6/7 9/8)^(1/9) ... via
/// 3^(1/3) (3^E_n (3^(n-1))! / (3^n)!)^(1/3^n).
inline PrecisionReal closed_partial_base3(long n, int p) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "closed_partial_base3 needs n >= 1");
  const int w = p + kGuardBits + 2 * static_cast<int>(n) + 16;
  mpz_class N;
  mpz_ui_pow_ui(N.get_mpz_t(), 3, static_cast<unsigned long>(n));
  const BigFloat ln3 = log(BigFloat(3, w));
  BigFloat inner = BigFloat(exponent_E(n), w) * ln3 + stirling_lnfactorial(mpz_class(N / 3), w).value() -
                   stirling_lnfactorial(N, w).value();
  inner /= BigFloat(N, w);
  const BigFloat total = mul_rational(ln3, Rational(1, 3)) + inner;
  return PrecisionReal(exp(total), p);
}

}  // namespace prodlab

#endif  // PRODLAB_EVALUATOR_HPP
