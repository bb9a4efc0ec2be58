#ifndef PRODLAB_GAMMA_HPP
#define PRODLAB_GAMMA_HPP

#include <algorithm>
#include <cmath>
#include <optional>

#include "bernoulli.hpp"
#include "big_float.hpp"
#include "const_expr.hpp"
#include "constants.hpp"
#include "rational.hpp"
#include "sin_pi.hpp"

namespace prodlab {

/// Parameters of the Stirling-series evaluation of ln Gamma.
///
/// Arguments below `shift_threshold` are lifted with Gamma(x) =
/// Gamma(x+m) / (x (x+1) ... (x+m-1)). With the threshold at half the
/// working precision, the series' smallest term is far below 2^(-w), so
/// `series_terms` (the worst case, at the threshold) stays small.
struct StirlingConfig {
  long shift_threshold;
  long series_terms;
};

namespace detail {

// |B_2k| / (2k (2k-1) z^(2k-1)) in double, log2 form: used only to size
// the series, never for the value itself.
inline double stirling_term_log2(long k, double z) {
  BigFloat b(bernoulli(2 * k).abs(), 64);
  mpfr_log2(b.get(), b.get(), MPFR_RNDN);
  return b.to_double() - std::log2(2.0 * k * (2.0 * k - 1)) - (2.0 * k - 1) * std::log2(z);
}

}  // namespace detail

/// Configuration honoring a working precision of `w` bits.
inline StirlingConfig stirling_config(long w) {
  StirlingConfig cfg{std::max<long>(8, (w + 1) / 2), 0};
  const double z = static_cast<double>(cfg.shift_threshold);
  const double target = -static_cast<double>(w) - 8;
  long k = 1;
  while (detail::stirling_term_log2(k, z) >= target) {
    ++k;
    if (k > 4 * w + 64) throw Error(ErrorKind::NoConvergence, "Stirling series sizing failed");
  }
  // the first omitted term (k) is below target; keep terms 1..k-1
  cfg.series_terms = k - 1;
  return cfg;
}

/// ln Gamma(x) for rational x > 0 under the PrecisionReal contract.
inline PrecisionReal lngamma(const Rational& x, int p) {
  if (x.sign() <= 0) throw Error(ErrorKind::NonpositiveArgument, "lngamma needs x > 0, got " + x.to_string());
  const long w = p + kGuardBits;
  const StirlingConfig cfg = stirling_config(w);

  // Lift: z = x + m >= threshold, with the exact rational product
  // x (x+1) ... (x+m-1) divided out in a single logarithm.
  Rational z = x;
  Rational lift(1);
  while (z < Rational(cfg.shift_threshold)) {
    lift *= z;
    z += Rational(1);
  }

  const mpfr_prec_t wz = w + 8;
  const BigFloat zf(z, wz);
  const BigFloat lnz = log_rational(z, wz);
  BigFloat half(Rational(1, 2), wz);
  BigFloat two_pi = pi_constant(wz);
  mpfr_mul_2ui(two_pi.get(), two_pi.get(), 1, MPFR_RNDN);

  // (z - 1/2) ln z - z + ln(2 pi)/2
  BigFloat sum = (zf - half) * lnz - zf + log(two_pi) * half;

  // sum_k B_2k / (2k (2k-1) z^(2k-1)); stop at the first term below the
  // error target, which bounds the remainder on the positive axis.
  const BigFloat eps = BigFloat::pow2(-w - 8, wz);
  const BigFloat inv_z2 = BigFloat(1, wz) / (zf * zf);
  BigFloat zpow = BigFloat(1, wz) / zf;  // z^-(2k-1)
  for (long k = 1; k <= cfg.series_terms + 1; ++k) {
    const Rational coeff = bernoulli(2 * k) / Rational(2 * k * (2 * k - 1));
    const BigFloat term = mul_rational(zpow, coeff);
    if (term.abs() < eps) break;
    sum += term;
    zpow *= inv_z2;
  }

  if (lift != Rational(1)) sum -= log_rational(lift, wz);
  return PrecisionReal(sum, p);
}

/// Gamma(x) for rational x > 0.
inline PrecisionReal gamma(const Rational& x, int p) {
  const int w = p + kGuardBits;
  return PrecisionReal(exp(lngamma(x, w).value()), p);
}

/// Exact radical for sin(pi x), available for x in
/// {1/2, 1/3, 1/4, 1/6, 1/8, 3/8} (after the same reduction sin_pi uses).
inline std::optional<ConstExpr> sin_pi_radical(const Rational& x) {
  mpz_class floor_half;
  const Rational half_x = x / Rational(2);
  mpz_fdiv_q(floor_half.get_mpz_t(), half_x.numerator().get_mpz_t(), half_x.denominator().get_mpz_t());
  Rational r = x - Rational(floor_half) * Rational(2);
  bool negative = false;
  if (r >= Rational(1)) {
    negative = true;
    r -= Rational(1);
  }
  if (r > Rational(1, 2)) r = Rational(1) - r;

  using E = ConstExpr;
  const E two = E::integer(2);
  std::optional<E> v;
  if (r == Rational(1, 2)) v = E::integer(1);
  else if (r == Rational(1, 3)) v = sqrt(E::integer(3)) / two;
  else if (r == Rational(1, 4)) v = sqrt(two) / two;
  else if (r == Rational(1, 6)) v = E::rational(Rational(1, 2));
  else if (r == Rational(1, 8)) v = sqrt(two - sqrt(two)) / two;
  else if (r == Rational(3, 8)) v = sqrt(two + sqrt(two)) / two;
  if (v && negative) v = E::integer(0) - *v;
  return v;
}

}  // namespace prodlab

#endif  // PRODLAB_GAMMA_HPP
