#ifndef PRODLAB_SIN_PI_HPP
#define PRODLAB_SIN_PI_HPP

#include "big_float.hpp"
#include "constants.hpp"
#include "rational.hpp"

namespace prodlab {

namespace detail {

// Taylor series of sin(t) (odd = true) or cos(t) at t's precision.
// Used only for |t| <= pi/4, where terms shrink at least geometrically.
inline BigFloat trig_series(const BigFloat& t, bool odd) {
  const mpfr_prec_t w = t.prec();
  const BigFloat t2 = t * t;
  BigFloat term = odd ? t : BigFloat(1, w);
  BigFloat sum = term;
  const BigFloat eps = BigFloat::pow2(-static_cast<long>(w) - 4, w);
  for (long k = 1;; ++k) {
    const long a = odd ? 2 * k : 2 * k - 1;
    const long b = odd ? 2 * k + 1 : 2 * k;
    term = -(term * t2);
    mpfr_div_si(term.get(), term.get(), a * b, MPFR_RNDN);
    sum += term;
    if (term.abs() < eps) break;
  }
  return sum;
}

}  // namespace detail

/// sin(pi * x) for rational x, to the PrecisionReal contract.
///
/// x is reduced exactly: mod 2, then by symmetry into [0, 1/2], then to
/// [0, 1/4] via sin(pi y) = cos(pi (1/2 - y)). Only the final series sees
/// floating point, with argument at most pi/4.
inline PrecisionReal sin_pi(const Rational& x, int p) {
  const mpfr_prec_t w = p + kGuardBits;
  // r = x mod 2 in [0, 2)
  mpz_class floor_half;
  const Rational half_x = x / Rational(2);
  mpz_fdiv_q(floor_half.get_mpz_t(), half_x.numerator().get_mpz_t(), half_x.denominator().get_mpz_t());
  Rational r = x - Rational(floor_half) * Rational(2);
  int sign = 1;
  if (r >= Rational(1)) {
    sign = -1;
    r -= Rational(1);
  }
  if (r > Rational(1, 2)) r = Rational(1) - r;
  if (r.is_zero()) return PrecisionReal(BigFloat(0, w), p);

  bool use_cos = false;
  if (r > Rational(1, 4)) {
    r = Rational(1, 2) - r;
    use_cos = true;
  }
  const BigFloat t = mul_rational(pi_constant(w), r);
  BigFloat v = detail::trig_series(t, !use_cos);
  if (sign < 0) v = -v;
  return PrecisionReal(v, p);
}

}  // namespace prodlab

#endif  // PRODLAB_SIN_PI_HPP
