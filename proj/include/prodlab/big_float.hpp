#ifndef PRODLAB_BIG_FLOAT_HPP
#define PRODLAB_BIG_FLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "error.hpp"
#include "rational.hpp"

namespace prodlab {

/// Extra working bits every numeric routine carries before rounding its
/// result to the requested precision.
inline constexpr int kGuardBits = 32;

/// RAII owner of an MPFR value. Binary operators produce a result at the
/// larger of the operand precisions; all rounding is to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long value, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigFloat(const Rational& q, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const mpz_class& z, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& other, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  static BigFloat from_double(double d, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigFloat from_string(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw Error(ErrorKind::InvalidArgument, "not a decimal number: '" + s + "'");
    return r;
  }
  /// 2^e at the given precision.
  static BigFloat pow2(long e, mpfr_prec_t prec) {
    BigFloat r(1, prec);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  /// Copy rounded to a new precision.
  BigFloat round_to(mpfr_prec_t prec) const { return BigFloat(*this, prec); }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Binary exponent e with 2^(e-1) <= |x| < 2^e; 0 for zero.
  long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }

  /// Significant-digit decimal rendering: fixed notation for moderate
  /// exponents, scientific otherwise; trailing fractional zeros dropped.
  std::string to_decimal(int digits) const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    if (is_zero()) return "0";
    digits = std::max(digits, 1);
    mpfr_exp_t e10 = 0;
    char* raw = mpfr_get_str(nullptr, &e10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string sign_str;
    if (!mant.empty() && mant.front() == '-') {
      sign_str = "-";
      mant.erase(0, 1);
    }
    // value = 0.mant * 10^e10
    std::string out;
    if (e10 > 0 && e10 <= 30) {
      const auto ip = static_cast<size_t>(e10);
      if (mant.size() <= ip) {
        out = mant + std::string(ip - mant.size(), '0');
      } else {
        out = mant.substr(0, ip) + "." + mant.substr(ip);
      }
    } else if (e10 <= 0 && e10 > -6) {
      out = "0." + std::string(static_cast<size_t>(-e10), '0') + mant;
    } else {
      out = mant.substr(0, 1) + "." + mant.substr(1);
      out = strip_zeros(out) + "e" + std::to_string(static_cast<long>(e10) - 1);
      return sign_str + out;
    }
    return sign_str + strip_zeros(out);
  }

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

#define PRODLAB_BIGFLOAT_BINOP(op, fn)                                       \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {        \
    BigFloat r(std::max(a.prec(), b.prec()));                                \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                         \
    return r;                                                                \
  }
  PRODLAB_BIGFLOAT_BINOP(+, mpfr_add)
  PRODLAB_BIGFLOAT_BINOP(-, mpfr_sub)
  PRODLAB_BIGFLOAT_BINOP(*, mpfr_mul)
  PRODLAB_BIGFLOAT_BINOP(/, mpfr_div)
#undef PRODLAB_BIGFLOAT_BINOP

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  static std::string strip_zeros(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  }

  mpfr_t v_;
};

inline BigFloat log(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat exp(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.prec());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}
inline BigFloat abs(const BigFloat& x) { return x.abs(); }

/// ln(q) for positive rational q, computed as ln(num) - ln(den) so no
/// rounding happens before the logarithm.
inline BigFloat log_rational(const Rational& q, mpfr_prec_t prec) {
  if (q.sign() <= 0) throw Error(ErrorKind::NonpositiveArgument, "log of nonpositive rational " + q.to_string());
  const mpfr_prec_t w = prec + 16;
  BigFloat num(q.numerator(), w);
  BigFloat den(q.denominator(), w);
  return (log(num) - log(den)).round_to(prec);
}

/// Multiplies x by a rational exactly-representable scale num/den.
inline BigFloat mul_rational(const BigFloat& x, const Rational& q) {
  BigFloat r(x.prec());
  mpfr_mul_z(r.get(), x.get(), q.numerator().get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(r.get(), r.get(), q.denominator().get_mpz_t(), MPFR_RNDN);
  return r;
}

/// Arbitrary-precision real carrying its accuracy contract:
/// |stored - true| <= 2^(-p+2) * max(1, |true|).
class PrecisionReal {
 public:
  PrecisionReal() : value_(64), precision_bits_(64) {}
  PrecisionReal(const BigFloat& value, int precision_bits)
      : value_(value.round_to(precision_bits)), precision_bits_(precision_bits) {}

  const BigFloat& value() const { return value_; }
  int precision_bits() const { return precision_bits_; }

  /// Absolute error allowed by the contract, evaluated at the stored value.
  BigFloat slack() const {
    const mpfr_prec_t w = precision_bits_ + 8;
    BigFloat scale = value_.abs().round_to(w);
    if (scale < BigFloat(1, w)) scale = BigFloat(1, w);
    return scale * BigFloat::pow2(-precision_bits_ + 2, w);
  }

  /// Number of decimal digits that never exceed the contract.
  int safe_digits() const {
    return std::max(1, static_cast<int>(std::floor(precision_bits_ * 0.30102999566398120)) - 2);
  }
  std::string decimal() const { return value_.to_decimal(safe_digits()); }
  std::string decimal(int digits) const { return value_.to_decimal(digits); }
  double to_double() const { return value_.to_double(); }

 private:
  BigFloat value_;
  int precision_bits_;
};

enum class Comparison { Equal, Distinct, Inconclusive };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "Equal";
    case Comparison::Distinct: return "Distinct";
    case Comparison::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Compares two contract-carrying reals against a tolerance, widening the
/// decision band by both operands' accuracy slack.
inline Comparison prec_compare(const PrecisionReal& a, const PrecisionReal& b, const BigFloat& tol) {
  const mpfr_prec_t w = std::max({a.precision_bits(), b.precision_bits(), static_cast<int>(tol.prec())}) + kGuardBits;
  const BigFloat diff = (a.value().round_to(w) - b.value().round_to(w)).abs();
  const BigFloat slack = a.slack().round_to(w) + b.slack().round_to(w);
  const BigFloat t = tol.round_to(w);
  if (diff <= t - slack) return Comparison::Equal;
  if (diff > t + slack) return Comparison::Distinct;
  return Comparison::Inconclusive;
}

inline Comparison prec_compare(const PrecisionReal& a, const PrecisionReal& b, const Rational& tol) {
  const int w = std::max(a.precision_bits(), b.precision_bits()) + kGuardBits;
  return prec_compare(a, b, BigFloat(tol, w));
}

}  // namespace prodlab

#endif  // PRODLAB_BIG_FLOAT_HPP
