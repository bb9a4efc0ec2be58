#ifndef PRODLAB_BERNOULLI_HPP
#define PRODLAB_BERNOULLI_HPP

#include <mutex>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace prodlab {

namespace detail {

/// Tangent numbers T_1..T_n (1, 2, 16, 272, ...) by the integer-only
/// in-place recurrence of Brent and Harvey.
inline std::vector<mpz_class> tangent_numbers(std::size_t n) {
  std::vector<mpz_class> t(n + 1);
  if (n == 0) return t;
  t[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);
    }
  }
  return t;
}

class BernoulliCache {
 public:
  // B_{2k} for k >= 1.
  Rational even(std::size_t k) {
    std::lock_guard lock(mutex_);
    if (k >= values_.size()) grow(std::max(k, 2 * values_.size()));
    return values_[k];
  }

 private:
  void grow(std::size_t kmax) {
    const auto t = tangent_numbers(kmax);
    values_.assign(kmax + 1, Rational());
    for (std::size_t k = 1; k <= kmax; ++k) {
      // B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
      mpz_class four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
      Rational b(mpz_class(t[k] * static_cast<unsigned long>(2 * k)), mpz_class(four_k * (four_k - 1)));
      values_[k] = (k % 2 == 1) ? b : -b;
    }
  }

  std::mutex mutex_;
  std::vector<Rational> values_{Rational()};
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace detail

/// Exact Bernoulli number B_n for even n >= 2.
inline Rational bernoulli(long n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "bernoulli(n) needs even n >= 2");
  return detail::bernoulli_cache().even(static_cast<std::size_t>(n / 2));
}

}  // namespace prodlab

#endif  // PRODLAB_BERNOULLI_HPP
