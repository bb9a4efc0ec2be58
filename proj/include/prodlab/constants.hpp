#ifndef PRODLAB_CONSTANTS_HPP
#define PRODLAB_CONSTANTS_HPP

#include <map>
#include <mutex>
#include <shared_mutex>

#include "big_float.hpp"

namespace prodlab {

namespace detail {

/// Per-precision cache: concurrent readers, serialized fill.
template <typename Compute>
class ConstantCache {
 public:
  explicit ConstantCache(Compute compute) : compute_(compute) {}

  BigFloat get(mpfr_prec_t prec) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(prec); it != values_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = values_.try_emplace(prec, prec);
    if (inserted) it->second = compute_(prec);
    return it->second;
  }

 private:
  Compute compute_;
  std::shared_mutex mutex_;
  std::map<mpfr_prec_t, BigFloat> values_;
};

inline BigFloat compute_pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline BigFloat compute_e(mpfr_prec_t prec) {
  BigFloat r(1, prec);
  mpfr_exp(r.get(), r.get(), MPFR_RNDN);
  return r;
}

}  // namespace detail

/// pi correctly rounded at `prec` bits; cached per precision.
inline BigFloat pi_constant(mpfr_prec_t prec) {
  static detail::ConstantCache cache(&detail::compute_pi);
  return cache.get(prec);
}

/// e correctly rounded at `prec` bits; cached per precision.
inline BigFloat e_constant(mpfr_prec_t prec) {
  static detail::ConstantCache cache(&detail::compute_e);
  return cache.get(prec);
}

}  // namespace prodlab

#endif  // PRODLAB_CONSTANTS_HPP
