#ifndef PRODLAB_CLOSED_FORM_HPP
#define PRODLAB_CLOSED_FORM_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "const_expr.hpp"
#include "gamma.hpp"
#include "product.hpp"

namespace prodlab {

/// Value of a balanced Wallis-type product from the gamma-ratio identity
///   prod_{n>=0} prod_j (n + a_j)/(n + b_j) = prod_j Gamma(b_j) / prod_j Gamma(a_j)
/// with a_j = u_j / P and b_j = v_j / P. Never touches partial products.
inline PrecisionReal eq21_eval(const WallisProduct& prod, int p) {
  validate(prod);
  const Residue max_residue = std::max(*std::max_element(prod.num.begin(), prod.num.end()),
                                       *std::max_element(prod.den.begin(), prod.den.end()));
  // lnGamma terms grow like x ln x; carry enough bits that their
  // cancellation leaves p + guard bits in the sum.
  const int magnitude_bits = 2 * static_cast<int>(mpz_sizeinbase(mpz_class(max_residue / prod.period + 2).get_mpz_t(), 2));
  const int w = p + kGuardBits + 8 + magnitude_bits +
                static_cast<int>(mpz_sizeinbase(mpz_class(static_cast<long>(prod.num.size())).get_mpz_t(), 2));
  BigFloat sum(w);
  for (Residue v : prod.den) sum += lngamma(Rational(v, prod.period), w).value();
  for (Residue u : prod.num) sum -= lngamma(Rational(u, prod.period), w).value();
  return PrecisionReal(exp(sum), p);
}

/// (pi/K) / sin(pi/K) as a closed form; radical forms for K in {2,3,4,6}.
inline ConstExpr eq13_closed_form(long K) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "eq13_closed_form needs K >= 2");
  using E = ConstExpr;
  switch (K) {
    case 2: return E::pi() / E::integer(2);
    case 3: return E::integer(2) * E::pi() / (E::integer(3) * sqrt(E::integer(3)));
    case 4: return E::pi() / (E::integer(2) * sqrt(E::integer(2)));
    case 6: return E::pi() / E::integer(3);
    default: return E::pi() / E::integer(K) / E::sin_pi(Rational(1, K));
  }
}

namespace detail {

// Reduces Gamma arguments into (0, 1] with the factorial property,
// accumulating the rational multipliers into `scale` (as numerator when
// `in_numerator`, else as denominator).
inline void lower_gamma_arguments(std::vector<Rational>& args, Rational& scale, bool in_numerator) {
  for (auto& x : args) {
    while (x > Rational(1)) {
      x -= Rational(1);
      if (in_numerator) scale *= x;
      else scale /= x;
    }
  }
  std::erase(args, Rational(1));
}

// Removes x, 1-x pairs. Returns the sine arguments of the removed pairs;
// leaves unpaired arguments in `args`.
inline std::vector<Rational> pair_reflections(std::vector<Rational>& args) {
  std::sort(args.begin(), args.end());
  std::vector<Rational> sines;
  std::vector<Rational> rest;
  std::vector<bool> used(args.size(), false);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (used[i]) continue;
    const Rational partner = Rational(1) - args[i];
    bool found = false;
    for (std::size_t j = i + 1; j < args.size(); ++j) {
      if (!used[j] && args[j] == partner) {
        used[i] = used[j] = true;
        sines.push_back(args[i]);
        found = true;
        break;
      }
    }
    if (!found) rest.push_back(args[i]);
  }
  args = std::move(rest);
  return sines;
}

inline ConstExpr sine_expr(const Rational& x) {
  if (auto r = sin_pi_radical(x)) return *r;
  return ConstExpr::sin_pi(x);
}

}  // namespace detail

/// Closed form obtained by pairing Gamma values through the reflection
/// formula Gamma(x) Gamma(1-x) = pi / sin(pi x). Returns nullopt if some
/// Gamma value does not pair off.
inline std::optional<ConstExpr> reflection_closed_form(const WallisProduct& prod) {
  validate(prod);
  std::vector<Rational> top;     // Gamma(b_j)
  std::vector<Rational> bottom;  // Gamma(a_j)
  for (Residue v : prod.den) top.emplace_back(Rational(v, prod.period));
  for (Residue u : prod.num) bottom.emplace_back(Rational(u, prod.period));
  Rational scale(1);
  detail::lower_gamma_arguments(top, scale, true);
  detail::lower_gamma_arguments(bottom, scale, false);

  // cancel common Gamma values
  std::sort(top.begin(), top.end());
  std::sort(bottom.begin(), bottom.end());
  std::vector<Rational> t2, b2;
  std::set_difference(top.begin(), top.end(), bottom.begin(), bottom.end(), std::back_inserter(t2));
  std::set_difference(bottom.begin(), bottom.end(), top.begin(), top.end(), std::back_inserter(b2));

  const auto top_sines = detail::pair_reflections(t2);
  const auto bottom_sines = detail::pair_reflections(b2);
  if (!t2.empty() || !b2.empty()) return std::nullopt;

  using E = ConstExpr;
  // top pair -> pi / sin, bottom pair -> sin / pi
  const long pi_power = static_cast<long>(top_sines.size()) - static_cast<long>(bottom_sines.size());
  std::optional<E> num;
  std::optional<E> den;
  auto mul = [](std::optional<E>& acc, const E& f) { acc = acc ? *acc * f : f; };
  if (scale.numerator() != 1) mul(num, E::integer(scale.numerator()));
  if (pi_power > 0) mul(num, pi_power == 1 ? E::pi() : pow(E::pi(), Rational(pi_power)));
  for (const auto& x : bottom_sines) mul(num, detail::sine_expr(x));
  if (scale.denominator() != 1) mul(den, E::integer(scale.denominator()));
  if (pi_power < 0) mul(den, pi_power == -1 ? E::pi() : pow(E::pi(), Rational(-pi_power)));
  for (const auto& x : top_sines) mul(den, detail::sine_expr(x));
  const E n = num.value_or(E::integer(1));
  return den ? n / *den : n;
}

/// Best available closed form: the catalog's stated value, the general-K
/// formula, or the reflection pairing.
inline std::optional<ConstExpr> wallis_closed_form(const WallisProduct& prod) {
  for (int id : builtin_wallis_ids()) {
    if (std::get<WallisProduct>(builtin(id)) == prod) return builtin_target(id);
  }
  if (prod.num.size() == 2 && prod.period >= 2 && prod == wallis_general(prod.period))
    return eq13_closed_form(prod.period);
  return reflection_closed_form(prod);
}

}  // namespace prodlab

#endif  // PRODLAB_CLOSED_FORM_HPP
