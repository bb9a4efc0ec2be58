#ifndef PRODLAB_PRODUCT_HPP
#define PRODLAB_PRODUCT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "const_expr.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace prodlab {

using Residue = std::int64_t;

/// Periodic linear-factor product  prod_{n>=0} prod_j (P n + u_j) / (P n + v_j).
///
/// Factors are listed in printed order: factor t is (P n + u_j)/(P n + v_j)
/// with n = t / k, j = t % k. Residues may exceed the period.
struct WallisProduct {
  Residue period = 1;
  std::vector<Residue> num;
  std::vector<Residue> den;

  friend bool operator==(const WallisProduct&, const WallisProduct&) = default;
};

/// Factor stream of a Catalan-type product: a periodic pair pattern or a
/// constant.
struct PairStream {
  Residue period = 1;
  std::vector<std::pair<Residue, Residue>> pairs;
  std::uint64_t offset = 0;

  friend bool operator==(const PairStream&, const PairStream&) = default;
};

struct ConstStream {
  Rational value;

  friend bool operator==(const ConstStream&, const ConstStream&) = default;
};

using FactorStream = std::variant<PairStream, ConstStream>;

/// Block k = 1 has one factor with exponent 1/K; block k >= 2 has
/// 2 (K-1) K^(k-2) factors with exponent K^(-k).
struct PippengerSchedule {
  long base = 2;
  friend bool operator==(const PippengerSchedule&, const PippengerSchedule&) = default;
};

/// Every block has one factor; block k has exponent ratio^k.
struct GeometricSchedule {
  Rational ratio;
  friend bool operator==(const GeometricSchedule&, const GeometricSchedule&) = default;
};

struct ExplicitBlock {
  std::uint64_t size = 1;
  Rational exponent;
  friend bool operator==(const ExplicitBlock&, const ExplicitBlock&) = default;
};

/// Finite list of blocks; the product ends with the list.
struct ExplicitSchedule {
  std::vector<ExplicitBlock> blocks;
  friend bool operator==(const ExplicitSchedule&, const ExplicitSchedule&) = default;
};

using BlockSchedule = std::variant<PippengerSchedule, GeometricSchedule, ExplicitSchedule>;

struct PrefixFactor {
  Rational factor;
  Rational exponent;
  friend bool operator==(const PrefixFactor&, const PrefixFactor&) = default;
};

/// prefix factors (each to its own power) times the stream consumed block
/// by block, block k raised to the schedule's k-th exponent.
struct CatalanProduct {
  std::vector<PrefixFactor> prefix;
  FactorStream stream;
  BlockSchedule schedule;

  friend bool operator==(const CatalanProduct&, const CatalanProduct&) = default;
};

using Product = std::variant<WallisProduct, CatalanProduct>;

// ---------------------------------------------------------------------------
// validation

/// Throws UnbalancedProduct or InvalidArgument if an invariant fails.
inline void validate(const WallisProduct& w) {
  if (w.period < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
  if (w.num.empty()) throw Error(ErrorKind::InvalidArgument, "a Wallis product needs at least one factor");
  if (w.num.size() != w.den.size())
    throw Error(ErrorKind::UnbalancedProduct, "numerator and denominator residue counts differ (" +
                                                  std::to_string(w.num.size()) + " vs " +
                                                  std::to_string(w.den.size()) + ")");
  for (Residue r : w.num)
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "residues must be >= 1");
  for (Residue r : w.den)
    if (r < 1) throw Error(ErrorKind::InvalidArgument, "residues must be >= 1");
  const mpz_class su = std::accumulate(w.num.begin(), w.num.end(), mpz_class(0),
                                       [](mpz_class a, Residue r) { return a + static_cast<long>(r); });
  const mpz_class sv = std::accumulate(w.den.begin(), w.den.end(), mpz_class(0),
                                       [](mpz_class a, Residue r) { return a + static_cast<long>(r); });
  if (su != sv)
    throw Error(ErrorKind::UnbalancedProduct,
                "residue sums differ (" + su.get_str() + " vs " + sv.get_str() + ")");
}

inline void validate(const FactorStream& s) {
  if (const auto* p = std::get_if<PairStream>(&s)) {
    if (p->period < 1) throw Error(ErrorKind::InvalidArgument, "stream period must be positive");
    if (p->pairs.empty()) throw Error(ErrorKind::InvalidArgument, "pair stream needs at least one pair");
    for (const auto& [u, v] : p->pairs)
      if (u < 1 || v < 1) throw Error(ErrorKind::InvalidArgument, "stream residues must be >= 1");
  } else if (std::get<ConstStream>(s).value.sign() <= 0) {
    throw Error(ErrorKind::InvalidArgument, "constant stream factor must be positive");
  }
}

inline void validate(const BlockSchedule& s) {
  if (const auto* p = std::get_if<PippengerSchedule>(&s)) {
    if (p->base < 2) throw Error(ErrorKind::InvalidArgument, "pippenger base must be >= 2");
  } else if (const auto* g = std::get_if<GeometricSchedule>(&s)) {
    if (g->ratio.sign() <= 0 || g->ratio >= Rational(1))
      throw Error(ErrorKind::InvalidArgument, "geometric ratio must lie in (0, 1)");
  } else {
    const auto& e = std::get<ExplicitSchedule>(s);
    if (e.blocks.empty()) throw Error(ErrorKind::InvalidArgument, "explicit schedule needs at least one block");
    for (const auto& b : e.blocks) {
      if (b.size < 1) throw Error(ErrorKind::InvalidArgument, "block sizes must be >= 1");
      if (b.exponent.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "block exponents must be positive");
    }
  }
}

inline void validate(const CatalanProduct& c) {
  for (const auto& f : c.prefix) {
    if (f.factor.sign() <= 0 || f.exponent.sign() <= 0)
      throw Error(ErrorKind::InvalidArgument, "prefix factors and exponents must be positive");
  }
  validate(c.stream);
  validate(c.schedule);
}

inline void validate(const Product& p) {
  std::visit([](const auto& x) { validate(x); }, p);
}

// ---------------------------------------------------------------------------
// streams and schedules

/// The t-th factor (0-based, after the stream offset).
inline Rational stream_factor(const FactorStream& s, std::uint64_t t) {
  if (const auto* c = std::get_if<ConstStream>(&s)) return c->value;
  const auto& p = std::get<PairStream>(s);
  const std::uint64_t idx = t + p.offset;
  const std::uint64_t m = p.pairs.size();
  const mpz_class base = mpz_class(static_cast<unsigned long>(idx / m)) * static_cast<long>(p.period);
  const auto& [u, v] = p.pairs[idx % m];
  return Rational(base + static_cast<long>(u), base + static_cast<long>(v));
}

/// The t-th printed factor of a Wallis product.
inline Rational wallis_factor(const WallisProduct& w, std::uint64_t t) {
  const std::uint64_t k = w.num.size();
  const mpz_class base = mpz_class(static_cast<unsigned long>(t / k)) * static_cast<long>(w.period);
  return Rational(base + static_cast<long>(w.num[t % k]), base + static_cast<long>(w.den[t % k]));
}

/// Number of blocks, or nullopt for an unbounded schedule.
inline std::optional<std::size_t> block_count(const BlockSchedule& s) {
  if (const auto* e = std::get_if<ExplicitSchedule>(&s)) return e->blocks.size();
  return std::nullopt;
}

/// Size of block k (1-based).
inline mpz_class block_size(const BlockSchedule& s, std::size_t k) {
  if (const auto* p = std::get_if<PippengerSchedule>(&s)) {
    if (k == 1) return 1;
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p->base), k - 2);
    return r * (2 * (p->base - 1));
  }
  if (std::holds_alternative<GeometricSchedule>(s)) return 1;
  return mpz_class(static_cast<unsigned long>(std::get<ExplicitSchedule>(s).blocks.at(k - 1).size));
}

/// Exponent of block k (1-based).
inline Rational block_exponent(const BlockSchedule& s, std::size_t k) {
  if (const auto* p = std::get_if<PippengerSchedule>(&s)) return Rational(p->base).pow(-static_cast<long>(k));
  if (const auto* g = std::get_if<GeometricSchedule>(&s)) return g->ratio.pow(static_cast<long>(k));
  return std::get<ExplicitSchedule>(s).blocks.at(k - 1).exponent;
}

/// Number of stream factors consumed by the first n blocks.
inline mpz_class cumulative_size(const BlockSchedule& s, std::size_t n) {
  if (const auto* p = std::get_if<PippengerSchedule>(&s)) {
    if (n == 0) return 0;
    // 1 + sum_{k=2..n} 2(K-1)K^(k-2) = 2 K^(n-1) - 1
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p->base), n - 1);
    return 2 * r - 1;
  }
  mpz_class total = 0;
  for (std::size_t k = 1; k <= n; ++k) total += block_size(s, k);
  return total;
}

// ---------------------------------------------------------------------------
// constructors

/// prod_{n>=1} (Kn)^2 / ((Kn-1)(Kn+1)) = (pi/K) / sin(pi/K).
inline WallisProduct wallis_general(long K) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "wallis_general needs K >= 2");
  return WallisProduct{K, {K, K}, {K - 1, K + 1}};
}

/// Pippenger-style product built over wallis_general(K)'s factors.
inline CatalanProduct pippenger_general(long K) {
  if (K < 2) throw Error(ErrorKind::InvalidArgument, "pippenger_general needs K >= 2");
  return CatalanProduct{{}, PairStream{K, {{K, K - 1}, {K, K + 1}}, 0}, PippengerSchedule{K}};
}

/// Equation tags of the catalog, Wallis-type first.
inline const std::vector<int>& builtin_wallis_ids() {
  static const std::vector<int> ids{1, 2, 3, 6, 7, 8, 9, 10, 11, 12};
  return ids;
}
inline const std::vector<int>& builtin_catalan_ids() {
  static const std::vector<int> ids{4, 5, 15, 16, 17, 18, 20};
  return ids;
}
inline bool is_builtin_id(long id) {
  const auto& w = builtin_wallis_ids();
  const auto& c = builtin_catalan_ids();
  return std::find(w.begin(), w.end(), id) != w.end() || std::find(c.begin(), c.end(), id) != c.end();
}

/// The catalog product with the given equation tag.
inline Product builtin(long id) {
  switch (id) {
    case 1: return wallis_general(2);
    case 2: return WallisProduct{4, {4, 4}, {3, 5}};
    case 3: return WallisProduct{4, {2, 2}, {1, 3}};
    case 6: return WallisProduct{8, {2, 6, 8, 8}, {3, 5, 7, 9}};
    case 7: return WallisProduct{8, {2, 4, 4, 6}, {1, 3, 5, 7}};
    case 8: return WallisProduct{8, {8, 8}, {7, 9}};
    case 9: return WallisProduct{8, {2, 6}, {3, 5}};
    case 10: return WallisProduct{8, {2, 4, 4, 6, 8, 8}, {3, 3, 5, 5, 7, 9}};
    case 11: return WallisProduct{8, {2, 6}, {1, 7}};
    case 12: return wallis_general(3);
    case 4:
      return CatalanProduct{{{Rational(2), Rational(1)}}, PairStream{2, {{4, 3}}, 0}, PippengerSchedule{2}};
    case 5: return pippenger_general(2);
    case 15: return CatalanProduct{{}, PairStream{2, {{2, 3}}, 0}, PippengerSchedule{2}};
    case 16:
      return CatalanProduct{{{Rational(2), Rational(1)}}, PairStream{8, {{2, 1}, {2, 3}, {6, 5}, {6, 7}}, 1},
                            PippengerSchedule{2}};
    case 17:
      return CatalanProduct{{{Rational(2), Rational(1)}}, PairStream{8, {{4, 3}, {4, 5}, {8, 7}, {8, 9}}, 0},
                            PippengerSchedule{2}};
    case 18: return pippenger_general(3);
    case 20: return CatalanProduct{{}, ConstStream{Rational(2)}, GeometricSchedule{Rational(1, 2)}};
    default: break;
  }
  throw Error(ErrorKind::UnknownBuiltin, "no catalog product with tag " + std::to_string(id));
}

inline WallisProduct builtin_wallis(long id) {
  auto p = builtin(id);
  if (auto* w = std::get_if<WallisProduct>(&p)) return *w;
  throw Error(ErrorKind::MixedFamilies, "catalog product " + std::to_string(id) + " is Catalan-type");
}

inline CatalanProduct builtin_catalan(long id) {
  auto p = builtin(id);
  if (auto* c = std::get_if<CatalanProduct>(&p)) return *c;
  throw Error(ErrorKind::MixedFamilies, "catalog product " + std::to_string(id) + " is Wallis-type");
}

/// Closed-form value stated for each catalog product.
inline ConstExpr builtin_target(long id) {
  using E = ConstExpr;
  const E two = E::integer(2);
  const E pi = E::pi();
  const E e = E::e();
  switch (id) {
    case 1: return pi / two;
    case 2: return pi / (two * sqrt(two));
    case 3: return sqrt(two);
    case 6: return pi / E::integer(4);
    case 7: return two;
    case 8: return pi / (E::integer(4) * sqrt(two - sqrt(two)));
    case 9: return sqrt(two - sqrt(two));
    case 10: return pi / (two * sqrt(two + sqrt(two)));
    case 11: return sqrt(two + sqrt(two));
    case 12: return two * pi / (E::integer(3) * sqrt(E::integer(3)));
    case 4: return e;
    case 5: return e / two;
    case 15: return e / E::integer(4);
    case 16: return sqrt(e);
    case 17: return pow(e, Rational(3, 2)) / two;
    case 18: return pow(e, Rational(2, 3)) / sqrt(E::integer(3));
    case 20: return two;
    default: break;
  }
  throw Error(ErrorKind::UnknownBuiltin, "no catalog product with tag " + std::to_string(id));
}

}  // namespace prodlab

#endif  // PRODLAB_PRODUCT_HPP
