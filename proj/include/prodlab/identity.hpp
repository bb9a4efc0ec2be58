#ifndef PRODLAB_IDENTITY_HPP
#define PRODLAB_IDENTITY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "canonical.hpp"
#include "evaluator.hpp"
#include "product.hpp"

namespace prodlab {

/// Reference to a named product: a catalog tag or one of the general-K
/// constructors.
struct ProductRef {
  enum class Kind { Paper, WallisGeneral, PippengerGeneral };
  Kind kind = Kind::Paper;
  long arg = 1;

  Product resolve() const {
    switch (kind) {
      case Kind::Paper: return builtin(arg);
      case Kind::WallisGeneral: return wallis_general(arg);
      case Kind::PippengerGeneral: return pippenger_general(arg);
    }
    throw Error(ErrorKind::UnknownBuiltin, "bad product reference");
  }

  std::string render() const {
    switch (kind) {
      case Kind::Paper: return "paper(" + std::to_string(arg) + ")";
      case Kind::WallisGeneral: return "wallis_general(" + std::to_string(arg) + ")";
      case Kind::PippengerGeneral: return "pippenger_general(" + std::to_string(arg) + ")";
    }
    return "?";
  }

  friend bool operator==(const ProductRef&, const ProductRef&) = default;
};

struct ClaimTerm {
  ProductRef ref;
  Rational exponent{1};
  friend bool operator==(const ClaimTerm&, const ClaimTerm&) = default;
};

/// constant * prod_i ref_i ^ exponent_i
struct ClaimSide {
  Rational constant{1};
  std::vector<ClaimTerm> terms;
  friend bool operator==(const ClaimSide&, const ClaimSide&) = default;
};

struct IdentityClaim {
  ClaimSide lhs;
  ClaimSide rhs;
  friend bool operator==(const IdentityClaim&, const IdentityClaim&) = default;
};

struct StructuralEqual {
  Rational residual{1};
};
struct NumericEqual {
  Rational tolerance;
  PrecisionReal lhs;
  PrecisionReal rhs;
};
struct Refuted {
  std::string witness;
};
struct Inconclusive {
  std::string reason;
};

using Verdict = std::variant<StructuralEqual, NumericEqual, Refuted, Inconclusive>;

inline const char* verdict_name(const Verdict& v) {
  switch (v.index()) {
    case 0: return "structural";
    case 1: return "numeric";
    case 2: return "refuted";
    default: return "inconclusive";
  }
}

inline bool verdict_holds(const Verdict& v) { return v.index() <= 1; }

inline constexpr std::size_t kDefaultWindow = 256;
inline const Rational kDefaultNumericTolerance{1, 10'000'000'000L};
inline constexpr int kDefaultNumericPrecision = 128;

namespace detail {

inline bool all_of_family(const IdentityClaim& claim, std::size_t family_index) {
  auto check = [&](const ClaimSide& s) {
    return std::all_of(s.terms.begin(), s.terms.end(),
                       [&](const ClaimTerm& t) { return t.ref.resolve().index() == family_index; });
  };
  return check(claim.lhs) && check(claim.rhs);
}

}  // namespace detail

/// Structural check of a Wallis-type factorization: both sides are
/// canonicalized at the lcm of every period involved and compared residue
/// for residue. Integer exponents expand to repeated factors; negative
/// ones move the product to the other side.
inline Verdict verify_wallis_identity(const IdentityClaim& claim) {
  if (!detail::all_of_family(claim, 0))
    throw Error(ErrorKind::MixedFamilies, "a Catalan-type product appears in a Wallis identity");
  std::vector<WallisProduct> lhs, rhs;
  auto place = [&](const ClaimSide& side, std::vector<WallisProduct>& same, std::vector<WallisProduct>& other) {
    for (const auto& t : side.terms) {
      if (!t.exponent.is_integer())
        throw Error(ErrorKind::InvalidArgument, "Wallis identities take integer exponents only");
      const long e = t.exponent.numerator().get_si();
      const auto prod = std::get<WallisProduct>(t.ref.resolve());
      for (long i = 0; i < std::labs(e); ++i) (e > 0 ? same : other).push_back(prod);
    }
  };
  place(claim.lhs, lhs, rhs);
  place(claim.rhs, rhs, lhs);
  if (lhs.empty() || rhs.empty()) return Inconclusive{"one side has no products"};

  std::vector<WallisProduct> all = lhs;
  all.insert(all.end(), rhs.begin(), rhs.end());
  const Residue Q = lcm_of_periods(all);
  const auto left = disjoint_union(lhs, Q);
  const auto right = disjoint_union(rhs, Q);
  if (auto diff = first_difference(left, right)) return Refuted{*diff + " (period " + std::to_string(Q) + ")"};
  if (claim.lhs.constant != claim.rhs.constant)
    return Refuted{"products agree but constants differ: " + claim.lhs.constant.to_string() + " vs " +
                   claim.rhs.constant.to_string()};
  return StructuralEqual{Rational(1)};
}

/// Exact factor -> total exponent over the prefix and the first T stream
/// positions.
inline std::map<Rational, Rational> factor_exponent_map(const CatalanProduct& prod, std::uint64_t T) {
  validate(prod);
  std::map<Rational, Rational> out;
  for (const auto& f : prod.prefix) out[f.factor] += f.exponent;
  std::size_t k = 1;
  mpz_class block_end = block_size(prod.schedule, 1);
  const auto count = block_count(prod.schedule);
  for (std::uint64_t t = 0; t < T; ++t) {
    while (mpz_class(static_cast<unsigned long>(t)) >= block_end) {
      ++k;
      if (count && k > *count) return out;
      block_end += block_size(prod.schedule, k);
    }
    out[stream_factor(prod.stream, t)] += block_exponent(prod.schedule, k);
  }
  return out;
}

namespace detail {

using ExponentMap = std::map<Rational, Rational>;

// Factors with unreduced numerator and denominator <= bound, each with its
// exponent; constant streams contribute their full (closed-form) exponent.
inline ExponentMap bounded_exponent_map(const CatalanProduct& prod, std::uint64_t T, const mpz_class& bound,
                                        bool& complete) {
  ExponentMap out;
  for (const auto& f : prod.prefix) out[f.factor] += f.exponent;
  if (const auto* c = std::get_if<ConstStream>(&prod.stream)) {
    Rational total;
    if (const auto* g = std::get_if<GeometricSchedule>(&prod.schedule)) {
      total = g->ratio / (Rational(1) - g->ratio);
    } else if (const auto* e = std::get_if<ExplicitSchedule>(&prod.schedule)) {
      for (const auto& b : e->blocks) total += Rational(mpz_class(static_cast<unsigned long>(b.size))) * b.exponent;
    } else {
      complete = false;
      return out;
    }
    out[c->value] += total;
    return out;
  }
  const auto& s = std::get<PairStream>(prod.stream);
  std::size_t k = 1;
  mpz_class block_end = block_size(prod.schedule, 1);
  const auto count = block_count(prod.schedule);
  for (std::uint64_t t = 0; t < T; ++t) {
    while (mpz_class(static_cast<unsigned long>(t)) >= block_end) {
      ++k;
      if (count && k > *count) return out;
      block_end += block_size(prod.schedule, k);
    }
    const std::uint64_t idx = t + s.offset;
    const mpz_class base = mpz_class(static_cast<unsigned long>(idx / s.pairs.size())) * static_cast<long>(s.period);
    const auto& [u, v] = s.pairs[idx % s.pairs.size()];
    const mpz_class a = base + static_cast<long>(u);
    const mpz_class b = base + static_cast<long>(v);
    if (a > bound || b > bound) continue;
    out[Rational(a, b)] += block_exponent(prod.schedule, k);
  }
  return out;
}

// Smallest period base reached after T positions; every later factor has
// numerator and denominator above it.
inline mpz_class window_bound(const CatalanProduct& prod, std::uint64_t T) {
  const auto* s = std::get_if<PairStream>(&prod.stream);
  if (!s) return -1;
  return mpz_class(static_cast<unsigned long>((T + s->offset) / s->pairs.size())) * static_cast<long>(s->period);
}

inline void accumulate(ExponentMap& into, const ExponentMap& from, const Rational& scale) {
  for (const auto& [f, e] : from) {
    auto& slot = into[f];
    slot += e * scale;
    if (slot.is_zero()) into.erase(f);
  }
}

// value of one side from the high-precision limits
inline BigFloat side_log(const ClaimSide& side, int p) {
  const int w = p + kGuardBits;
  BigFloat sum = log_rational(side.constant, w);
  for (const auto& t : side.terms) {
    const auto prod = t.ref.resolve();
    const auto* c = std::get_if<CatalanProduct>(&prod);
    const BigFloat v = c ? catalan_limit_gamma(*c, w).value.value()
                         : eq21_eval(std::get<WallisProduct>(prod), w).value();
    sum += mul_rational(log(v), t.exponent);
  }
  return sum;
}

}  // namespace detail

/// Catalan-type identity check: structural over a window of T positions,
/// numeric otherwise.
///
/// Each side becomes a map factor -> exponent over all factors whose terms
/// stay below a common bound (so every product is compared on the same
/// range of factors). If the difference is empty, or a rational constant
/// that the claim's multipliers absorb, the claim is StructuralEqual.
/// Anything else (telescoping identities, for instance) falls back to
/// comparing high-precision limits of both sides within tol.
inline Verdict verify_catalan_identity(const IdentityClaim& claim, std::uint64_t T = kDefaultWindow,
                                       const Rational& tol = kDefaultNumericTolerance,
                                       int p = kDefaultNumericPrecision) {
  if (T < 16) throw Error(ErrorKind::InvalidArgument, "window must cover at least 16 positions");
  if (!detail::all_of_family(claim, 1))
    throw Error(ErrorKind::MixedFamilies, "a Wallis-type product appears in a Catalan identity");
  if (claim.lhs.constant.sign() <= 0 || claim.rhs.constant.sign() <= 0)
    throw Error(ErrorKind::InvalidArgument, "constant multipliers must be positive");

  mpz_class bound = -1;
  for (const ClaimSide* side : {&claim.lhs, &claim.rhs}) {
    for (const auto& t : side->terms) {
      const mpz_class b = detail::window_bound(std::get<CatalanProduct>(t.ref.resolve()), T);
      if (b >= 0 && (bound < 0 || b < bound)) bound = b;
    }
  }

  bool complete = true;
  detail::ExponentMap diff;
  for (const auto& t : claim.rhs.terms)
    detail::accumulate(diff, detail::bounded_exponent_map(std::get<CatalanProduct>(t.ref.resolve()), T, bound, complete),
                       t.exponent);
  for (const auto& t : claim.lhs.terms)
    detail::accumulate(diff, detail::bounded_exponent_map(std::get<CatalanProduct>(t.ref.resolve()), T, bound, complete),
                       -t.exponent);

  if (complete) {
    // rhs / lhs = (c_r / c_l) * prod f^diff_f
    const bool integral = std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second.is_integer(); });
    if (integral) {
      Rational residual(1);
      for (const auto& [f, e] : diff) residual *= f.pow(e.numerator().get_si());
      if (claim.rhs.constant * residual == claim.lhs.constant) return StructuralEqual{residual};
    }
  }

  const PrecisionReal lhs(exp(detail::side_log(claim.lhs, p)), p);
  const PrecisionReal rhs(exp(detail::side_log(claim.rhs, p)), p);
  switch (prec_compare(lhs, rhs, tol)) {
    case Comparison::Equal: return NumericEqual{tol, lhs, rhs};
    case Comparison::Distinct: return Refuted{"lhs = " + lhs.decimal(30) + ", rhs = " + rhs.decimal(30)};
    case Comparison::Inconclusive: break;
  }
  return Inconclusive{"difference is within the accuracy slack of the tolerance"};
}

/// Dispatches on the product family of the claim.
inline Verdict verify_identity(const IdentityClaim& claim, std::uint64_t T = kDefaultWindow,
                               const Rational& tol = kDefaultNumericTolerance, int p = kDefaultNumericPrecision) {
  if (detail::all_of_family(claim, 0)) return verify_wallis_identity(claim);
  if (detail::all_of_family(claim, 1)) return verify_catalan_identity(claim, T, tol, p);
  throw Error(ErrorKind::MixedFamilies, "claim mixes Wallis-type and Catalan-type products");
}

}  // namespace prodlab

#endif  // PRODLAB_IDENTITY_HPP
