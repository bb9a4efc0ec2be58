#include <gtest/gtest.h>

#include <map>
#include <random>

#include "test_util.hpp"

using namespace prodlab;

namespace {

// Signed count of each integer <= limit in numerator (+) minus
// denominator (-) of the infinite product, by direct enumeration.
std::map<Residue, long> integer_profile(const WallisProduct& w, Residue limit) {
  std::map<Residue, long> out;
  for (Residue n = 0; n * w.period < limit; ++n) {
    for (Residue u : w.num)
      if (n * w.period + u <= limit) out[n * w.period + u] += 1;
    for (Residue v : w.den)
      if (n * w.period + v <= limit) out[n * w.period + v] -= 1;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<Residue, long> integer_profile(const CanonicalWallisForm& f, Residue limit) {
  auto out = integer_profile(WallisProduct{f.period, f.num, f.den}, limit);
  // boundary +c: the source numerator skips m; -c: the denominator does
  for (const auto& [m, c] : f.boundary) out[m] -= c;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

WallisProduct random_product(std::mt19937_64& rng) {
  const Residue P = std::uniform_int_distribution<Residue>(1, 9)(rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  std::uniform_int_distribution<Residue> r(1, 3 * P);
  WallisProduct w{P, {}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    w.num.push_back(r(rng));
    w.den.push_back(r(rng));
  }
  return w;
}

}  // namespace

TEST(Canonicalize, WallisAtPeriod8) {
  const auto f = canonicalize(builtin_wallis(1), 8);
  EXPECT_EQ(f.num, (std::vector<Residue>{2, 2, 4, 4, 6, 6, 8, 8}));
  EXPECT_EQ(f.den, (std::vector<Residue>{1, 1, 3, 3, 5, 5, 7, 7}));
  EXPECT_EQ(f.boundary, (std::map<Residue, long>{{1, -1}}));
}

TEST(Canonicalize, AlreadyCanonical) {
  const auto f = canonicalize(builtin_wallis(7), 8);
  EXPECT_EQ(f.num, (std::vector<Residue>{2, 4, 4, 6}));
  EXPECT_EQ(f.den, (std::vector<Residue>{1, 3, 5, 7}));
  EXPECT_TRUE(f.boundary.empty());
}

TEST(Canonicalize, ResidueAbovePeriod) {
  const auto f = canonicalize(builtin_wallis(12), 3);
  EXPECT_EQ(f.num, (std::vector<Residue>{3, 3}));
  EXPECT_EQ(f.den, (std::vector<Residue>{1, 2}));
  EXPECT_EQ(f.boundary, (std::map<Residue, long>{{1, -1}}));
}

TEST(Canonicalize, NonMultiplePeriodRejected) { EXPECT_THROW(canonicalize(builtin_wallis(12), 4), Error); }

TEST(Canonicalize, BruteForceProfileOnBuiltins) {
  for (int id : builtin_wallis_ids()) {
    const auto w = builtin_wallis(id);
    for (Residue Q : std::initializer_list<Residue>{w.period, 2 * w.period, 24}) {
      if (Q % w.period) continue;
      const Residue limit = 10 * Q;
      EXPECT_EQ(integer_profile(canonicalize(w, Q), limit), integer_profile(w, limit)) << id << " Q=" << Q;
    }
  }
}

TEST(Canonicalize, BruteForceProfileOnRandomProducts) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const auto w = random_product(rng);
    const Residue Q = w.period * std::uniform_int_distribution<Residue>(1, 4)(rng);
    const Residue limit = 10 * Q;
    EXPECT_EQ(integer_profile(canonicalize(w, Q), limit), integer_profile(w, limit));
  }
}

TEST(Canonicalize, DoublingCommutes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto w = random_product(rng);
    const Residue Q = w.period * std::uniform_int_distribution<Residue>(1, 3)(rng);
    EXPECT_EQ(recanonicalize(canonicalize(w, Q), 2 * Q), canonicalize(w, 2 * Q));
  }
}

TEST(DisjointUnion, CatalogFactorizations) {
  const auto w = [](int id) { return builtin_wallis(id); };
  EXPECT_EQ(disjoint_union({w(6), w(7)}), canonicalize(w(1), 8));
  EXPECT_EQ(disjoint_union({w(9), w(11)}), canonicalize(w(3), 8));
  EXPECT_EQ(disjoint_union({w(8), w(9), w(7)}), canonicalize(w(1), 8));
  EXPECT_EQ(disjoint_union({w(10), w(11)}), canonicalize(w(1), 8));
  EXPECT_EQ(disjoint_union({w(7)}), canonicalize(w(7), 8));
  EXPECT_EQ(disjoint_union({w(7), w(12)}).period, 24);
}

TEST(DisjointUnion, OrderIndependent) {
  const auto a = builtin_wallis(8), b = builtin_wallis(9), c = builtin_wallis(7);
  EXPECT_EQ(disjoint_union({a, b, c}), disjoint_union({c, a, b}));
  EXPECT_EQ(disjoint_union({a, b, c}), disjoint_union({b, c, a}));
}

TEST(FirstDifference, NamesTheResidue) {
  const auto lhs = canonicalize(builtin_wallis(1), 8);
  const auto rhs = disjoint_union({builtin_wallis(6), builtin_wallis(6)});
  const auto d = first_difference(lhs, rhs);
  ASSERT_TRUE(d.has_value());
  EXPECT_NE(d->find("residue"), std::string::npos);
  EXPECT_FALSE(first_difference(lhs, lhs).has_value());
}
