#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace prodlab;

namespace {

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> wallis_fractions(const WallisProduct& w, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < n; ++t) out.push_back(wallis_factor(w, t).to_fraction_string());
  return out;
}

// "f f f | f f | ..." for the first n_blocks blocks of the stream
std::string stream_blocks(const CatalanProduct& c, std::size_t n_blocks) {
  std::string out;
  std::uint64_t t = 0;
  for (std::size_t k = 1; k <= n_blocks; ++k) {
    if (k > 1) out += " |";
    const auto size = block_size(c.schedule, k).get_ui();
    for (std::uint64_t i = 0; i < size; ++i) out += " " + stream_factor(c.stream, t++).to_fraction_string();
  }
  return out.substr(1);
}

}  // namespace

// Printed factors of each Wallis-type formula, in printed order.
TEST(Golden, WallisPrintedFactors) {
  const std::map<int, std::string> printed = {
      {1, "2/1 2/3 4/3 4/5 6/5 6/7 8/7 8/9 10/9 10/11 12/11 12/13"},
      {2, "4/3 4/5 8/7 8/9 12/11 12/13 16/15"},
      {3, "2/1 2/3 6/5 6/7 10/9 10/11 14/13 14/15"},
      {6, "2/3 6/5 8/7 8/9 10/11 14/13 16/15 16/17 18/19 22/21 24/23 24/25"},
      {7, "2/1 4/3 4/5 6/7 10/9 12/11 12/13 14/15 18/17 20/19 20/21 22/23"},
      {8, "8/7 8/9 16/15 16/17 24/23 24/25"},
      {9, "2/3 6/5 10/11 14/13 18/19 22/21"},
      // the first group is printed with 6/5 8/7 missing; later groups fix the pattern
      {10, "2/3 4/3 4/5 6/5 8/7 8/9 10/11 12/11 12/13 14/13 16/15 16/17"},
      {11, "2/1 6/7 10/9 14/15 18/17 22/23"},
      {12, "3/2 3/4 6/5 6/7 9/8 9/10"},
  };
  for (const auto& [id, text] : printed) {
    const auto expected = split(text);
    EXPECT_EQ(wallis_fractions(builtin_wallis(id), expected.size()), expected) << "product " << id;
  }
}

TEST(Golden, CatalanPrintedBlocks) {
  const std::map<int, std::pair<std::string, std::size_t>> printed = {
      {4, {"4/3 | 6/5 8/7 | 10/9 12/11 14/13 16/15", 3}},
      {5, {"2/1 | 2/3 4/3 | 4/5 6/5 6/7 8/7 | 8/9 10/9 10/11 12/11 12/13 14/13 14/15 16/15", 4}},
      {15, {"2/3 | 4/5 6/7 | 8/9 10/11 12/13 14/15", 3}},
      {16, {"2/3 | 6/5 6/7 | 10/9 10/11 14/13 14/15", 3}},
      {17, {"4/3 | 4/5 8/7 | 8/9 12/11 12/13 16/15", 3}},
      {18, {"3/2 | 3/4 6/5 6/7 9/8 | 9/10 12/11 12/13 15/14 15/16 18/17 18/19 21/20 21/22 24/23 24/25 27/26", 3}},
      {20, {"2/1 | 2/1 | 2/1 | 2/1", 4}},
  };
  for (const auto& [id, entry] : printed)
    EXPECT_EQ(stream_blocks(builtin_catalan(id), entry.second), entry.first) << "product " << id;
  // prefixes and first exponents
  EXPECT_EQ(builtin_catalan(4).prefix, (std::vector<PrefixFactor>{{Rational(2), Rational(1)}}));
  EXPECT_EQ(builtin_catalan(16).prefix, (std::vector<PrefixFactor>{{Rational(2), Rational(1)}}));
  EXPECT_EQ(builtin_catalan(17).prefix, (std::vector<PrefixFactor>{{Rational(2), Rational(1)}}));
  EXPECT_TRUE(builtin_catalan(5).prefix.empty());
  EXPECT_EQ(block_exponent(builtin_catalan(18).schedule, 2), Rational(1, 9));
  EXPECT_EQ(block_exponent(builtin_catalan(20).schedule, 3), Rational(1, 8));
}

TEST(Builtin, CatalogEntries) {
  EXPECT_EQ(builtin_wallis(7), (WallisProduct{8, {2, 4, 4, 6}, {1, 3, 5, 7}}));
  EXPECT_EQ(builtin_wallis(9), (WallisProduct{8, {2, 6}, {3, 5}}));
  const auto c16 = builtin_catalan(16);
  EXPECT_EQ(std::get<PairStream>(c16.stream), (PairStream{8, {{2, 1}, {2, 3}, {6, 5}, {6, 7}}, 1}));
  EXPECT_EQ(std::get<PippengerSchedule>(c16.schedule).base, 2);
}

TEST(Builtin, UnknownIdsAndFamilies) {
  for (long id : {0L, 13L, 14L, 19L, 21L, -1L}) {
    try {
      builtin(id);
      FAIL() << id;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::UnknownBuiltin);
    }
  }
  EXPECT_THROW(builtin_wallis(5), Error);
  EXPECT_THROW(builtin_catalan(1), Error);
}

TEST(Builtin, AllValidate) {
  for (int id : builtin_wallis_ids()) EXPECT_NO_THROW(validate(builtin(id)));
  for (int id : builtin_catalan_ids()) EXPECT_NO_THROW(validate(builtin(id)));
}

TEST(Validate, WallisInvariants) {
  auto kind_of = [](const WallisProduct& w) {
    try {
      validate(w);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;  // unreachable in these cases
  };
  EXPECT_EQ(kind_of({8, {2, 4, 4, 6}, {1, 3, 5, 8}}), ErrorKind::UnbalancedProduct);
  EXPECT_EQ(kind_of({8, {2, 4}, {6}}), ErrorKind::UnbalancedProduct);
  EXPECT_EQ(kind_of({8, {0, 2}, {1, 1}}), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of({0, {2}, {2}}), ErrorKind::InvalidArgument);
}

TEST(Validate, CatalanInvariants) {
  CatalanProduct c = builtin_catalan(5);
  c.schedule = PippengerSchedule{1};
  EXPECT_THROW(validate(c), Error);
  c.schedule = GeometricSchedule{Rational(1)};
  EXPECT_THROW(validate(c), Error);
  c.schedule = ExplicitSchedule{};
  EXPECT_THROW(validate(c), Error);
  c.schedule = ExplicitSchedule{{{2, Rational(0)}}};
  EXPECT_THROW(validate(c), Error);
  c = builtin_catalan(5);
  c.stream = ConstStream{Rational(0)};
  EXPECT_THROW(validate(c), Error);
  c = builtin_catalan(5);
  c.prefix.push_back({Rational(-2), Rational(1)});
  EXPECT_THROW(validate(c), Error);
}

TEST(StreamFactor, Examples) {
  EXPECT_EQ(stream_factor(builtin_catalan(5).stream, 0), Rational(2));
  EXPECT_EQ(stream_factor(builtin_catalan(18).stream, 1), Rational(3, 4));
  EXPECT_EQ(stream_factor(FactorStream{ConstStream{Rational(2)}}, 17), Rational(2));
}

TEST(GeneralK, WallisGeneralMatchesCatalog) {
  EXPECT_EQ(wallis_general(2), builtin_wallis(1));
  EXPECT_EQ(wallis_general(3), builtin_wallis(12));
  EXPECT_EQ(wallis_general(4), builtin_wallis(2));
  EXPECT_THROW(wallis_general(1), Error);
}

TEST(GeneralK, BalanceHoldsUpTo100) {
  for (long K = 2; K <= 100; ++K) EXPECT_NO_THROW(validate(wallis_general(K))) << K;
}

TEST(GeneralK, PippengerGeneralStructure) {
  EXPECT_EQ(pippenger_general(2), builtin_catalan(5));
  EXPECT_EQ(pippenger_general(3), builtin_catalan(18));
  const auto c4 = pippenger_general(4);
  const std::vector<unsigned long> sizes{1, 6, 24, 96};
  for (std::size_t k = 1; k <= 4; ++k) {
    EXPECT_EQ(block_size(c4.schedule, k), sizes[k - 1]);
    EXPECT_EQ(block_exponent(c4.schedule, k), Rational(1).pow(1) / Rational(4).pow(static_cast<long>(k)));
  }
}

TEST(Schedule, PippengerSizes) {
  const BlockSchedule k2 = PippengerSchedule{2}, k3 = PippengerSchedule{3};
  for (std::size_t k = 1; k <= 6; ++k) {
    EXPECT_EQ(block_size(k2, k), k == 1 ? 1 : 1UL << (k - 1));
  }
  const std::vector<unsigned long> three{1, 4, 12, 36, 108};
  for (std::size_t k = 1; k <= 5; ++k) EXPECT_EQ(block_size(k3, k), three[k - 1]);
}

TEST(Schedule, CumulativeSizeMatchesDirectSum) {
  for (long K = 2; K <= 10; ++K) {
    const BlockSchedule s = PippengerSchedule{K};
    for (std::size_t n = 1; n <= 12; ++n) {
      mpz_class direct = 1, pw = 1;
      for (std::size_t k = 2; k <= n; ++k) {
        direct += 2 * (K - 1) * pw;
        pw *= K;
      }
      EXPECT_EQ(cumulative_size(s, n), direct) << K << " " << n;
    }
  }
}

TEST(Schedule, GeometricAndExplicit) {
  const BlockSchedule g = GeometricSchedule{Rational(1, 3)};
  EXPECT_EQ(block_size(g, 5), 1);
  EXPECT_EQ(block_exponent(g, 2), Rational(1, 9));
  EXPECT_FALSE(block_count(g).has_value());
  const BlockSchedule e = ExplicitSchedule{{{1, Rational(1, 2)}, {3, Rational(1, 4)}}};
  EXPECT_EQ(block_count(e), 2u);
  EXPECT_EQ(cumulative_size(e, 2), 4);
  EXPECT_EQ(block_exponent(e, 2), Rational(1, 4));
}

TEST(ClosedForm, Eq13Forms) {
  EXPECT_EQ(eq13_closed_form(2).render(), "pi/2");
  EXPECT_EQ(eq13_closed_form(3).render(), "2*pi/(3*sqrt(3))");
  EXPECT_EQ(eq13_closed_form(5).render(), "pi/5/sin(pi/5)");
  EXPECT_THROW(eq13_closed_form(1), Error);
  for (long K = 2; K <= 10; ++K) {
    const auto v = const_eval(eq13_closed_form(K), 256);
    EXPECT_TRUE(testutil::within(v.value(), testutil::big(oracle::kGeneralWallis.at(static_cast<int>(K))), "1e-70"))
        << K;
  }
}

TEST(ClosedForm, ReflectionPairingOnCatalog) {
  // every catalog value is recovered numerically by the reflection pairing
  for (int id : builtin_wallis_ids()) {
    const auto cf = reflection_closed_form(builtin_wallis(id));
    ASSERT_TRUE(cf.has_value()) << id;
    const auto v = const_eval(*cf, 200);
    EXPECT_TRUE(testutil::within(v.value(), testutil::big(oracle::kWallisTargets.at(id)), "1e-55")) << id;
  }
  // a product whose Gamma values do not pair off
  EXPECT_FALSE(reflection_closed_form(WallisProduct{6, {2, 2}, {1, 3}}).has_value());
}

TEST(ClosedForm, WallisClosedFormPrefersCatalog) {
  EXPECT_EQ(wallis_closed_form(builtin_wallis(9))->render(), "sqrt(2-sqrt(2))");
  EXPECT_EQ(wallis_closed_form(wallis_general(3))->render(), "2*pi/(3*sqrt(3))");
  EXPECT_EQ(wallis_closed_form(wallis_general(7))->render(), eq13_closed_form(7).render());
}
