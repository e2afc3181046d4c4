#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secform/classify.hpp"
#include "test_helpers.hpp"

using namespace secform;
using namespace secform::classify;

namespace {

ManifoldClass cls(int n, const char* group, Matrix mu, std::optional<std::vector<const char*>> phi,
                  std::optional<std::vector<int>> omega = std::nullopt, int delta = 0) {
  Triple t{parse_group(group), std::move(mu), std::nullopt, std::move(omega)};
  if (phi) {
    t.phi.emplace();
    for (const char* p : *phi) t.phi->push_back(QZValue::parse(p));
  }
  return {((n % 4) + 4) % 4, delta, std::move(t)};
}

oracle::FiniteGroup stand_in(const AbelianGroup& g) {
  oracle::FiniteGroup f;
  for (int i = 0; i < g.free_rank(); ++i) f.orders.push_back(1 << (g.i_max() + 3));
  for (int e : g.two_exponents()) f.orders.push_back(1 << e);
  return f;
}

}  // namespace

TEST(Membership, Examples) {
  auto m = check_membership(cls(10, "Z", {{0}}, {{"1/4"}}), 10);
  EXPECT_TRUE(m.member);
  EXPECT_TRUE(m.reasons.empty());

  m = check_membership(cls(10, "Z", {{1}}, {{"1/4"}}), 10);
  EXPECT_FALSE(m.member);
  ASSERT_EQ(m.reasons.size(), 1u);
  EXPECT_EQ(m.reasons[0].rfind("diag", 0), 0u);

  m = check_membership(cls(8, "Z", {{0}}, {{"1/4"}}), 8);
  EXPECT_FALSE(m.member);
  ASSERT_EQ(m.reasons.size(), 1u);
  EXPECT_EQ(m.reasons[0].rfind("value group", 0), 0u);
}

TEST(Membership, OddClauses) {
  // n = 3 mod 4: no phi; lift clause on the order-4 coordinate, delta clause on Z2
  EXPECT_TRUE(check_membership(cls(7, "Z + Z2", {{0, 1}, {1, 0}}, std::nullopt, std::vector<int>{1}), 7).member);
  auto m = check_membership(cls(7, "Z + Z2", {{1, 0}, {0, 0}}, std::nullopt, std::vector<int>{0}), 7);
  EXPECT_FALSE(m.member);
  EXPECT_EQ(m.reasons[0].rfind("lift", 0), 0u);
  m = check_membership(cls(7, "Z2", {{1}}, std::nullopt, std::vector<int>{1}, 0), 7);
  EXPECT_FALSE(m.member);
  EXPECT_EQ(m.reasons[0].rfind("order 2", 0), 0u);
  EXPECT_TRUE(check_membership(cls(7, "Z2", {{1}}, std::nullopt, std::vector<int>{1}, 1), 7).member);
  EXPECT_FALSE(check_membership(cls(7, "Z2", {{0}}, std::nullopt, std::vector<int>{1}, 1), 7).member);
  // n = 1 mod 4 adds the Z2-valued phi
  EXPECT_FALSE(check_membership(cls(5, "Z4", {{0}}, {{"1/4"}}, std::vector<int>{0}), 5).member);
  EXPECT_TRUE(check_membership(cls(5, "Z4", {{0}}, {{"1/2"}}, std::vector<int>{1}), 5).member);
}

TEST(Membership, MultipleReasonsAreAllReported) {
  const auto m = check_membership(cls(6, "Z^2", {{1, 0}, {0, 1}}, {{"1/4", "0"}}), 6);
  EXPECT_EQ(m.reasons.size(), 2u);
}

TEST(Membership, ShapeAndRangeErrors) {
  EXPECT_THROW(check_membership(cls(7, "Z", {{0}}, {{"0"}}, std::vector<int>{}), 7), InvalidInput);
  EXPECT_THROW(check_membership(cls(5, "Z", {{0}}, {{"0"}}), 5), InvalidInput);
  EXPECT_THROW(check_membership(cls(6, "Z", {{0}}, {{"0"}}, std::vector<int>{}), 6), InvalidInput);
  EXPECT_THROW(check_membership(cls(6, "Z", {{0}}, std::nullopt), 6), InvalidInput);
  EXPECT_THROW(check_membership(cls(6, "Z", {{0}}, {{"0"}}), 10 + 1), InvalidInput);
  EXPECT_THROW(check_membership(cls(2, "Z", {{0}}, {{"0"}}), 2), OutOfRange);
  EXPECT_THROW(check_membership(cls(7, "Z2", {{0}}, std::nullopt, std::vector<int>{0}, 2), 7), InvalidInput);
}

TEST(Membership, WarnsWhenNPlusTwoIsAPowerOfTwo) {
  EXPECT_FALSE(check_membership(cls(6, "Z", {{0}}, {{"0"}}), 6).warnings.empty());
  EXPECT_FALSE(check_membership(cls(14, "Z", {{0}}, {{"0"}}), 14).warnings.empty());
  EXPECT_TRUE(check_membership(cls(10, "Z", {{0}}, {{"0"}}), 10).warnings.empty());
  EXPECT_EQ(enumerate_classes(parse_group("Z"), 6, 0).warnings.size(), 1u);
}

TEST(Enumerate, Examples) {
  for (int n = 4; n < 12; ++n) EXPECT_EQ(enumerate_classes(AbelianGroup(), n, 0).count(), 1u) << n;
  EXPECT_EQ(enumerate_classes(parse_group("Z2"), 8, 0).count(), 4u);
  const auto z = enumerate_classes(parse_group("Z"), 10, 0);
  ASSERT_EQ(z.count(), 3u);
  std::vector<QZValue> values;
  for (const auto& c : z.representatives) {
    EXPECT_EQ(c.data.mu, (Matrix{{0}}));
    values.push_back((*c.data.phi)[0]);
  }
  EXPECT_EQ(values, (std::vector<QZValue>{QZValue(0, 1), QZValue(1, 4), QZValue(1, 2)}));
}

TEST(Enumerate, CountsMatchBruteForceOracleForEvenN) {
  for (const char* text : {"0", "Z2", "Z", "Z4", "Z2^2", "Z + Z2", "Z4 + Z2", "Z8"}) {
    const auto g = parse_group(text);
    for (int n : {8, 10}) {
      EXPECT_EQ(enumerate_classes(g, n, 0).count(), oracle::count_even_classes(stand_in(g), n % 4))
          << text << " n=" << n;
    }
  }
}

TEST(Enumerate, RepresentativesArePairwiseDistinctAndCoverEveryMember) {
  for (const char* text : {"Z", "Z2", "Z4 + Z2", "Z + Z2", "Z2^2", "Z8 + Z2"}) {
    const auto g = parse_group(text);
    for (int n = 8; n < 12; ++n)
      for (int delta : {0, 1}) {
        const auto e = enumerate_classes(g, n, delta);
        for (const auto& r : e.representatives) EXPECT_TRUE(check_membership(r, n).member);
        for (std::size_t i = 0; i < e.count(); ++i)
          for (std::size_t j = i + 1; j < e.count(); ++j)
            EXPECT_FALSE(isometric(e.representatives[i].data, e.representatives[j].data)) << text;
        std::size_t members = 0;
        for (const auto& c : all_candidates(g, n, delta)) {
          if (!check_membership(c, n).member) continue;
          ++members;
          int hits = 0;
          for (const auto& r : e.representatives) hits += isometric(c.data, r.data);
          EXPECT_EQ(hits, 1) << text << " n=" << n;
        }
        EXPECT_EQ(members, e.members);
        if (n % 2 == 0) break;
      }
  }
}

TEST(Enumerate, MembershipIsIsometryInvariant) {
  for (const char* text : {"Z + Z2", "Z4 + Z2", "Z8 + Z2", "Z2^2", "Z + Z4"}) {
    const auto g = parse_group(text);
    const auto autos = automorphisms(g);
    for (int n = 8; n < 12; ++n)
      for (int delta : {0, 1})
        for (const auto& c : all_candidates(g, n, delta)) {
          const bool member = check_membership(c, n).member;
          for (const auto& w : autos)
            EXPECT_EQ(check_membership({c.n_mod_4, delta, pullback(c.data, w)}, n).member, member) << text;
        }
  }
}

TEST(Enumerate, DeltaIrrelevantWithoutOrderTwoTorsion) {
  for (const char* text : {"Z", "Z4", "Z + Z4"})
    for (int n : {9, 11}) {
      const auto g = parse_group(text);
      EXPECT_EQ(enumerate_classes(g, n, 0).count(), enumerate_classes(g, n, 1).count()) << text << " n=" << n;
    }
}

TEST(Enumerate, IsDeterministic) {
  const auto g = parse_group("Z4 + Z2");
  for (int n = 8; n < 12; ++n) {
    const auto a = enumerate_classes(g, n, 1);
    const auto b = enumerate_classes(g, n, 1);
    EXPECT_EQ(a.representatives, b.representatives);
    EXPECT_EQ(report_text(a), report_text(b));
  }
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_classes(parse_group("Z"), 3, 0), OutOfRange);
  EXPECT_THROW(enumerate_classes(parse_group("Z"), 8, 2), InvalidInput);
  EXPECT_THROW(enumerate_classes(parse_group("Z^8"), 8, 0), SizeLimitError);
  EXPECT_THROW(enumerate_classes(parse_group("Z^3"), 8, 0, 16), SizeLimitError);
}

TEST(Report, TextAndJson) {
  const auto e = enumerate_classes(parse_group("Z2"), 8, 0);
  const auto text = report_text(e);
  EXPECT_NE(text.find("count: 4"), std::string::npos);
  EXPECT_NE(text.find("delta: 0"), std::string::npos);
  EXPECT_NE(text.find("Kervaire"), std::string::npos);
  const auto j = report_json(e);
  EXPECT_EQ(j["count"], 4);
  EXPECT_EQ(j["n_mod_4"], 0);
  EXPECT_EQ(j["delta"], 0);
  ASSERT_EQ(j["classes"].size(), 4u);
  for (const auto& c : j["classes"]) {
    const Triple t = triple_from_json(c);
    EXPECT_EQ(t.group, parse_group("Z2"));
  }
  EXPECT_EQ(report_json(enumerate_classes(AbelianGroup(), 7, 1))["count"], 1);
  EXPECT_EQ(report_json(enumerate_classes(parse_group("Z"), 10, 0))["count"], 3);
}
