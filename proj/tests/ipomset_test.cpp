#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hdaforge/ipomset.hpp"
#include "hdaforge/ipomset_oracle.hpp"
#include "hdaforge/literal.hpp"
#include "support/enumerate.hpp"
#include "support/seed.hpp"

using namespace hdaforge;

namespace {

// •a, b, c, d• with a<c, a<d, b<d; event order a⋏b, c⋏b, c⋏d.
Ipomset fig3() { return parse_ipomset("[.a c b d. : 1<2 1<4 3<4]"); }

std::string encode(const StepSequence& s) { return CanonicalForm{s}.encoding(); }

Ipomset permuted(const Ipomset& p, const std::vector<int>& perm) {
  Ipomset q = p;
  const int n = p.size();
  for (int i = 0; i < n; ++i) {
    q.labels[perm[i]] = p.labels[i];
    q.prec[perm[i]] = 0;
    q.evord[perm[i]] = 0;
  }
  q.source = q.target = 0;
  for (int i = 0; i < n; ++i) {
    for_each_bit(p.prec[i], [&](int j) { q.prec[perm[i]] |= bit(perm[j]); });
    for_each_bit(p.evord[i], [&](int j) { q.evord[perm[i]] |= bit(perm[j]); });
    if (has(p.source, i)) q.source |= bit(perm[i]);
    if (has(p.target, i)) q.target |= bit(perm[i]);
  }
  return q;
}

}  // namespace

TEST(Ipomset, Fig3DecomposesIntoTheSixPrintedFactors) {
  EXPECT_EQ(encode(sparse_decompose(fig3())),
            "S[a b|2];T[a b|1];S[c b|1];T[c b|2];S[c d|2];T[c d|1]");
}

TEST(Ipomset, Fig3FactorsFoldBackToTheIpomset) {
  StepSequence factors = {
      Step::make_starter({"a", "b"}, 0b10),   Step::make_terminator({"a", "b"}, 0b01),
      Step::make_starter({"c", "b"}, 0b01),   Step::make_terminator({"c", "b"}, 0b10),
      Step::make_starter({"c", "d"}, 0b10),   Step::make_terminator({"c", "d"}, 0b01),
  };
  Ipomset folded = compose(factors);
  EXPECT_TRUE(oracle::isomorphic(folded, fig3()));
  EXPECT_EQ(canon(folded), canon(fig3()));
}

TEST(Ipomset, Fig3OracleFindsExactlyThePrintedSequence) {
  auto all = oracle::decompositions(fig3());
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(encode(all[0]), encode(sparse_decompose(fig3())));
}

TEST(Ipomset, GlueWithEmptyInterfacesForcesPrecedence) {
  Ipomset a = parse_ipomset("[a]");
  Ipomset b = parse_ipomset("[b]");
  Ipomset ab = glue(a, b);
  ASSERT_EQ(ab.size(), 2);
  EXPECT_TRUE(ab.before(0, 1));
  EXPECT_EQ(to_literal(ab), "[a b : 1<2]");
  EXPECT_EQ(canon(ab), canon(parse_ipomset("ab")));
}

TEST(Ipomset, GlueWithIdentityIsNeutral) {
  Ipomset p = fig3();
  Ipomset id = Ipomset::identity(conclist_of(p, p.target));
  EXPECT_EQ(canon(glue(p, id)), canon(p));
  Ipomset id_s = Ipomset::identity(conclist_of(p, p.source));
  EXPECT_EQ(canon(glue(id_s, p)), canon(p));
}

TEST(Ipomset, GlueRejectsMismatchedInterfaces) {
  Ipomset p = parse_ipomset("[a.]");
  Ipomset q = parse_ipomset("[.b]");
  try {
    glue(p, q);
    FAIL() << "expected InterfaceMismatch";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::interface_mismatch);
  }
}

TEST(Ipomset, CanonOfIdentityIsSingleIdentityFactor) {
  CanonicalForm c = canon(Ipomset::identity({"a", "b"}));
  EXPECT_EQ(c.encoding(), "I[a b]");
  EXPECT_TRUE(c.is_identity());
  EXPECT_EQ(canon(Ipomset{}).encoding(), "I[]");
}

TEST(Ipomset, Fig2LeftAndMiddleHaveDifferentCanons) {
  // Left: •a < c < b•.  Middle: a<b, c<b, a ⋏ c.
  Ipomset left = parse_ipomset("[.a c b. : 1<2 1<3 2<3]");
  Ipomset middle = parse_ipomset("[.a c b. : 1<3 2<3]");
  EXPECT_NE(canon(left), canon(middle));
  EXPECT_TRUE(subsumes(left, middle));
  EXPECT_FALSE(subsumes(middle, left));
}

TEST(Ipomset, CanonIsInvariantUnderAllRelabelingsOfFig3) {
  Ipomset p = fig3();
  std::vector<int> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  CanonicalForm expected = canon(p);
  int count = 0;
  do {
    Ipomset q = permuted(p, perm);
    ASSERT_TRUE(oracle::isomorphic(p, q));
    EXPECT_EQ(canon(q), expected);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 24);
}

TEST(Ipomset, ParallelPairDecomposesIntoOneStarterOneTerminator) {
  Ipomset p = parse_ipomset("a||b");
  auto oracle_result = oracle::decompositions(p);
  ASSERT_EQ(oracle_result.size(), 1u);
  EXPECT_EQ(encode(oracle_result[0]), "S[a b|1,2];T[a b|1,2]");
  EXPECT_EQ(encode(sparse_decompose(p)), "S[a b|1,2];T[a b|1,2]");
}

TEST(Ipomset, WordAbHasExactlyOneSparseSequenceOfLengthFour) {
  auto all = oracle::decompositions(parse_ipomset("ab"));
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].size(), 4u);
  EXPECT_EQ(encode(all[0]), "S[a|1];T[a|1];S[b|1];T[b|1]");
}

TEST(Ipomset, ComposeOfEmptySequenceIsIdentity) {
  EXPECT_EQ(canon(compose({}, {"a", "b"})), canon(Ipomset::identity({"a", "b"})));
}

TEST(Ipomset, ComposeReportsFailingPosition) {
  StepSequence bad = {Step::make_starter({"a"}, 1), Step::make_starter({"b", "c"}, 1)};
  try {
    compose(bad);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::interface_mismatch);
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos);
  }
}

TEST(Ipomset, ComposeOfFourStepsIsTheWordAb) {
  StepSequence s = {Step::make_starter({"a"}, 1), Step::make_terminator({"a"}, 1),
                    Step::make_starter({"b"}, 1), Step::make_terminator({"b"}, 1)};
  EXPECT_TRUE(oracle::isomorphic(compose(s), parse_ipomset("[a b : 1<2]")));
}

TEST(Ipomset, NonIntervalOrderIsRejected) {
  // a<b, c<d, nothing else: the 2+2.
  try {
    parse_ipomset("[a c b d : 1<3 2<4]");
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_interval);
  }
}

TEST(Ipomset, SubsumptionExamples) {
  EXPECT_TRUE(subsumes(parse_ipomset("ab"), parse_ipomset("a||b")));
  EXPECT_FALSE(subsumes(parse_ipomset("a||b"), parse_ipomset("ab")));
  EXPECT_TRUE(subsumes(fig3(), fig3()));
}

TEST(Ipomset, DownClosureExamples) {
  auto lits = [](const std::set<CanonicalForm>& s) {
    std::set<std::string> out;
    for (auto& c : s) out.insert(to_literal(c));
    return out;
  };
  EXPECT_EQ(lits(down_closure(std::vector{parse_ipomset("ab")})), (std::set<std::string>{"[a b : 1<2]"}));
  EXPECT_EQ(lits(down_closure(std::vector{parse_ipomset("a||b")})),
            (std::set<std::string>{"[a b]", "[a b : 1<2]", "[b a : 1<2]"}));
  EXPECT_EQ(lits(down_closure(std::vector{Ipomset::identity({"a", "b"})})),
            (std::set<std::string>{"[.a. .b.]"}));
}

TEST(Ipomset, LiteralRoundTripsThroughCanon) {
  for (const auto& p : testkit::all_ipomsets(3, {"a", "b"})) {
    std::string lit = to_literal(p);
    Ipomset back = parse_ipomset(lit);
    EXPECT_TRUE(oracle::isomorphic(back, p)) << lit;
    EXPECT_EQ(to_literal(back), lit);
  }
}

TEST(IpomsetProperty, ExhaustiveSparseDecompositionMatchesOracle) {
  auto all = testkit::all_ipomsets(4, {"a", "b"});
  ASSERT_GT(all.size(), 100u);
  for (const auto& p : all) {
    StepSequence s = sparse_decompose(p);
    auto found = oracle::decompositions(p);
    ASSERT_EQ(found.size(), 1u) << to_literal(p);
    EXPECT_EQ(encode(found[0]), encode(s)) << to_literal(p);
    if (s.size() > 1)
      for (std::size_t k = 0; k < s.size(); ++k) {
        EXPECT_TRUE(s[k].proper());
        if (k) EXPECT_NE(s[k].kind, s[k - 1].kind);
      }
    EXPECT_TRUE(oracle::isomorphic(compose(s), p));
  }
}

TEST(IpomsetProperty, CanonConcatAgreesWithGlue) {
  auto all = testkit::all_ipomsets(3, {"a", "b"});
  for (const auto& p : all)
    for (const auto& q : all) {
      if (conclist_of(p, p.target) != conclist_of(q, q.source)) continue;
      Ipomset g = glue(p, q);
      auto c = concat(canon(p), canon(q));
      ASSERT_TRUE(c.has_value());
      EXPECT_EQ(*c, canon(g));
    }
}

TEST(IpomsetProperty, GlueIsAssociativeOnRandomTriples) {
  std::mt19937_64 rng(testkit::seed());
  auto all = testkit::all_ipomsets(4, {"a", "b"});
  int tested = 0;
  for (int trial = 0; trial < 20000 && tested < 300; ++trial) {
    const auto& p = all[rng() % all.size()];
    const auto& q = all[rng() % all.size()];
    const auto& r = all[rng() % all.size()];
    if (conclist_of(p, p.target) != conclist_of(q, q.source)) continue;
    if (conclist_of(q, q.target) != conclist_of(r, r.source)) continue;
    if (p.size() + q.size() + r.size() > 12) continue;
    EXPECT_EQ(canon(glue(glue(p, q), r)), canon(glue(p, glue(q, r))));
    ++tested;
  }
  EXPECT_GT(tested, 50);
}

TEST(IpomsetProperty, SubsumptionIsAPartialOrderUpToIsomorphism) {
  auto all = testkit::all_ipomsets(3, {"a", "b"});
  const std::size_t n = all.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = subsumes(all[i], all[j]);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_TRUE(rel[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && rel[i][j] && rel[j][i]) ADD_FAILURE() << "antisymmetry: " << to_literal(all[i]);
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (rel[j][k] && !rel[i][k]) ADD_FAILURE() << "transitivity";
    }
  }
}

TEST(IpomsetProperty, DownClosureIsAClosureOperator) {
  auto all = testkit::all_ipomsets(3, {"a", "b"});
  std::mt19937_64 rng(testkit::seed());
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Ipomset> small, big;
    for (const auto& p : all) {
      auto r = rng() % 6;
      if (r == 0) small.push_back(p);
      if (r <= 1) big.push_back(p);
    }
    auto cs = down_closure(small);
    auto cb = down_closure(big);
    for (const auto& p : small) EXPECT_TRUE(cs.count(canon(p)));  // extensive
    for (const auto& c : cs) EXPECT_TRUE(cb.count(c));              // monotone
    EXPECT_EQ(down_closure(cs), cs);                                // idempotent
    // membership agrees with the subsumption relation
    for (const auto& p : all) {
      bool below = std::any_of(small.begin(), small.end(), [&](auto& q) { return subsumes(p, q); });
      EXPECT_EQ(below, cs.count(canon(p)) == 1);
    }
  }
}
