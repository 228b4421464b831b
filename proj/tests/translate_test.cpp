#include <gtest/gtest.h>

#include "hdaforge/fixtures.hpp"
#include "hdaforge/language.hpp"
#include "hdaforge/translate.hpp"
#include "support/random.hpp"
#include "support/seed.hpp"

using namespace hdaforge;
namespace fx = hdaforge::fixtures;

namespace {

CanonicalForm starter(Conclist u, EventSet a) { return step_form(Step::make_starter(std::move(u), a)); }
CanonicalForm terminator(Conclist u, EventSet b) { return step_form(Step::make_terminator(std::move(u), b)); }

std::set<std::tuple<std::string, EventSet, EventSet, std::string>> table(const Complex& X) {
  std::set<std::tuple<std::string, EventSet, EventSet, std::string>> out;
  for (const auto& [k, ts] : X.faces())
    for (int z : ts) out.emplace(X.cell(k.cell).id, k.A, k.B, X.cell(z).id);
  return out;
}

// Accepting transition sequences of at most m edges.
int automaton_paths(const PAutomaton& A, int m) {
  int count = 0;
  auto dfs = [&](auto&& self, int q, int left) -> void {
    if (A.top().count(q)) ++count;
    if (!left) return;
    for (int e : A.outgoing(q)) self(self, A.edges()[e].to, left - 1);
  };
  for (int q : A.bot()) dfs(dfs, q, m);
  return count;
}

// The one-transition automaton behind the cone figure: ε -[a ; b•]-> b.
PAutomaton cone_transition() {
  PAutomaton A;
  A.add_state("p", {});
  A.add_state("q", {"b"});
  A.add_edge("e", "p", "q", discrete_form({"a", "b"}, 0, 0b10));
  A.add_bot("p");
  A.add_top("q");
  return A;
}

PAutomaton random_reduced(testkit::Rng& rng) { return reduce(testkit::random_gsta(rng)); }

}  // namespace

TEST(Widen, InclusionsKeepTheTable) {
  Complex X = fx::fig19();
  Complex Y = widen(X, Variant::spHDA);
  EXPECT_EQ(table(X), table(Y));
  EXPECT_TRUE(violations(Y, Variant::spHDA).empty());
  EXPECT_TRUE(violations(widen(Y, Variant::rHDA), Variant::rHDA).empty());
}

TEST(Widen, RefusesToStrengthen) {
  try {
    widen(fx::fig12(), Variant::HDA);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_an_inclusion_edge);
  }
  EXPECT_THROW(widen(fx::fig10(), Variant::HDA), error);
}

TEST(HdaToIhda, LoneVertex) {
  Complex X;
  X.add_cell("v", {});
  X.add_bot("v");
  X.add_top("v");
  Complex Y = hda_to_ihda(X);
  ASSERT_EQ(Y.size(), 1);
  EXPECT_EQ(Y.cell(0).id, "v(;)");
  EXPECT_TRUE(Y.bot().count(0) && Y.top().count(0));
}

TEST(HdaToIhda, SingleEdgeKeepsItsWord) {
  Complex X = fx::single_edge();
  Complex Y = hda_to_ihda(X);
  EXPECT_TRUE(violations(Y, Variant::iHDA).empty());
  EXPECT_EQ(enumerate_language(Y, 6).forms, (FormSet{canon(parse_ipomset("a"))}));
}

TEST(HdaToIhda, Fig9LeftVerticesLeaveNoTrace) {
  Complex Y = trim(hda_to_ihda(fx::fig9()));
  EXPECT_TRUE(violations(Y, Variant::iHDA).empty());
  for (const Cell& c : Y.cells())
    for (auto gone : {"00(", "01(", "l("}) EXPECT_NE(c.id.rfind(gone, 0), 0u) << c.id;
  EXPECT_TRUE(lang_equiv(fx::fig9(), Y, 6).equal);
}

TEST(HdaToCone, Fig9IsAConeHda) {
  Complex Y = hda_to_cone(fx::fig9());
  EXPECT_TRUE(violations(Y, Variant::coneHDA).empty());
  EXPECT_TRUE(lang_equiv(fx::fig9(), Y, 6).equal);
}

TEST(IhdaToSphda, Fig10KeepsItsMissingCorner) {
  Complex Y = fx::fig10();
  Complex X = ihda_to_sphda(Y);
  EXPECT_TRUE(violations(X, Variant::spHDA).empty());
  EXPECT_EQ(table(X), table(Y));
  EXPECT_FALSE(X.contains("00"));
  EXPECT_TRUE(X.face("x", 0b01, 0).empty());
}

TEST(IhdaToSphda, EmptyInterfacesGiveThePlainComplex) {
  Complex Y = fx::full_square();
  Y.variant = Variant::iHDA;
  for (int x = 0; x < Y.size(); ++x) Y.set_iface(x, Interface{});
  ASSERT_TRUE(violations(Y, Variant::iHDA).empty());
  Complex X = ihda_to_sphda(Y);
  EXPECT_EQ(table(X), table(widen(fx::full_square(), Variant::spHDA)));
  EXPECT_EQ(X.variant, Variant::spHDA);
}

TEST(ConeToSphda, Fig16) {
  Complex X = cone_to_sphda(fx::fig16());
  EXPECT_TRUE(violations(X, Variant::spHDA).empty());
  EXPECT_FALSE(X.has_key(X.index("y"), 0b01, 0b10));
  EXPECT_TRUE(lang_equiv(fx::fig16(), X, 6).equal);
}

TEST(ConeToSphda, FacelessConeCell) {
  Complex Y(Variant::coneHDA);
  Y.add_cell("c", {"a"}, Interface{0, 0});
  Complex X = cone_to_sphda(Y);
  EXPECT_EQ(X.size(), 1);
  EXPECT_TRUE(X.faces().empty());
}

TEST(StOf, SingleEdge) {
  PAutomaton A = st_of(fx::single_edge());
  EXPECT_EQ(A.num_states(), 3);
  ASSERT_EQ(A.num_edges(), 2);
  std::multiset<CanonicalForm> labels;
  for (const AEdge& e : A.edges()) labels.insert(e.label);
  EXPECT_EQ(labels, (std::multiset<CanonicalForm>{starter({"a"}, 1), terminator({"a"}, 1)}));
  EXPECT_TRUE(classify_automaton(A).st);
}

TEST(StOf, IsolatedVertex) {
  Complex X;
  X.add_cell("v", {});
  PAutomaton A = st_of(X);
  EXPECT_EQ(A.num_states(), 1);
  EXPECT_EQ(A.num_edges(), 0);
}

TEST(StOf, Fig14CornerPairBothStartTheSquare) {
  Complex X = fx::fig14();
  PAutomaton A = st_of(X);
  std::set<std::string> from;
  for (const AEdge& e : A.edges())
    if (e.label == starter({"a", "b"}, 0b11) && A.states()[e.to].id == "x") from.insert(A.states()[e.from].id);
  EXPECT_EQ(from, (std::set<std::string>{"u", "v"}));
}

TEST(StOf, PathsAndLanguagesCorrespond) {
  testkit::Rng rng(testkit::seed() + 30);
  std::vector<Complex> inputs;
  for (const auto& [name, make] : fx::complexes()) inputs.push_back(make());
  for (int i = 0; i < 20; ++i) inputs.push_back(i % 2 ? testkit::random_hda(rng) : testkit::random_phda(rng));
  for (const Complex& X : inputs) {
    PAutomaton A = st_of(X);
    EXPECT_TRUE(lang_equiv(X, A, 6).equal);
    for (int m = 0; m <= 5; ++m) EXPECT_EQ(int(accepting_paths(X, m).size()), automaton_paths(A, m));
  }
}

TEST(RhdaImage, Fig15HasNoComposite) {
  Complex X = rhda_image(fx::fig15());
  auto vs = violations(X, Variant::rHDA);
  ASSERT_FALSE(vs.empty());
  EXPECT_EQ(vs.front().rule, "lax");
}

TEST(RhdaImage, RoundTripThroughStOf) {
  testkit::Rng rng(testkit::seed() + 31);
  for (int i = 0; i < 20; ++i) {
    Complex X = testkit::random_phda(rng);
    Complex Y = rhda_image(st_of(X));
    EXPECT_TRUE(violations(Y, Variant::rHDA).empty()) << i;
    EXPECT_TRUE(lang_equiv(X, Y, 6).equal) << i;
  }
}

TEST(PhdaOfGsta, StarterIntoAcceptingState) {
  PAutomaton A;
  A.add_state("p", {});
  A.add_state("q", {"a"});
  A.add_edge("e", "p", "q", starter({"a"}, 1));
  A.add_bot("p");
  A.add_top("q");
  ASSERT_TRUE(classify_automaton(A).reduced());
  Complex X = phda_of_gsta(A);
  EXPECT_EQ(X.size(), 2);
  EXPECT_TRUE(X.contains("e"));
  EXPECT_FALSE(X.contains("q"));
  EXPECT_TRUE(lang_equiv(A, X, 6).equal);
}

TEST(PhdaOfGsta, EmptyAndUnreducedInputs) {
  EXPECT_EQ(phda_of_gsta(PAutomaton{}).size(), 0);
  try {
    phda_of_gsta(fx::fig15());
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::not_reduced);
  }
}

TEST(PhdaOfGsta, RandomReducedAutomata) {
  testkit::Rng rng(testkit::seed() + 32);
  int nonempty = 0;
  for (int i = 0; i < 30; ++i) {
    PAutomaton A = random_reduced(rng);
    if (enumerate_language(A, 6).size() > 1) ++nonempty;
    Complex X = phda_of_gsta(A);
    EXPECT_TRUE(violations(X, Variant::pHDA).empty()) << i;
    EXPECT_TRUE(lang_equiv(A, X, 6).equal) << i;
    // No two face maps compose.
    for (const auto& [k, ts] : X.faces())
      for (int z : ts)
        for (const auto& [k2, t2] : X.faces()) EXPECT_NE(k2.cell, z) << i;
  }
  EXPECT_GT(nonempty, 5);
}

TEST(ConeOfGsta, ReproducesTheConeFigure) {
  Complex X = cone_of_gsta(cone_transition());
  EXPECT_EQ(X.size(), fx::fig16().size());
  EXPECT_TRUE(violations(X, Variant::coneHDA).empty());
  EXPECT_EQ(classify_string(X), classify_string(fx::fig16()));
  EXPECT_TRUE(lang_equiv(X, fx::fig16(), 6).equal);
  EXPECT_TRUE(lang_equiv(X, cone_transition(), 6).equal);
}

TEST(ConeOfGsta, TerminatorFromStartMakesTheMiddleCellInitial) {
  PAutomaton A;
  A.add_state("p", {"a"});
  A.add_state("q", {});
  A.add_edge("e", "p", "q", terminator({"a"}, 1));
  A.add_bot("p");
  A.add_top("q");
  Complex X = cone_of_gsta(A);
  EXPECT_FALSE(X.contains("p"));
  EXPECT_TRUE(X.bot().count(X.index("e")));
  EXPECT_TRUE(lang_equiv(A, X, 6).equal);
}

TEST(ConeOfGsta, RandomReducedAutomata) {
  testkit::Rng rng(testkit::seed() + 33);
  int nonempty = 0;
  for (int i = 0; i < 30; ++i) {
    PAutomaton A = random_reduced(rng);
    if (enumerate_language(A, 6).size() > 1) ++nonempty;
    Complex X = cone_of_gsta(A);
    EXPECT_TRUE(violations(X, Variant::coneHDA).empty()) << i;
    Complex S = cone_to_sphda(X);
    EXPECT_TRUE(violations(S, Variant::spHDA).empty()) << i;
    EXPECT_TRUE(lang_equiv(A, X, 6).equal) << i;
    EXPECT_TRUE(lang_equiv(X, S, 6).equal) << i;
  }
  EXPECT_GT(nonempty, 5);
}

TEST(TranslateProperty, ResolutionsPreserveLanguage) {
  testkit::Rng rng(testkit::seed() + 34);
  for (int i = 0; i < 20; ++i) {
    Complex X = testkit::random_hda(rng);
    Complex I = hda_to_ihda(X);
    Complex C = hda_to_cone(X);
    EXPECT_TRUE(violations(I, Variant::iHDA).empty()) << i;
    EXPECT_TRUE(violations(C, Variant::coneHDA).empty()) << i;
    Complex IS = ihda_to_sphda(I), CS = cone_to_sphda(C);
    EXPECT_TRUE(violations(IS, Variant::spHDA).empty()) << i;
    EXPECT_TRUE(violations(CS, Variant::spHDA).empty()) << i;
    const auto L = enumerate_language(X, 6).forms;
    for (const Complex* Y : {&I, &C, &IS, &CS}) EXPECT_EQ(enumerate_language(*Y, 6).forms, L) << i;
  }
}
