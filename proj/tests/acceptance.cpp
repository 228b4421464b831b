// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hdaforge/determinize.hpp"
#include "hdaforge/fixtures.hpp"
#include "hdaforge/io.hpp"
#include "hdaforge/ipomset_oracle.hpp"
#include "hdaforge/kleene.hpp"
#include "hdaforge/translate.hpp"
#include "support/enumerate.hpp"
#include "support/random.hpp"
#include "support/seed.hpp"

using namespace hdaforge;
namespace fx = hdaforge::fixtures;

namespace {

// Collects failures for one criterion; checks counts how much was examined.
struct Check {
  int checks = 0;
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

bool same_language(const BoundedLanguage& a, const BoundedLanguage& b) { return compare_languages(a, b).equal; }

CanonicalForm cf(const char* text) { return canon(parse_ipomset(text)); }

std::vector<Complex> random_hdas(int n, int offset) {
  testkit::Rng rng(testkit::seed() + offset);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(testkit::random_hda(rng));
  return out;
}

std::vector<Complex> random_phdas(int n, int offset, int max_cells = 1000) {
  testkit::Rng rng(testkit::seed() + offset);
  std::vector<Complex> out;
  while (int(out.size()) < n) {
    Complex X = testkit::random_phda(rng);
    if (X.size() <= max_cells) out.push_back(std::move(X));
  }
  return out;
}

std::vector<PAutomaton> random_gstas(int n, int offset) {
  testkit::Rng rng(testkit::seed() + offset);
  std::vector<PAutomaton> out;
  for (int i = 0; i < n; ++i) out.push_back(testkit::random_gsta(rng));
  return out;
}

// ---------------------------------------------------------------- 1

void separation(Check& c) {
  const std::map<std::string, std::string> expected = {
      {"fig9", "HDA iHDA spHDA srHDA pHDA rHDA"},
      {"fig10", "iHDA spHDA srHDA pHDA rHDA"},
      {"fig11", "spHDA srHDA pHDA rHDA"},
      {"fig12", "pHDA rHDA"},
      {"fig13", "srHDA rHDA"},
      {"fig14", "rHDA"},
      {"fig16", "spHDA srHDA pHDA rHDA coneHDA"},
  };
  for (const auto& [name, classes] : expected) {
    const std::string got = classify_string(fx::complexes().at(name)());
    c.expect(got == classes, name + " classified as '" + got + "'");
  }
  const Complex image = rhda_image(fx::fig15());
  c.expect(!violations(image, Variant::rHDA).empty(), "fig15 image passes the rHDA check");
}

// ---------------------------------------------------------------- 2

void sparse_decomposition(Check& c) {
  for (const Ipomset& p : testkit::all_ipomsets(4, {"a", "b"})) {
    const StepSequence s = sparse_decompose(p);
    const auto found = oracle::decompositions(p);
    bool ok = found.size() == 1 && CanonicalForm{found[0]} == CanonicalForm{s};
    for (std::size_t k = 1; k < s.size(); ++k) ok = ok && s[k].proper() && s[k].kind != s[k - 1].kind;
    ok = ok && oracle::isomorphic(compose(s), p) && canon(compose(s)) == canon(p);
    c.expect(ok, to_literal(p));
  }
  const std::string fig3 = CanonicalForm{sparse_decompose(parse_ipomset("[.a c b d. : 1<2 1<4 3<4]"))}.encoding();
  c.expect(fig3 == "S[a b|2];T[a b|1];S[c b|1];T[c b|2];S[c d|2];T[c d|1]", "fig3 factors " + fig3);
}

// ---------------------------------------------------------------- 3

void translations(Check& c) {
  const int k = 6;
  auto check_complex = [&](const std::string& what, const Complex& in, const Complex& out, Variant v) {
    c.expect(violations(out, v).empty(), what + ": output is not " + variant_name(v));
    c.expect(same_language(enumerate_language(in, k), enumerate_language(out, k)), what + ": language changed");
  };
  std::vector<std::pair<std::string, Complex>> hdas, all;
  int i = 0;
  for (Complex& X : random_hdas(30, 100)) hdas.emplace_back("random hda " + std::to_string(i++), std::move(X));
  for (const auto& [name, make] : fx::complexes()) {
    Complex X = make();
    if (violations(X, Variant::HDA).empty()) hdas.emplace_back(name, X);
    all.emplace_back(name, std::move(X));
  }
  i = 0;
  for (Complex& X : random_phdas(30, 101)) all.emplace_back("random phda " + std::to_string(i++), std::move(X));
  for (const auto& p : hdas) all.push_back(p);

  for (const auto& [name, X] : hdas) {
    const Complex I = hda_to_ihda(X), C = hda_to_cone(X);
    check_complex("hda_to_ihda " + name, X, I, Variant::iHDA);
    check_complex("hda_to_cone " + name, X, C, Variant::coneHDA);
    check_complex("ihda_to_sphda " + name, I, ihda_to_sphda(I), Variant::spHDA);
    check_complex("cone_to_sphda " + name, C, cone_to_sphda(C), Variant::spHDA);
  }
  for (const auto& [name, make] : fx::complexes()) {
    const Complex X = make();
    if (X.variant == Variant::iHDA && violations(X, Variant::iHDA).empty())
      check_complex("ihda_to_sphda " + name, X, ihda_to_sphda(X), Variant::spHDA);
    if (X.variant == Variant::coneHDA && violations(X, Variant::coneHDA).empty())
      check_complex("cone_to_sphda " + name, X, cone_to_sphda(X), Variant::spHDA);
  }
  for (const auto& [name, X] : all) {
    const PAutomaton A = st_of(X);
    c.expect(classify_automaton(A).st, "st_of " + name + ": not an ST-automaton");
    c.expect(same_language(enumerate_language(X, k), enumerate_language(A, k)), "st_of " + name + ": language changed");
    for (Variant v : all_variants) {
      if (!violations(X, X.variant).empty() || !included(X.variant, v) || X.variant == v) continue;
      check_complex("widen " + name + " to " + variant_name(v), X, widen(X, v), v);
    }
  }
  i = 0;
  std::vector<PAutomaton> gstas = random_gstas(30, 102);
  gstas.push_back(fx::fig15());
  for (const PAutomaton& G : gstas) {
    const std::string name = "gsta " + std::to_string(i++);
    const PAutomaton R = reduce(G);
    const auto L = enumerate_language(R, k);
    const Complex P = phda_of_gsta(R), C = cone_of_gsta(R);
    c.expect(violations(P, Variant::pHDA).empty(), "phda_of_gsta " + name + ": output is not pHDA");
    c.expect(same_language(L, enumerate_language(P, k)), "phda_of_gsta " + name + ": language changed");
    c.expect(violations(C, Variant::coneHDA).empty(), "cone_of_gsta " + name + ": output is not coneHDA");
    c.expect(same_language(L, enumerate_language(C, k)), "cone_of_gsta " + name + ": language changed");
  }
}

// ---------------------------------------------------------------- 4

bool lemma_counts(const BadCounts& before, const BadCounts& after) {
  auto at = [](const std::map<int, int>& m, int d) {
    auto it = m.find(d);
    return it == m.end() ? 0 : it->second;
  };
  // exactly one count drops by one; lower dimensions of that kind and the other kind stay
  auto fits = [&](const std::map<int, int>& b, const std::map<int, int>& a, const std::map<int, int>& ob,
                  const std::map<int, int>& oa) {
    if (ob != oa) return false;
    for (int n = 0; n <= max_events; ++n) {
      if (at(a, n) == at(b, n)) continue;
      if (at(a, n) != at(b, n) - 1) return false;
      for (int m = 0; m < n; ++m)
        if (at(a, m) != at(b, m)) return false;
      return true;
    }
    return false;
  };
  return fits(before.starters, after.starters, before.terminators, after.terminators) ||
         fits(before.terminators, after.terminators, before.starters, after.starters);
}

void reduction(Check& c) {
  int i = 0, eliminations = 0;
  for (const PAutomaton& G : random_gstas(30, 103)) {
    const std::string name = "gsta " + std::to_string(i++);
    const PAutomaton R = reduce(G);
    const AutomatonClass k = classify_automaton(R);
    c.expect(k.a && k.b && k.c && k.d && k.e && k.f && k.no_silent, name + ": not reduced");
    c.expect(same_language(enumerate_language(G, 6), enumerate_language(R, 6)), name + ": language changed");
    PAutomaton prev = reduce_ab(p_to_st(remove_silent(G)));
    eliminate_bad_transitions(prev, [&](const PAutomaton& next) {
      ++eliminations;
      c.expect(lemma_counts(bad_counts(prev), bad_counts(next)), name + ": bad-transition counts off");
      prev = next;
    });
  }
  c.expect(eliminations > 10, "too few eliminations exercised: " + std::to_string(eliminations));
}

// ---------------------------------------------------------------- 5

void kleene(Check& c) {
  testkit::Rng rng(testkit::seed() + 104);
  for (int i = 0; i < 50; ++i) {
    const RationalExpr e = testkit::random_expr(rng, 3, 2);
    c.expect(same_language(enumerate_language(compile(e), 8), eval_expr(e, 8)), "compile " + print(e));
  }
  for (const auto& [name, make] : fx::complexes()) {
    const Complex X = make();
    c.expect(lang_equiv(compile(extract(X)), X, 6).equal, "extraction round trip " + name);
  }
}

// ---------------------------------------------------------------- 6

void determinization(Check& c) {
  Complex X = fx::fig19();
  X.variant = Variant::spHDA;
  const Complex Y = det(X);
  c.expect(is_deterministic(Y).deterministic(), "det(fig19) is not deterministic");
  const FormSet want = {cf("ab"), cf("ba"), cf("a||b"), cf("abc")};
  c.expect(enumerate_language(Y, 8).forms == want, "det(fig19) language");
  c.expect(!enumerate_language(Y, 8).contains(cf("(a||b)c")), "det(fig19) accepts a||b then c");
  int i = 0;
  for (const Complex& P : random_phdas(30, 105, 10)) {
    const std::string name = "phda " + std::to_string(i++);
    const Complex D = det(P);
    c.expect(is_deterministic(D).deterministic(), name + ": not deterministic");
    c.expect(lang_equiv(P, D, 6).equal, name + ": language changed");
    for (const auto& [form, runs] : sparse_run_counts(D, 6)) c.expect(runs == 1, name + ": runs of " + to_literal(form));
    for (const Path& p : accepting_paths(D, 8)) c.expect(is_sparse(p), name + ": non-sparse accepting path");
  }
}

// ---------------------------------------------------------------- 7

void collapse(Check& c) {
  const int k = 6;
  for (const Complex& X : random_hdas(20, 106)) {
    const BoundedLanguage L = enumerate_language(X, k);
    FormSet closure;
    for (const auto& f : down_closure(L.forms))
      if (f.length() <= k) closure.insert(f);
    c.expect(closure == L.forms, "random total HDA language not closed");
  }
  Complex X = fx::fig12();
  X.add_bot("00");
  X.add_top("11");
  const BoundedLanguage L = enumerate_language(X, k);
  c.expect(L.contains(cf("a||b")), "fig12 does not accept a||b");
  const FormSet closure = down_closure(L.forms);
  c.expect(closure.size() > L.size() && closure.count(cf("ba")) && !L.contains(cf("ba")),
           "fig12 closure does not exceed the language");
}

// ---------------------------------------------------------------- 8

std::string seeded_run() {
  std::ostringstream out;
  testkit::Rng rng(testkit::seed() + 107);
  for (int i = 0; i < 5; ++i) {
    const Complex X = testkit::random_phda(rng);
    out << write_document(X) << write_document(det(X)) << write_document(enumerate_language(X, 6));
    const RationalExpr e = testkit::random_expr(rng);
    out << write_document(compile(e)) << print(extract(X));
    out << write_document(reduce(testkit::random_gsta(rng)));
  }
  return out.str();
}

void stability(Check& c) {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HDAFORGE_GOLDEN_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    c.expect(write_document(read_document(ss.str())) == ss.str(), entry.path().filename().string() + " changed");
  }
  c.expect(files > 0, "no golden files");
  for (const auto& [name, make] : fx::complexes()) {
    std::ifstream in(std::filesystem::path(HDAFORGE_GOLDEN_DIR) / (name + ".json"));
    std::stringstream ss;
    ss << in.rdbuf();
    c.expect(write_document(make()) == ss.str(), name + " differs from its golden file");
  }
  c.expect(seeded_run() == seeded_run(), "seeded run is not reproducible");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"separation matrix", separation},
      {"sparse decomposition", sparse_decomposition},
      {"translation battery", translations},
      {"reduction pipeline", reduction},
      {"Kleene compile and extract", kleene},
      {"determinization", determinization},
      {"two-class collapse", collapse},
      {"format stability", stability},
  };
  int failed = 0;
  std::cout << "seed " << testkit::seed() << "\n";
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    Check c;
    try {
      criteria[n].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " " << n + 1 << " " << criteria[n].first << " (" << c.checks
              << " checks)\n";
    for (const auto& f : c.failures) std::cout << "     " << f << "\n";
  }
  return failed ? 1 : 0;
}
