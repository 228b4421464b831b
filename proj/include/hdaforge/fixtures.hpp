#pragma once

// The figure complexes used throughout the tests and by `hda-forge fixture`.
// Squares are labelled [a b]: a runs horizontally, b vertically. Vertex ids
// give the (a,b) position, edges are l/r (b-edges) and d/t (a-edges).
// The separating examples (Figs. 10-14) have no initial or accepting cells.

#include <functional>
#include <map>

#include "complex.hpp"
#include "pautomaton.hpp"

namespace hdaforge::fixtures {

namespace detail {

constexpr EventSet A1 = 0b01, B2 = 0b10, AB = 0b11;

struct Builder {
  Complex X;
  explicit Builder(Variant v) : X(v) {}

  Builder& vertex(const std::string& id) {
    X.add_cell(id, {});
    return *this;
  }
  /// Edge labelled l; empty endpoint ids leave that face undefined.
  Builder& edge(const std::string& id, const Label& l, const std::string& from, const std::string& to) {
    int e = X.add_cell(id, {l});
    if (!from.empty()) X.add_face(e, 1, 0, X.index(from));
    if (!to.empty()) X.add_face(e, 0, 1, X.index(to));
    return *this;
  }
  /// Square [a b] with its four edge faces (empty = undefined).
  Builder& square(const std::string& id, const std::string& l, const std::string& r, const std::string& d,
                  const std::string& t) {
    int x = X.add_cell(id, {"a", "b"});
    if (!l.empty()) X.add_face(x, A1, 0, X.index(l));
    if (!r.empty()) X.add_face(x, 0, A1, X.index(r));
    if (!d.empty()) X.add_face(x, B2, 0, X.index(d));
    if (!t.empty()) X.add_face(x, 0, B2, X.index(t));
    return *this;
  }
  Builder& face(const std::string& x, EventSet A, EventSet B, const std::string& z) {
    X.add_face(x, A, B, z);
    return *this;
  }
  Builder& bot(std::initializer_list<const char*> ids) {
    for (auto id : ids) X.add_bot(id);
    return *this;
  }
  Builder& top(std::initializer_list<const char*> ids) {
    for (auto id : ids) X.add_top(id);
    return *this;
  }
  Complex done() { return saturate(X); }
};

inline Builder full_square_frame(Variant v) {
  Builder b(v);
  b.vertex("00").vertex("10").vertex("01").vertex("11");
  b.edge("l", "b", "00", "01").edge("r", "b", "10", "11").edge("d", "a", "00", "10").edge("t", "a", "01", "11");
  return b;
}

}  // namespace detail

/// Fully faced square, bot = 00, top = 11.
inline Complex full_square() {
  auto b = detail::full_square_frame(Variant::HDA);
  return b.square("x", "l", "r", "d", "t").bot({"00"}).top({"11"}).done();
}

/// Single a-edge from an initial to an accepting vertex.
inline Complex single_edge(const Label& a = "a") {
  detail::Builder b(Variant::HDA);
  return b.vertex("v0").vertex("v1").edge("e", a, "v0", "v1").bot({"v0"}).top({"v1"}).done();
}

/// Petri net semantics: the top edge has no a-start, an extra a-edge leaves 01.
inline Complex fig5() {
  detail::Builder b(Variant::pHDA);
  b.vertex("00").vertex("10").vertex("01").vertex("11").vertex("02");
  b.edge("l", "b", "00", "01").edge("r", "b", "10", "11").edge("d", "a", "00", "10").edge("t", "a", "", "11");
  b.edge("e", "a", "01", "02");
  b.square("x", "l", "r", "d", "t");
  return b.bot({"00"}).top({"11", "02"}).done();
}

/// Full square entered along its bottom edge.
inline Complex fig9() {
  auto b = detail::full_square_frame(Variant::HDA);
  return b.square("x", "l", "r", "d", "t").bot({"d"}).top({"11"}).done();
}

/// iHDA square with a in the starting interface: no lower a-faces.
inline Complex fig10() {
  Complex X(Variant::iHDA);
  int x = X.add_cell("x", {"a", "b"}, Interface{0b01, 0});
  int d = X.add_cell("d", {"a"}, Interface{0b1, 0});
  int r = X.add_cell("r", {"b"}, Interface{0, 0});
  int t = X.add_cell("t", {"a"}, Interface{0b1, 0});
  int v10 = X.add_cell("10", {}, Interface{});
  int v11 = X.add_cell("11", {}, Interface{});
  X.add_face(x, 0b10, 0, d);
  X.add_face(x, 0, 0b01, r);
  X.add_face(x, 0, 0b10, t);
  X.add_face(x, 0b10, 0b01, v10);
  X.add_face(x, 0, 0b11, v11);
  X.add_face(d, 0, 1, v10);
  X.add_face(r, 1, 0, v10);
  X.add_face(r, 0, 1, v11);
  X.add_face(t, 0, 1, v11);
  return X;
}

/// Square missing its lower-left corner altogether.
inline Complex fig11() {
  detail::Builder b(Variant::spHDA);
  b.vertex("10").vertex("01").vertex("11");
  b.edge("l", "b", "", "01").edge("r", "b", "10", "11").edge("d", "a", "", "10").edge("t", "a", "01", "11");
  return b.square("x", "l", "r", "d", "t").done();
}

/// Square without its left edge; the corner is still reachable through d.
inline Complex fig12() {
  detail::Builder b(Variant::pHDA);
  b.vertex("00").vertex("10").vertex("01").vertex("11");
  b.edge("r", "b", "10", "11").edge("d", "a", "00", "10").edge("t", "a", "01", "11");
  return b.square("x", "", "r", "d", "t").done();
}

/// Full square whose lower-left corner is the pair {u, v}.
inline Complex fig13() {
  detail::Builder b(Variant::srHDA);
  b.vertex("u").vertex("v").vertex("10").vertex("01").vertex("11");
  b.edge("l", "b", "u", "01").edge("r", "b", "10", "11").edge("d", "a", "u", "10").edge("t", "a", "01", "11");
  b.face("l", 1, 0, "v").face("d", 1, 0, "v");
  return b.square("x", "l", "r", "d", "t").done();
}

/// Square without its left edge over the corner pair {u, v}.
inline Complex fig14() {
  detail::Builder b(Variant::rHDA);
  b.vertex("u").vertex("v").vertex("10").vertex("01").vertex("11");
  b.edge("r", "b", "10", "11").edge("d", "a", "u", "10").edge("t", "a", "01", "11");
  b.face("d", 1, 0, "v");
  return b.square("x", "", "r", "d", "t").done();
}

/// Cone over a transition starting a and ending b on [a b].
inline Complex fig16() {
  Complex X(Variant::coneHDA);
  int y = X.add_cell("y", {"a", "b"}, Interface{0, 0b10});
  int eb = X.add_cell("y_b", {"b"}, Interface{0, 0b1});
  int ea = X.add_cell("y_a", {"a"}, Interface{0, 0b1});
  int v = X.add_cell("y_bot", {}, Interface{});
  int top = X.add_cell("y_top", {"b"}, Interface{0b1, 0b1});
  X.add_face(y, 0b01, 0, eb);
  X.add_face(y, 0b10, 0, ea);
  X.add_face(y, 0b11, 0, v);
  X.add_face(y, 0, 0b01, top);
  X.add_face(eb, 1, 0, v);
  X.add_face(ea, 1, 0, v);
  X.add_bot(v);
  X.add_top(top);
  return X;
}

/// Square plus a b-edge and a c-edge leaving its lower-right corner.
inline Complex fig19() {
  auto b = detail::full_square_frame(Variant::HDA);
  b.square("x", "l", "r", "d", "t");
  b.vertex("20").vertex("30").edge("f", "b", "10", "20").edge("g", "c", "20", "30");
  return b.bot({"00"}).top({"11", "30"}).done();
}

/// Fig. 19 with the right edge detached from 10, so 10 keeps a single b-coface.
inline Complex fig20() {
  detail::Builder b(Variant::pHDA);
  b.vertex("00").vertex("10").vertex("01").vertex("11").vertex("20").vertex("30");
  b.edge("l", "b", "00", "01").edge("r", "b", "", "11").edge("d", "a", "00", "10").edge("t", "a", "01", "11");
  b.square("x", "l", "r", "d", "t");
  b.edge("f", "b", "10", "20").edge("g", "c", "20", "30");
  return b.bot({"00"}).top({"11", "20", "30"}).done();
}

/// Exploded determinization: a bare square next to the two interleavings.
inline Complex fig21() {
  detail::Builder b(Variant::pHDA);
  b.vertex("00").vertex("10").vertex("20").vertex("30").vertex("n10").vertex("n20").vertex("x11");
  b.edge("a1", "a", "00", "10").edge("b1", "b", "10", "20").edge("c1", "c", "20", "30");
  b.edge("b2", "b", "00", "n10").edge("a2", "a", "n10", "n20");
  b.square("x", "", "", "", "");
  b.face("x", detail::AB, 0, "00").face("x", 0, detail::AB, "x11");
  return b.bot({"00"}).top({"20", "30", "n20", "x11"}).done();
}

/// ST-automaton p -a•-> q -[•a• b•]-> r with no composite p -> r.
inline PAutomaton fig15() {
  PAutomaton A;
  A.add_state("p", {});
  A.add_state("q", {"a"});
  A.add_state("r", {"a", "b"});
  A.add_edge("e1", "p", "q", step_form(Step::make_starter({"a"}, 0b1)));
  A.add_edge("e2", "q", "r", step_form(Step::make_starter({"a", "b"}, 0b10)));
  return A;
}

/// Every named complex fixture, for batteries and the CLI.
inline const std::map<std::string, std::function<Complex()>>& complexes() {
  static const std::map<std::string, std::function<Complex()>> all = {
      {"fig5", fig5},   {"fig9", fig9},   {"fig10", fig10}, {"fig11", fig11},
      {"fig12", fig12}, {"fig13", fig13}, {"fig14", fig14}, {"fig16", fig16},
      {"fig19", fig19}, {"fig20", fig20}, {"fig21", fig21}, {"square", full_square},
      {"edge", [] { return single_edge(); }},
  };
  return all;
}

inline const std::map<std::string, std::function<PAutomaton()>>& automata() {
  static const std::map<std::string, std::function<PAutomaton()>> all = {{"fig15", fig15}};
  return all;
}

}  // namespace hdaforge::fixtures
