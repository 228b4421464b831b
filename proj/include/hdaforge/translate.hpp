#pragma once

// Translations between the complex variants and the automaton classes.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "pautomaton.hpp"

namespace hdaforge {

// ---------------------------------------------------------------- inclusions

inline const std::vector<std::pair<Variant, Variant>>& inclusion_edges() {
  static const std::vector<std::pair<Variant, Variant>> edges = {
      {Variant::HDA, Variant::spHDA},   {Variant::spHDA, Variant::srHDA}, {Variant::spHDA, Variant::pHDA},
      {Variant::srHDA, Variant::rHDA},  {Variant::pHDA, Variant::rHDA},
  };
  return edges;
}

inline bool included(Variant from, Variant to) {
  if (from == to) return true;
  for (auto [a, b] : inclusion_edges())
    if (a == from && included(b, to)) return true;
  return false;
}

/// Same table under a weaker variant.
inline Complex widen(Complex X, Variant target) {
  if (!included(X.variant, target))
    throw error(errc::not_an_inclusion_edge,
                std::string(variant_name(X.variant)) + " is not included in " + variant_name(target));
  X.variant = target;
  return X;
}

// ---------------------------------------------------------------- resolutions

namespace detail {

inline std::string index_list(EventSet s) {
  std::string out;
  for_each_bit(s, [&](int i) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1);
  });
  return out;
}

inline std::string resolved_id(const std::string& x, EventSet S, EventSet T) {
  return x + "(" + index_list(S) + ";" + index_list(T) + ")";
}

/// Cells (x,S,T) for every interface pair; a face is kept when shape()
/// returns the target interface for it.
template <class Shape>
Complex resolve(const Complex& X, Variant v, Shape shape) {
  Complex Y(v);
  std::map<std::tuple<int, EventSet, EventSet>, int> at;
  for (int x = 0; x < X.size(); ++x) {
    const EventSet all = full_set(X.cell(x).dimension());
    for_each_subset(all, [&](EventSet S) {
      for_each_subset(all, [&](EventSet T) {
        at[{x, S, T}] = Y.add_cell(resolved_id(X.cell(x).id, S, T), X.cell(x).ev, Interface{S, T});
      });
    });
  }
  for (const auto& [key, targets] : X.faces()) {
    const int n = X.cell(key.cell).dimension();
    for_each_subset(full_set(n), [&](EventSet S) {
      for_each_subset(full_set(n), [&](EventSet T) {
        std::optional<Interface> to = shape(n, Interface{S, T}, key.A, key.B);
        if (!to) return;
        const int from = at.at({key.cell, S, T});
        for (int z : targets) Y.add_face(from, key.A, key.B, at.at({z, to->S, to->T}));
      });
    });
  }
  for (int x : X.bot()) {
    const EventSet all = full_set(X.cell(x).dimension());
    for_each_subset(all, [&](EventSet T) { Y.add_bot(at.at({x, all, T})); });
  }
  for (int x : X.top()) {
    const EventSet all = full_set(X.cell(x).dimension());
    for_each_subset(all, [&](EventSet S) { Y.add_top(at.at({x, S, all})); });
  }
  return Y;
}

inline std::optional<Interface> ihda_shape(int n, Interface i, EventSet A, EventSet B) {
  if ((A & i.S) || (B & i.T)) return std::nullopt;
  return face_interface(i, n, A, B);
}

inline std::optional<Interface> cone_shape(int n, Interface i, EventSet A, EventSet B) {
  const EventSet rest = full_set(n) & ~(A | B);
  const EventSet full = full_set(card(rest));
  if (A && !B && !(A & i.S)) return Interface{compress(i.S, rest), full};
  if (B && !A && !(B & i.T)) return Interface{full, compress(i.T, rest)};
  return std::nullopt;
}

/// Pushforward along the forgetful map: interfaces dropped, faces outside
/// the allowed shapes undefined.
template <class Shape>
Complex forget_interfaces(const Complex& Y, Shape shape) {
  Complex X(Variant::spHDA);
  for (const Cell& c : Y.cells()) X.add_cell(c.id, c.ev);
  for (const auto& [key, targets] : Y.faces()) {
    const Cell& c = Y.cell(key.cell);
    if (c.iface && !shape(c.dimension(), *c.iface, key.A, key.B)) continue;
    for (int z : targets) X.add_face(key.cell, key.A, key.B, z);
  }
  for (int x : Y.bot()) X.add_bot(x);
  for (int x : Y.top()) X.add_top(x);
  return X;
}

}  // namespace detail

inline Complex hda_to_ihda(const Complex& X) { return detail::resolve(X, Variant::iHDA, detail::ihda_shape); }
inline Complex hda_to_cone(const Complex& X) { return detail::resolve(X, Variant::coneHDA, detail::cone_shape); }

inline Complex ihda_to_sphda(const Complex& Y) { return detail::forget_interfaces(Y, detail::ihda_shape); }
inline Complex cone_to_sphda(const Complex& Y) { return detail::forget_interfaces(Y, detail::cone_shape); }

// ---------------------------------------------------------------- operational semantics

inline std::string step_id(const Complex& X, const StepEdge& e) {
  const char* sign = e.kind == StepKind::starter ? "+" : "-";
  return X.cell(e.from).id + "/" + sign + detail::index_list(e.changed) + "/" + X.cell(e.to).id;
}

/// ST-automaton with one state per cell and one transition per step.
inline PAutomaton st_of(const Complex& X) {
  PAutomaton A;
  for (const Cell& c : X.cells()) A.add_state(c.id, c.ev);
  auto g = step_graph(X);
  for (int x = 0; x < X.size(); ++x)
    for (const StepEdge& e : g[x]) A.add_edge(step_id(X, e), e.from, e.to, step_form(step_label(X, e)));
  for (int x : X.bot()) A.add_bot(x);
  for (int x : X.top()) A.add_top(x);
  return A;
}

/// The relational complex whose steps are the transitions of an
/// ST-automaton; mixed faces are filled in by composition.
inline Complex rhda_image(const PAutomaton& A) {
  if (!classify_automaton(A).st) throw error(errc::precondition_violated, "rhda_image needs an ST-automaton");
  Complex X(Variant::rHDA);
  for (const AState& q : A.states()) X.add_cell(q.id, q.mu);
  for (const AEdge& e : A.edges()) {
    const Step& s = e.label.steps.front();
    if (s.kind == StepKind::starter) X.add_face(e.to, s.changed, 0, e.from);
    if (s.kind == StepKind::terminator) X.add_face(e.from, 0, s.changed, e.to);
  }
  for (int q : A.bot()) X.add_bot(q);
  for (int q : A.top()) X.add_top(q);
  return saturate(X, [](const FaceKey& k) { return k.A && k.B; });
}

// ---------------------------------------------------------------- reduced automata to complexes

namespace detail {

inline void require_reduced(const PAutomaton& A, const char* op) {
  if (!classify_automaton(A).reduced()) throw error(errc::not_reduced, std::string(op) + " needs a reduced gST-automaton");
}

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  void join(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace detail

/// Cells Q ⊔ E, with a starter transition identified with its target and a
/// terminator with its source; each transition cell gets its two faces.
inline Complex phda_of_gsta(const PAutomaton& A) {
  detail::require_reduced(A, "phda_of_gsta");
  const int nq = A.num_states(), ne = A.num_edges();
  std::vector<std::string> id(nq + ne);
  std::vector<Conclist> ev(nq + ne);
  for (int q = 0; q < nq; ++q) {
    id[q] = A.states()[q].id;
    ev[q] = A.states()[q].mu;
  }
  std::vector<Discrete> lab;
  for (int e = 0; e < ne; ++e) {
    lab.push_back(*as_discrete(A.edges()[e].label));
    id[nq + e] = A.has_state(A.edges()[e].id) ? A.fresh_state_id(A.edges()[e].id) : A.edges()[e].id;
    ev[nq + e] = lab.back().U;
  }
  detail::UnionFind uf(nq + ne);
  for (int e = 0; e < ne; ++e) {
    if (lab[e].terminator()) uf.join(nq + e, A.edges()[e].from);
    if (lab[e].starter()) uf.join(nq + e, A.edges()[e].to);
  }
  std::map<int, int> rep;  // class root -> member with least id
  for (int c = 0; c < nq + ne; ++c) {
    auto [it, fresh] = rep.emplace(uf.find(c), c);
    if (!fresh && id[c] < id[it->second]) it->second = c;
  }
  Complex X(Variant::pHDA);
  std::map<int, int> cell;  // root -> cell
  for (auto [root, c] : rep) cell[root] = X.add_cell(id[c], ev[c]);
  auto at = [&](int c) { return cell.at(uf.find(c)); };
  for (int e = 0; e < ne; ++e) {
    const Discrete& d = lab[e];
    const EventSet all = full_set(d.dimension());
    if (d.S != all) X.add_face(at(nq + e), all & ~d.S, 0, at(A.edges()[e].from));
    if (d.T != all) X.add_face(at(nq + e), 0, all & ~d.T, at(A.edges()[e].to));
  }
  for (int q : A.bot()) X.add_bot(at(q));
  for (int q : A.top()) X.add_top(at(q));
  return X;
}

/// One representable cone per transition, glued along the states.
inline Complex cone_of_gsta(const PAutomaton& A) {
  detail::require_reduced(A, "cone_of_gsta");
  const int nq = A.num_states(), ne = A.num_edges();
  std::vector<Discrete> lab;
  for (const AEdge& e : A.edges()) lab.push_back(*as_discrete(e.label));
  // Q_0: sources of terminators, Q_1: targets of starters; these have no vertex cell.
  std::vector<char> in_q0(nq, 0), in_q1(nq, 0);
  for (int e = 0; e < ne; ++e) {
    if (lab[e].terminator()) in_q0[A.edges()[e].from] = 1;
    if (lab[e].starter()) in_q1[A.edges()[e].to] = 1;
  }
  Complex X(Variant::coneHDA);
  std::vector<int> z(nq, -1);
  for (int q = 0; q < nq; ++q)
    if (!in_q0[q] && !in_q1[q]) {
      const int n = int(A.states()[q].mu.size());
      z[q] = X.add_cell(A.states()[q].id, A.states()[q].mu, Interface{full_set(n), full_set(n)});
    }
  auto fresh = [&](std::string base) {
    while (X.contains(base)) base += "'";
    return base;
  };
  for (int e = 0; e < ne; ++e) {
    const AEdge& x = A.edges()[e];
    const Discrete& d = lab[e];
    const EventSet all = full_set(d.dimension());
    const int y = X.add_cell(fresh(x.id), d.U, Interface{d.S, d.T});
    std::map<EventSet, int> lower, upper;
    for_each_subset(all & ~d.S, [&](EventSet Aset) {
      if (!Aset) return;
      const EventSet rest = all & ~Aset;
      if (Aset == (all & ~d.S))
        lower[Aset] = z[x.from];
      else
        lower[Aset] = X.add_cell(fresh(x.id + "_0:" + detail::index_list(Aset)), restrict_to(d.U, rest),
                                 Interface{compress(d.S, rest), full_set(card(rest))});
    });
    for_each_subset(all & ~d.T, [&](EventSet B) {
      if (!B) return;
      const EventSet rest = all & ~B;
      if (B == (all & ~d.T))
        upper[B] = z[x.to];
      else
        upper[B] = X.add_cell(fresh(x.id + "_1:" + detail::index_list(B)), restrict_to(d.U, rest),
                              Interface{full_set(card(rest)), compress(d.T, rest)});
    });
    for (auto [Aset, c] : lower) {
      X.add_face(y, Aset, 0, c);
      const EventSet rest = all & ~Aset;
      for (auto [A2, c2] : lower)
        if (A2 != Aset && (A2 & Aset) == Aset) X.add_face(c, compress(A2 & ~Aset, rest), 0, c2);
    }
    for (auto [B, c] : upper) {
      X.add_face(y, 0, B, c);
      const EventSet rest = all & ~B;
      for (auto [B2, c2] : upper)
        if (B2 != B && (B2 & B) == B) X.add_face(c, 0, compress(B2 & ~B, rest), c2);
    }
    if (d.terminator()) X.add_bot(y);
    if (d.starter()) X.add_top(y);
  }
  for (int q : A.bot())
    if (z[q] >= 0) X.add_bot(z[q]);
  for (int q : A.top())
    if (z[q] >= 0) X.add_top(z[q]);
  return X;
}

}  // namespace hdaforge
