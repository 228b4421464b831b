#pragma once

// Determinism of pHDAs and the macro-state determinization.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hdaforge/complex.hpp"
#include "hdaforge/language.hpp"

namespace hdaforge {

struct DeterminismWitness {
  enum class Kind { initial, coface } kind;
  Conclist U;          // type of the competing cells
  int face = -1;       // shared lower face (coface witnesses)
  EventSet A = 0;      // starting events, indexed in U
  std::vector<int> cells;
};

struct DeterminismReport {
  std::vector<DeterminismWitness> witnesses;
  bool deterministic() const { return witnesses.empty(); }
};

/// At most one initial cell per conclist, and every lower face δ⁰_A has at
/// most one preimage among cells of the same conclist.
inline DeterminismReport is_deterministic(const Complex& X) {
  DeterminismReport r;
  std::map<Conclist, std::vector<int>> initial;
  for (int x : X.bot()) initial[X.cell(x).ev].push_back(x);
  for (const auto& [U, cells] : initial)
    if (cells.size() > 1) r.witnesses.push_back({DeterminismWitness::Kind::initial, U, -1, 0, cells});
  std::map<std::tuple<int, EventSet, Conclist>, std::vector<int>> cofaces;
  for (const auto& [key, targets] : X.faces()) {
    if (!key.A || key.B) continue;
    for (int z : targets) cofaces[{z, key.A, X.cell(key.cell).ev}].push_back(key.cell);
  }
  for (const auto& [k, cells] : cofaces)
    if (cells.size() > 1)
      r.witnesses.push_back({DeterminismWitness::Kind::coface, std::get<2>(k), std::get<0>(k), std::get<1>(k), cells});
  return r;
}

/// Copies every initial cell x to fresh cells x[C] whose lower faces are
/// only the copies x'[C∖A], so that initial cells have no lower faces.
/// Cell ids x[1,2] list C 1-based; x[] is the new initial copy of x.
inline Complex strip_initial_lower_faces(const Complex& X) {
  Complex Y(X.variant == Variant::HDA ? Variant::pHDA : X.variant);
  for (const Cell& c : X.cells()) Y.add_cell(c.id, c.ev);
  auto name = [&](int x, EventSet C) {
    std::string s = X.cell(x).id + "[";
    bool first = true;
    for_each_bit(C, [&](int i) {
      s += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    });
    return s + "]";
  };
  // (x, C) exists when some δ⁰_C(x) is initial
  std::map<std::pair<int, EventSet>, int> copy;
  for (int x = 0; x < X.size(); ++x)
    for_each_subset(full_set(X.cell(x).dimension()), [&](EventSet C) {
      bool init = C == 0 ? X.bot().count(x) > 0 : false;
      if (C)
        for (int z : X.face(x, C, 0)) init = init || X.bot().count(z);
      if (!init) return;
      std::string id = name(x, C);
      while (Y.contains(id)) id += "'";
      copy[{x, C}] = Y.add_cell(id, X.cell(x).ev);
    });
  for (const auto& [key, targets] : X.faces())
    for (int z : targets) Y.add_face(key.cell, key.A, key.B, z);
  for (const auto& [xc, y] : copy) {
    const auto [x, C] = xc;
    const int dim = X.cell(x).dimension();
    for (const auto& [key, targets] : X.faces()) {
      if (key.cell != x) continue;
      if (key.B) {
        for (int z : targets) Y.add_face(y, key.A, key.B, z);
      } else if ((key.A & ~C) == 0) {
        const EventSet rest = full_set(dim) & ~key.A;
        for (int z : targets) {
          auto it = copy.find({z, compress(C & ~key.A, rest)});
          if (it != copy.end()) Y.add_face(y, key.A, 0, it->second);
        }
      }
    }
    if (C == 0 && X.bot().count(x)) Y.add_bot(y);
    if (X.top().count(x)) Y.add_top(y);
  }
  for (int x : X.top()) Y.add_top(x);
  return Y;
}

/// Cells reached from K by starting A (into cells of type U) and then
/// terminating B: ⋃ δ¹_B(y) over y of type U with δ⁰_A(y) ∩ K ≠ ∅.
inline CellSet reach_step(const Complex& X, const CellSet& K, EventSet A, const Conclist& U, EventSet B) {
  CellSet out;
  for (int y = 0; y < X.size(); ++y) {
    if (X.cell(y).ev != U) continue;
    bool hit = false;
    for (int z : X.face(y, A, 0)) hit = hit || K.count(z);
    if (!hit) continue;
    for (int z : X.face(y, 0, B)) out.insert(z);
  }
  return out;
}

/// Without a target type: every y whose A-lower face meets K.
inline CellSet reach_step(const Complex& X, const CellSet& K, EventSet A, EventSet B) {
  std::set<Conclist> types;
  for (const Cell& c : X.cells()) types.insert(c.ev);
  CellSet out;
  for (const Conclist& U : types) {
    if ((A | B) & ~full_set(int(U.size()))) continue;
    for (int z : reach_step(X, K, A, U, B)) out.insert(z);
  }
  return out;
}

/// One cell of det(X): the class K of q-ipomsets reaching exactly K,
/// with pending starts A on type U.
struct MacroState {
  CellSet K;
  EventSet A = 0;
  Conclist U;
  auto operator<=>(const MacroState&) const = default;
};

/// Macro-state determinization. Cells are named d0, d1, ... in
/// breadth-first order; states[i] describes cell i.
struct Determinized {
  Complex Y;
  std::vector<MacroState> states;
};

inline Determinized determinize_full(const Complex& input) {
  const Complex X = strip_initial_lower_faces(input);
  Determinized out{Complex(Variant::pHDA), {}};
  Complex& Y = out.Y;
  std::map<MacroState, int> index;
  std::deque<int> queue;
  auto intern = [&](MacroState m) {
    auto it = index.find(m);
    if (it != index.end()) return it->second;
    const int y = Y.add_cell("d" + std::to_string(out.states.size()), m.U);
    index.emplace(m, y);
    out.states.push_back(std::move(m));
    queue.push_back(y);
    return y;
  };
  auto upper_types = [&](const CellSet& K) {
    // (A, U) of every cell with an A-lower face in K
    std::set<std::pair<Conclist, EventSet>> types;
    for (const auto& [key, targets] : X.faces()) {
      if (!key.A || key.B) continue;
      for (int z : targets)
        if (K.count(z)) types.emplace(X.cell(key.cell).ev, key.A);
    }
    return types;
  };

  std::map<Conclist, CellSet> initial;
  for (int x : X.bot()) initial[X.cell(x).ev].insert(x);
  std::set<int> identity_class;
  for (auto& [V, K] : initial) {
    const int y = intern(MacroState{K, 0, V});
    identity_class.insert(y);
    Y.add_bot(y);
  }

  while (!queue.empty()) {
    const int y = queue.front();
    queue.pop_front();
    const MacroState m = out.states[y];
    const int dim = int(m.U.size());
    if (m.A == 0) {
      for (const auto& [U, A] : upper_types(m.K)) {
        const int up = intern(MacroState{m.K, A, U});
        Y.add_face(up, A, 0, y);
      }
      if (!identity_class.count(y)) continue;
      for_each_subset(full_set(dim), [&](EventSet B) {
        if (!B) return;
        CellSet next;
        for (int x : m.K)
          for (int z : X.face(x, 0, B)) next.insert(z);
        if (next.empty()) return;
        Y.add_face(y, 0, B, intern(MacroState{next, 0, restrict_to(m.U, ~B)}));
      });
      continue;
    }
    for_each_subset(full_set(dim), [&](EventSet B) {
      if (!B) return;
      CellSet next = reach_step(X, m.K, m.A, m.U, B);
      if (next.empty()) return;
      Y.add_face(y, 0, B, intern(MacroState{next, 0, restrict_to(m.U, ~B)}));
    });
  }

  // composites through an identity-class lower face
  for (int y = 0; y < Y.size(); ++y) {
    const MacroState& m = out.states[y];
    if (!m.A) continue;
    const int low = index.at(MacroState{m.K, 0, restrict_to(m.U, ~m.A)});
    if (!identity_class.count(low)) continue;
    const EventSet rest = full_set(int(m.U.size())) & ~m.A;
    for (const auto& [key, targets] : std::map<FaceKey, CellSet>(Y.faces())) {
      if (key.cell != low || key.A || !key.B) continue;
      for (int z : targets) Y.add_face(y, m.A, expand(key.B, rest), z);
    }
  }

  for (int y = 0; y < Y.size(); ++y) {
    const MacroState& m = out.states[y];
    bool accept = false;
    if (!m.A) {
      for (int x : m.K) accept = accept || X.top().count(x);
    } else {
      for (int x = 0; x < X.size() && !accept; ++x) {
        if (!X.top().count(x) || X.cell(x).ev != m.U) continue;
        for (int z : X.face(x, m.A, 0)) accept = accept || m.K.count(z);
      }
    }
    if (accept) Y.add_top(y);
  }
  return out;
}

inline Complex det(const Complex& X) { return determinize_full(X).Y; }

}  // namespace hdaforge
