#pragma once

// Paths, recognized ipomsets and bounded languages of complexes and automata.
//
// The bound counts factors of the sparse step decomposition of a recognized
// ipomset, so a bound of m captures every accepted ipomset whose canonical
// form has at most m steps. Gluing never shortens a canonical form, which
// makes the cut safe to apply while exploring.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "complex.hpp"
#include "literal.hpp"
#include "pautomaton.hpp"

namespace hdaforge {

struct BoundedLanguage {
  std::set<CanonicalForm> forms;
  int bound = 0;
  bool exact = true;  // nothing was cut by the bound

  bool contains(const CanonicalForm& c) const { return forms.count(c) > 0; }
  std::size_t size() const { return forms.size(); }

  /// Canonical literals, sorted.
  std::vector<std::string> literals() const {
    std::vector<std::string> out;
    for (const auto& c : forms) out.push_back(to_literal(c));
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

/// A labelled transition graph seen by the enumerators.
struct LabelledGraph {
  std::vector<Conclist> type;
  std::vector<std::vector<std::pair<int, CanonicalForm>>> out;
  std::set<int> init, accept;
};

inline LabelledGraph graph_of(const Complex& X) {
  LabelledGraph g;
  for (const Cell& c : X.cells()) g.type.push_back(c.ev);
  g.out.resize(X.size());
  auto steps = step_graph(X);
  for (int x = 0; x < X.size(); ++x)
    for (const StepEdge& e : steps[x]) g.out[x].emplace_back(e.to, step_form(step_label(X, e)));
  g.init = X.bot();
  g.accept = X.top();
  return g;
}

inline LabelledGraph graph_of(const PAutomaton& A) {
  LabelledGraph g;
  for (const AState& q : A.states()) g.type.push_back(q.mu);
  g.out.resize(A.num_states());
  for (const AEdge& e : A.edges()) g.out[e.from].emplace_back(e.to, e.label);
  g.init = A.bot();
  g.accept = A.top();
  return g;
}

inline BoundedLanguage enumerate(const LabelledGraph& g, int bound) {
  BoundedLanguage L;
  L.bound = bound;
  std::set<std::pair<int, CanonicalForm>> seen;
  std::queue<std::pair<int, CanonicalForm>> work;
  for (int x : g.init) {
    auto cfg = std::make_pair(x, CanonicalForm::identity(g.type[x]));
    if (seen.insert(cfg).second) work.push(cfg);
  }
  while (!work.empty()) {
    auto [x, form] = work.front();
    work.pop();
    if (g.accept.count(x)) L.forms.insert(form);
    for (const auto& [y, label] : g.out[x]) {
      auto next = concat(form, label);
      if (!next) throw error(errc::interface_mismatch, "transition label does not continue the path");
      if (next->length() > bound) {
        L.exact = false;
        continue;
      }
      auto cfg = std::make_pair(y, std::move(*next));
      if (seen.insert(cfg).second) work.push(std::move(cfg));
    }
  }
  return L;
}

}  // namespace detail

inline BoundedLanguage enumerate_language(const Complex& X, int bound) {
  return detail::enumerate(detail::graph_of(X), bound);
}
inline BoundedLanguage enumerate_language(const PAutomaton& A, int bound) {
  return detail::enumerate(detail::graph_of(A), bound);
}

/// Exact membership: the bound is taken from P itself.
template <class M>
bool accepts(const M& m, const Ipomset& p) {
  CanonicalForm c = canon(p);
  return enumerate_language(m, c.length()).contains(c);
}

struct Equivalence {
  bool equal = true;
  std::optional<CanonicalForm> witness;
  bool witness_in_first = false;
  explicit operator bool() const { return equal; }
};

inline Equivalence compare_languages(const BoundedLanguage& a, const BoundedLanguage& b) {
  Equivalence r;
  auto better = [&](const CanonicalForm& c) {
    if (!r.witness) return true;
    if (c.length() != r.witness->length()) return c.length() < r.witness->length();
    return c.encoding() < r.witness->encoding();
  };
  for (const auto& c : a.forms)
    if (!b.contains(c) && better(c)) {
      r.witness = c;
      r.witness_in_first = true;
    }
  for (const auto& c : b.forms)
    if (!a.contains(c) && better(c)) {
      r.witness = c;
      r.witness_in_first = false;
    }
  r.equal = !r.witness;
  return r;
}

template <class M, class N>
Equivalence lang_equiv(const M& m, const N& n, int bound) {
  return compare_languages(enumerate_language(m, bound), enumerate_language(n, bound));
}

// ---------------------------------------------------------------- paths

struct Path {
  int start = 0;
  std::vector<StepEdge> steps;
  int end() const { return steps.empty() ? start : steps.back().to; }
};

inline bool is_sparse(const Path& p) {
  for (std::size_t k = 1; k < p.steps.size(); ++k)
    if (p.steps[k].kind == p.steps[k - 1].kind) return false;
  return true;
}

inline Ipomset ev_path(const Complex& X, const Path& p) {
  StepSequence labels;
  for (const StepEdge& e : p.steps) labels.push_back(step_label(X, e));
  return compose(labels, X.cell(p.start).ev);
}

/// Merges runs of upsteps and runs of downsteps through composite faces.
inline Path sparsify(const Complex& X, const Path& p) {
  Path out{p.start, {}};
  for (const StepEdge& e : p.steps) {
    if (out.steps.empty() || out.steps.back().kind != e.kind) {
      out.steps.push_back(e);
      continue;
    }
    StepEdge& prev = out.steps.back();
    StepEdge merged = prev;
    merged.to = e.to;
    if (e.kind == StepKind::starter) {
      // prev: u -A1-> y, e: y -A2-> z; u must be a lower face of z
      const EventSet rest = full_set(X.cell(e.to).dimension()) & ~e.changed;
      merged.changed = e.changed | expand(prev.changed, rest);
      if (!X.face(e.to, merged.changed, 0).count(prev.from))
        throw error(errc::merge_undefined, "no composite lower face on " + X.cell(e.to).id);
    } else {
      const EventSet rest = full_set(X.cell(prev.from).dimension()) & ~prev.changed;
      merged.changed = prev.changed | expand(e.changed, rest);
      if (!X.face(prev.from, 0, merged.changed).count(e.to))
        throw error(errc::merge_undefined, "no composite upper face on " + X.cell(prev.from).id);
    }
    prev = merged;
  }
  return out;
}

/// Every path from an initial cell with at most max_steps steps, ending
/// in an accepting cell.
inline std::vector<Path> accepting_paths(const Complex& X, int max_steps) {
  std::vector<Path> out;
  auto g = step_graph(X);
  Path cur;
  auto dfs = [&](auto&& self, int x) -> void {
    if (X.top().count(x)) out.push_back(cur);
    if (int(cur.steps.size()) == max_steps) return;
    for (const StepEdge& e : g[x]) {
      cur.steps.push_back(e);
      self(self, e.to);
      cur.steps.pop_back();
    }
  };
  for (int x : X.bot()) {
    cur.start = x;
    dfs(dfs, x);
  }
  return out;
}

/// Number of sparse accepting paths recognizing each ipomset of sparse
/// length at most bound.
inline std::map<CanonicalForm, int> sparse_run_counts(const Complex& X, int bound) {
  std::map<CanonicalForm, int> out;
  auto g = step_graph(X);
  auto dfs = [&](auto&& self, int x, const CanonicalForm& form, std::optional<StepKind> last) -> void {
    if (X.top().count(x)) ++out[form];
    for (const StepEdge& e : g[x]) {
      if (last && *last == e.kind) continue;
      auto next = extend(form, step_label(X, e));
      if (!next || next->length() > bound) continue;
      self(self, e.to, *next, e.kind);
    }
  };
  for (int x : X.bot()) dfs(dfs, x, CanonicalForm::identity(X.cell(x).ev), std::nullopt);
  return out;
}

// ---------------------------------------------------------------- rational operations

using FormSet = std::set<CanonicalForm>;

inline FormSet lang_union(const FormSet& a, const FormSet& b) {
  FormSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

/// Gluing product; pairs with mismatched interfaces are skipped. Results
/// longer than max_length (when given) are dropped.
inline FormSet lang_product(const FormSet& a, const FormSet& b, std::optional<int> max_length = std::nullopt) {
  FormSet out;
  for (const auto& p : a)
    for (const auto& q : b) {
      if (p.target() != q.source()) continue;
      auto r = concat(p, q);
      if (r && (!max_length || r->length() <= *max_length)) out.insert(*r);
    }
  return out;
}

/// L ∪ L² ∪ … ∪ Lⁿ.
inline FormSet lang_plus(const FormSet& l, int iterations) {
  FormSet out, power = l;
  for (int k = 1; k <= iterations && !power.empty(); ++k) {
    out.insert(power.begin(), power.end());
    power = lang_product(power, l);
  }
  return out;
}

/// Least fixpoint of L ∪ L·X restricted to sparse length at most bound.
inline FormSet lang_plus_bounded(const FormSet& l, int bound) {
  FormSet base;
  for (const auto& c : l)
    if (c.length() <= bound) base.insert(c);
  FormSet out = base, frontier = base;
  while (!frontier.empty()) {
    FormSet next;
    for (const auto& c : lang_product(frontier, l, bound))
      if (out.insert(c).second) next.insert(c);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace hdaforge
