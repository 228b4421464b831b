#pragma once

// Automata over interval ipomsets, typed by conclists on states, and the
// pipeline that brings them into reduced gST form.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ipomset.hpp"

namespace hdaforge {

struct AState {
  std::string id;
  Conclist mu;
};

struct AEdge {
  std::string id;
  int from;
  int to;
  CanonicalForm label;
};

class PAutomaton {
 public:
  int add_state(std::string id, Conclist mu) {
    if (state_ids_.count(id)) throw error(errc::precondition_violated, "duplicate state id " + id);
    state_ids_[id] = int(states_.size());
    states_.push_back(AState{std::move(id), std::move(mu)});
    return int(states_.size()) - 1;
  }

  int add_edge(std::string id, int from, int to, CanonicalForm label) {
    check_state(from);
    check_state(to);
    if (edge_ids_.count(id)) throw error(errc::precondition_violated, "duplicate edge id " + id);
    if (label.source() != states_[from].mu || label.target() != states_[to].mu)
      throw error(errc::interface_mismatch, "label of " + id + " does not match the types of its endpoints");
    edge_ids_[id] = int(edges_.size());
    edges_.push_back(AEdge{std::move(id), from, to, std::move(label)});
    return int(edges_.size()) - 1;
  }
  int add_edge(std::string id, const std::string& from, const std::string& to, CanonicalForm label) {
    return add_edge(std::move(id), state(from), state(to), std::move(label));
  }

  void add_bot(int q) { bot_.insert(check_state(q)); }
  void add_top(int q) { top_.insert(check_state(q)); }
  void add_bot(const std::string& q) { add_bot(state(q)); }
  void add_top(const std::string& q) { add_top(state(q)); }

  int state(const std::string& id) const {
    auto it = state_ids_.find(id);
    if (it == state_ids_.end()) throw error(errc::unknown_cell, "unknown state " + id);
    return it->second;
  }
  bool has_state(const std::string& id) const { return state_ids_.count(id) > 0; }
  bool has_edge(const std::string& id) const { return edge_ids_.count(id) > 0; }

  /// base, or base with primes appended until unused.
  std::string fresh_state_id(std::string base) const {
    while (state_ids_.count(base)) base += '\'';
    return base;
  }
  std::string fresh_edge_id(std::string base) const {
    while (edge_ids_.count(base)) base += '\'';
    return base;
  }

  const std::vector<AState>& states() const { return states_; }
  const std::vector<AEdge>& edges() const { return edges_; }
  const std::set<int>& bot() const { return bot_; }
  const std::set<int>& top() const { return top_; }
  int num_states() const { return int(states_.size()); }
  int num_edges() const { return int(edges_.size()); }

  std::vector<int> outgoing(int q) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].from == q) out.push_back(e);
    return out;
  }
  std::vector<int> incoming(int q) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e)
      if (edges_[e].to == q) out.push_back(e);
    return out;
  }

 private:
  int check_state(int q) const {
    if (q < 0 || q >= num_states()) throw error(errc::unknown_cell, "state index " + std::to_string(q));
    return q;
  }

  std::vector<AState> states_;
  std::vector<AEdge> edges_;
  std::map<std::string, int> state_ids_, edge_ids_;
  std::set<int> bot_, top_;
};

// ---------------------------------------------------------------- labels

/// A discrete ipomset ⟨S U T⟩ with S, T indexing U.
struct Discrete {
  Conclist U;
  EventSet S;
  EventSet T;
  int dimension() const { return int(U.size()); }
  bool starter() const { return T == full_set(dimension()); }
  bool terminator() const { return S == full_set(dimension()); }
  bool identity() const { return starter() && terminator(); }
};

inline std::optional<Discrete> as_discrete(const CanonicalForm& c) {
  const auto& s = c.steps;
  if (s.size() == 1) return Discrete{s[0].events, s[0].source_set(), s[0].target_set()};
  if (s.size() == 2 && s[0].kind == StepKind::starter && s[1].kind == StepKind::terminator)
    return Discrete{s[0].events, s[0].source_set(), s[1].target_set()};
  return std::nullopt;
}

inline CanonicalForm discrete_form(const Conclist& U, EventSet S, EventSet T) {
  return canon(Ipomset::discrete(U, S, T));
}

inline CanonicalForm step_form(const Step& s) { return CanonicalForm{{s}}; }

inline bool is_starter_label(const CanonicalForm& c) { return c.steps.size() == 1 && c.steps[0].kind != StepKind::terminator; }
inline bool is_terminator_label(const CanonicalForm& c) { return c.steps.size() == 1 && c.steps[0].kind != StepKind::starter; }

/// μ-compatibility of every transition.
inline bool mu_compatible(const PAutomaton& A) {
  for (const AEdge& e : A.edges())
    if (e.label.source() != A.states()[e.from].mu || e.label.target() != A.states()[e.to].mu) return false;
  return true;
}

// ---------------------------------------------------------------- classes

struct AutomatonClass {
  bool st = true;         // every label a starter or terminator
  bool gst = true;        // every label discrete
  bool proper = true;     // ST with no identity labels
  bool no_silent = true;  // no identity labels
  bool a = true, b = true, c = true, d = true, e = true, f = true;
  bool reduced() const { return gst && no_silent && a && b && c && d && e && f; }
};

inline AutomatonClass classify_automaton(const PAutomaton& A) {
  AutomatonClass k;
  std::map<int, int> out_count, in_count;
  for (const AEdge& e : A.edges()) {
    ++out_count[e.from];
    ++in_count[e.to];
    const bool step = e.label.steps.size() == 1;
    if (!step) k.st = false;
    if (e.label.is_identity()) k.no_silent = false;
    if (A.bot().count(e.to)) k.a = false;
    if (A.top().count(e.from)) k.b = false;
    auto disc = as_discrete(e.label);
    if (!disc) {
      k.gst = false;
      continue;
    }
    if (disc->starter() && !A.top().count(e.to)) k.c = false;
    if (disc->terminator() && !A.bot().count(e.from)) k.d = false;
  }
  for (int q : A.bot())
    if (out_count[q] > 1) k.e = false;
  for (int q : A.top())
    if (in_count[q] > 1) k.f = false;
  k.proper = k.st && k.no_silent;
  return k;
}

// ---------------------------------------------------------------- rebuilding

namespace detail {

/// Copies states (all) and the edges accepted by keep.
template <class Keep>
PAutomaton copy_automaton(const PAutomaton& A, Keep keep) {
  PAutomaton B;
  for (const AState& q : A.states()) B.add_state(q.id, q.mu);
  for (int e = 0; e < A.num_edges(); ++e)
    if (keep(e)) {
      const AEdge& x = A.edges()[e];
      B.add_edge(x.id, x.from, x.to, x.label);
    }
  for (int q : A.bot()) B.add_bot(q);
  for (int q : A.top()) B.add_top(q);
  return B;
}

}  // namespace detail

/// Identity transitions removed by ε-closure; accepting states are saturated
/// with everything that reaches them silently.
inline PAutomaton remove_silent(const PAutomaton& A) {
  const int n = A.num_states();
  std::vector<std::vector<int>> closure(n);
  for (int p = 0; p < n; ++p) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{p};
    seen[p] = 1;
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      closure[p].push_back(q);
      for (int e : A.outgoing(q))
        if (A.edges()[e].label.is_identity() && !seen[A.edges()[e].to]) {
          seen[A.edges()[e].to] = 1;
          stack.push_back(A.edges()[e].to);
        }
    }
    std::sort(closure[p].begin(), closure[p].end());
  }
  PAutomaton B;
  for (const AState& q : A.states()) B.add_state(q.id, q.mu);
  std::set<std::tuple<int, int, std::string>> made;
  for (int p = 0; p < n; ++p)
    for (int q : closure[p])
      for (int e : A.outgoing(q)) {
        const AEdge& x = A.edges()[e];
        if (x.label.is_identity()) continue;
        if (!made.emplace(p, x.to, x.label.encoding()).second) continue;
        B.add_edge(B.fresh_edge_id(p == q ? x.id : x.id + "@" + A.states()[p].id), p, x.to, x.label);
      }
  for (int q : A.bot()) B.add_bot(q);
  for (int p = 0; p < n; ++p)
    for (int q : closure[p])
      if (A.top().count(q)) B.add_top(p);
  return B;
}

/// Every label replaced by the chain of its sparse step decomposition.
inline PAutomaton p_to_st(const PAutomaton& A) {
  PAutomaton B;
  for (const AState& q : A.states()) B.add_state(q.id, q.mu);
  for (const AEdge& e : A.edges()) {
    const auto& steps = e.label.steps;
    if (steps.size() == 1) {
      B.add_edge(e.id, e.from, e.to, e.label);
      continue;
    }
    int prev = e.from;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      int next = e.to;
      if (k + 1 < steps.size())
        next = B.add_state(B.fresh_state_id(e.id + "#q" + std::to_string(k + 1)), steps[k].target());
      B.add_edge(B.fresh_edge_id(e.id + "#" + std::to_string(k + 1)), prev, next, step_form(steps[k]));
      prev = next;
    }
  }
  for (int q : A.bot()) B.add_bot(q);
  for (int q : A.top()) B.add_top(q);
  return B;
}

namespace detail {

inline void require_gst_without_silent(const PAutomaton& A, const char* op) {
  auto k = classify_automaton(A);
  if (!k.gst || !k.no_silent)
    throw error(errc::precondition_violated, std::string(op) + " needs a gST-automaton without silent transitions");
}

}  // namespace detail

/// Fresh initial and accepting copies, so that nothing enters an initial
/// state and nothing leaves an accepting one.
inline PAutomaton reduce_ab(const PAutomaton& A) {
  detail::require_gst_without_silent(A, "reduce_ab");
  PAutomaton B;
  for (const AState& q : A.states()) B.add_state(q.id, q.mu);
  std::map<int, int> q_bot, q_top, q_bot_top;
  for (int q : A.bot()) q_bot[q] = B.add_state(B.fresh_state_id(A.states()[q].id + "_bot"), A.states()[q].mu);
  for (int q : A.top()) q_top[q] = B.add_state(B.fresh_state_id(A.states()[q].id + "^top"), A.states()[q].mu);
  for (int q : A.bot())
    if (A.top().count(q))
      q_bot_top[q] = B.add_state(B.fresh_state_id(A.states()[q].id + "_bot^top"), A.states()[q].mu);
  for (const AEdge& e : A.edges()) {
    B.add_edge(e.id, e.from, e.to, e.label);
    const bool from_bot = A.bot().count(e.from), to_top = A.top().count(e.to);
    if (from_bot) B.add_edge(B.fresh_edge_id(e.id + "_bot"), q_bot[e.from], e.to, e.label);
    if (to_top) B.add_edge(B.fresh_edge_id(e.id + "^top"), e.from, q_top[e.to], e.label);
    if (from_bot && to_top) B.add_edge(B.fresh_edge_id(e.id + "_bot^top"), q_bot[e.from], q_top[e.to], e.label);
  }
  for (auto [q, b] : q_bot) B.add_bot(b);
  for (auto [q, t] : q_top) B.add_top(t);
  for (auto [q, bt] : q_bot_top) {
    B.add_bot(bt);
    B.add_top(bt);
  }
  return B;
}

// ---------------------------------------------------------------- bad transitions

struct BadCounts {
  std::map<int, int> starters;     // dimension -> count
  std::map<int, int> terminators;  // dimension -> count
  bool operator==(const BadCounts&) const = default;
};

inline bool is_bad_starter(const PAutomaton& A, int e) {
  const AEdge& x = A.edges()[e];
  auto d = as_discrete(x.label);
  return d && d->starter() && !d->identity() && !A.top().count(x.to);
}

inline bool is_bad_terminator(const PAutomaton& A, int e) {
  const AEdge& x = A.edges()[e];
  auto d = as_discrete(x.label);
  return d && d->terminator() && !d->identity() && !A.bot().count(x.from);
}

inline BadCounts bad_counts(const PAutomaton& A) {
  BadCounts c;
  for (int e = 0; e < A.num_edges(); ++e) {
    const int dim = int(A.edges()[e].label.steps.front().events.size());
    if (is_bad_starter(A, e)) ++c.starters[dim];
    if (is_bad_terminator(A, e)) ++c.terminators[dim];
  }
  return c;
}

namespace detail {

inline int count_at(const std::map<int, int>& m, int k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

/// Removes c and bypasses it: forward (c then each edge leaving t(c)) for a
/// starter, backward (each edge entering s(c) then c) for a terminator.
inline PAutomaton bypass(const PAutomaton& A, int c, bool forward) {
  PAutomaton B = copy_automaton(A, [&](int e) { return e != c; });
  const AEdge& x = A.edges()[c];
  const auto around = forward ? A.outgoing(x.to) : A.incoming(x.from);
  for (int e : around) {
    const AEdge& y = A.edges()[e];
    if (e == c) continue;
    auto label = forward ? concat(x.label, y.label) : concat(y.label, x.label);
    if (!label) throw error(errc::interface_mismatch, "cannot glue around " + x.id);
    if (forward)
      B.add_edge(B.fresh_edge_id(x.id + "*" + y.id), x.from, y.to, *label);
    else
      B.add_edge(B.fresh_edge_id(y.id + "*" + x.id), y.from, x.to, *label);
  }
  return B;
}

}  // namespace detail

/// Removes a bad starter transition c; the bad-transition counts change
/// exactly at c's dimension, which is checked.
inline PAutomaton eliminate_bad_starter(const PAutomaton& A, int c) {
  if (c < 0 || c >= A.num_edges() || !is_bad_starter(A, c))
    throw error(errc::not_bad_starter, "transition is not a bad starter");
  const int n = int(A.edges()[c].label.steps.front().events.size());
  BadCounts before = bad_counts(A);
  PAutomaton B = detail::bypass(A, c, true);
  BadCounts after = bad_counts(B);
  bool ok = detail::count_at(after.starters, n) == detail::count_at(before.starters, n) - 1 &&
            after.terminators == before.terminators;
  for (int k = 0; k < n; ++k) ok = ok && detail::count_at(after.starters, k) == detail::count_at(before.starters, k);
  if (!ok) throw error(errc::precondition_violated, "bad-transition counts changed unexpectedly");
  return B;
}

/// Mirror image of eliminate_bad_starter.
inline PAutomaton eliminate_bad_terminator(const PAutomaton& A, int c) {
  if (c < 0 || c >= A.num_edges() || !is_bad_terminator(A, c))
    throw error(errc::not_bad_starter, "transition is not a bad terminator");
  const int n = int(A.edges()[c].label.steps.front().events.size());
  BadCounts before = bad_counts(A);
  PAutomaton B = detail::bypass(A, c, false);
  BadCounts after = bad_counts(B);
  bool ok = detail::count_at(after.terminators, n) == detail::count_at(before.terminators, n) - 1 &&
            after.starters == before.starters;
  for (int k = 0; k < n; ++k)
    ok = ok && detail::count_at(after.terminators, k) == detail::count_at(before.terminators, k);
  if (!ok) throw error(errc::precondition_violated, "bad-transition counts changed unexpectedly");
  return B;
}

/// Eliminates bad transitions, lowest dimension first, then by position.
inline PAutomaton eliminate_bad_transitions(PAutomaton A,
                                            const std::function<void(const PAutomaton&)>& on_step = nullptr) {
  while (true) {
    int best = -1, best_dim = 0;
    bool best_starter = false;
    for (int e = 0; e < A.num_edges(); ++e) {
      const bool s = is_bad_starter(A, e), t = is_bad_terminator(A, e);
      if (!s && !t) continue;
      const int dim = int(A.edges()[e].label.steps.front().events.size());
      if (best < 0 || dim < best_dim) {
        best = e;
        best_dim = dim;
        best_starter = s;
      }
    }
    if (best < 0) return A;
    A = best_starter ? eliminate_bad_starter(A, best) : eliminate_bad_terminator(A, best);
    if (on_step) on_step(A);
  }
}

/// Splits initial and accepting states so each has at most one transition.
inline PAutomaton split_ef(const PAutomaton& A) {
  PAutomaton B;
  std::vector<int> map(A.num_states(), -1);
  for (int q = 0; q < A.num_states(); ++q) {
    const bool b = A.bot().count(q), t = A.top().count(q);
    if (b != t) continue;  // only-initial and only-accepting states are replaced
    map[q] = B.add_state(A.states()[q].id, A.states()[q].mu);
    if (b) {
      B.add_bot(map[q]);
      B.add_top(map[q]);
    }
  }
  std::vector<int> src(A.num_edges()), tgt(A.num_edges());
  for (int e = 0; e < A.num_edges(); ++e) {
    const AEdge& x = A.edges()[e];
    if (A.bot().count(x.from) && !A.top().count(x.from)) {
      src[e] = B.add_state(B.fresh_state_id(x.id + "_bot"), A.states()[x.from].mu);
      B.add_bot(src[e]);
    } else {
      src[e] = map[x.from];
    }
    if (A.top().count(x.to) && !A.bot().count(x.to)) {
      tgt[e] = B.add_state(B.fresh_state_id(x.id + "^top"), A.states()[x.to].mu);
      B.add_top(tgt[e]);
    } else {
      tgt[e] = map[x.to];
    }
  }
  for (int e = 0; e < A.num_edges(); ++e) {
    if (src[e] < 0 || tgt[e] < 0)
      throw error(errc::precondition_violated, "transition " + A.edges()[e].id + " touches a state that is both initial and accepting");
    B.add_edge(A.edges()[e].id, src[e], tgt[e], A.edges()[e].label);
  }
  return B;
}

/// Keeps states on some accepting run and drops duplicate transitions
/// (same endpoints and label). The language is unchanged.
inline PAutomaton trim_automaton(const PAutomaton& A) {
  const int n = A.num_states();
  auto sweep = [&](const std::set<int>& start, bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack(start.begin(), start.end());
    for (int q : stack) seen[q] = 1;
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int e : forward ? A.outgoing(q) : A.incoming(q)) {
        int r = forward ? A.edges()[e].to : A.edges()[e].from;
        if (!seen[r]) {
          seen[r] = 1;
          stack.push_back(r);
        }
      }
    }
    return seen;
  };
  auto fwd = sweep(A.bot(), true), bwd = sweep(A.top(), false);
  PAutomaton B;
  std::vector<int> map(n, -1);
  for (int q = 0; q < n; ++q)
    if (fwd[q] && bwd[q]) map[q] = B.add_state(A.states()[q].id, A.states()[q].mu);
  std::set<std::tuple<int, int, CanonicalForm>> seen;
  for (const AEdge& e : A.edges())
    if (map[e.from] >= 0 && map[e.to] >= 0 && seen.emplace(e.from, e.to, e.label).second)
      B.add_edge(e.id, map[e.from], map[e.to], e.label);
  for (int q : A.bot())
    if (map[q] >= 0) B.add_bot(map[q]);
  for (int q : A.top())
    if (map[q] >= 0) B.add_top(map[q]);
  return B;
}

/// The full reduction pipeline; the result is a reduced gST-automaton.
inline PAutomaton reduce(const PAutomaton& A) {
  PAutomaton B = split_ef(eliminate_bad_transitions(reduce_ab(p_to_st(remove_silent(A)))));
  if (!classify_automaton(B).reduced()) throw error(errc::not_reduced, "reduction did not reach normal form");
  return B;
}

}  // namespace hdaforge
