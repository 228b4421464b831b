#pragma once

// Interval pomsets with interfaces, discrete steps and their algebra.
//
// Events are positional (index 0..n-1). Two relations are stored as successor
// bitmasks: `prec[i]` holds every j with i < j, `evord[i]` every j with i ⋏ j.
// Isomorphism classes are handled through CanonicalForm, the sparse step
// decomposition, which is unique for interval ipomsets.

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bits.hpp"
#include "error.hpp"

namespace hdaforge {

using Label = std::string;

/// Labels in event order (top to bottom).
using Conclist = std::vector<Label>;

inline Conclist restrict_to(const Conclist& u, EventSet keep) {
  Conclist out;
  for_each_bit(keep & full_set(int(u.size())), [&](int i) { out.push_back(u[i]); });
  return out;
}

inline std::string join_labels(const Conclist& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ' ';
    out += u[i];
  }
  return out;
}

struct Ipomset {
  std::vector<Label> labels;
  std::vector<EventSet> prec;
  std::vector<EventSet> evord;
  EventSet source = 0;
  EventSet target = 0;

  int size() const { return int(labels.size()); }
  bool before(int i, int j) const { return has(prec[i], j); }
  bool above(int i, int j) const { return has(evord[i], j); }
  bool concurrent(int i, int j) const { return i != j && !before(i, j) && !before(j, i); }

  EventSet predecessors(int j) const {
    EventSet out = 0;
    for (int i = 0; i < size(); ++i)
      if (before(i, j)) out |= bit(i);
    return out;
  }

  /// The iconclist ⟨S, U, T⟩ as a discrete ipomset.
  static Ipomset discrete(const Conclist& u, EventSet s, EventSet t) {
    if (u.size() > std::size_t(max_events)) throw error(errc::bound_exceeded, "more than 64 events");
    Ipomset p;
    int n = int(u.size());
    p.labels = u;
    p.prec.assign(n, 0);
    p.evord.assign(n, 0);
    for (int i = 0; i < n; ++i) p.evord[i] = full_set(n) & ~full_set(i + 1);
    p.source = s & full_set(n);
    p.target = t & full_set(n);
    return p;
  }

  static Ipomset identity(const Conclist& u) {
    return discrete(u, full_set(int(u.size())), full_set(int(u.size())));
  }

  bool operator==(const Ipomset&) const = default;
};

inline bool is_discrete(const Ipomset& p) {
  return std::all_of(p.prec.begin(), p.prec.end(), [](EventSet s) { return s == 0; });
}

/// Interval orders are exactly those whose predecessor sets form a chain.
inline bool is_interval(const Ipomset& p) {
  std::vector<EventSet> pred(p.size());
  for (int j = 0; j < p.size(); ++j) pred[j] = p.predecessors(j);
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j) {
      bool sub = (pred[i] & ~pred[j]) == 0;
      bool sup = (pred[j] & ~pred[i]) == 0;
      if (!sub && !sup) return false;
    }
  return true;
}

/// Throws invalid_ipomset or not_interval when an invariant fails.
inline void check(const Ipomset& p) {
  const int n = p.size();
  if (n > max_events) throw error(errc::bound_exceeded, "more than 64 events");
  if (int(p.prec.size()) != n || int(p.evord.size()) != n)
    throw error(errc::invalid_ipomset, "relation tables do not match event count");
  const EventSet all = full_set(n);
  if ((p.source & ~all) || (p.target & ~all)) throw error(errc::invalid_ipomset, "interface out of range");
  for (int i = 0; i < n; ++i) {
    if ((p.prec[i] & ~all) || (p.evord[i] & ~all))
      throw error(errc::invalid_ipomset, "relation refers to a missing event");
    if (p.before(i, i) || p.above(i, i)) throw error(errc::invalid_ipomset, "reflexive pair");
    for_each_bit(p.prec[i], [&](int j) {
      if (p.prec[j] & ~p.prec[i]) throw error(errc::invalid_ipomset, "precedence is not transitive");
    });
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int c = int(p.before(i, j)) + int(p.before(j, i)) + int(p.above(i, j)) + int(p.above(j, i));
      if (c != 1) {
        std::ostringstream os;
        os << "events " << i + 1 << " and " << j + 1 << " are related " << c << " times";
        throw error(errc::invalid_ipomset, os.str());
      }
    }
  // Acyclicity of the event order: Warshall closure must stay irreflexive.
  std::vector<EventSet> reach = p.evord;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (has(reach[i], k)) reach[i] |= reach[k];
  for (int i = 0; i < n; ++i)
    if (has(reach[i], i)) throw error(errc::invalid_ipomset, "event order has a cycle");
  for_each_bit(p.source, [&](int s) {
    if (p.predecessors(s)) throw error(errc::invalid_ipomset, "source event is not minimal");
  });
  for_each_bit(p.target, [&](int t) {
    if (p.prec[t]) throw error(errc::invalid_ipomset, "target event is not maximal");
  });
  if (!is_interval(p)) throw error(errc::not_interval, "precedence contains an induced 2+2");
}

/// Members of `s` (pairwise concurrent) sorted by event order.
inline std::vector<int> ordered(const Ipomset& p, EventSet s) {
  std::vector<int> ev = members(s);
  std::vector<std::pair<int, int>> ranked;
  for (int x : ev) ranked.emplace_back(card(p.evord[x] & s), x);
  std::sort(ranked.begin(), ranked.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<int> out;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (ranked[k].first != int(ranked.size() - 1 - k))
      throw error(errc::invalid_ipomset, "event order is not total on a concurrent set");
    out.push_back(ranked[k].second);
  }
  return out;
}

inline Conclist conclist_of(const Ipomset& p, EventSet s) {
  Conclist out;
  for (int x : ordered(p, s)) out.push_back(p.labels[x]);
  return out;
}

// ---------------------------------------------------------------------------
// Discrete steps

enum class StepKind : std::uint8_t { identity, starter, terminator };

/// A starter ⟨U∖A, U, U⟩, a terminator ⟨U, U, U∖A⟩ or an identity ⟨U, U, U⟩.
struct Step {
  StepKind kind = StepKind::identity;
  Conclist events;
  EventSet changed = 0;

  static Step make_identity(Conclist u) { return Step{StepKind::identity, std::move(u), 0}; }

  static Step make_starter(Conclist u, EventSet a) {
    a &= full_set(int(u.size()));
    if (a == 0) return make_identity(std::move(u));
    return Step{StepKind::starter, std::move(u), a};
  }

  static Step make_terminator(Conclist u, EventSet b) {
    b &= full_set(int(u.size()));
    if (b == 0) return make_identity(std::move(u));
    return Step{StepKind::terminator, std::move(u), b};
  }

  int dimension() const { return int(events.size()); }
  bool proper() const { return kind != StepKind::identity; }

  EventSet source_set() const {
    EventSet all = full_set(dimension());
    return kind == StepKind::starter ? all & ~changed : all;
  }
  EventSet target_set() const {
    EventSet all = full_set(dimension());
    return kind == StepKind::terminator ? all & ~changed : all;
  }
  Conclist source() const { return restrict_to(events, source_set()); }
  Conclist target() const { return restrict_to(events, target_set()); }

  Ipomset to_ipomset() const { return Ipomset::discrete(events, source_set(), target_set()); }

  /// Atom syntax: `S[a b|2]`, `T[a|1]`, `I[a b]`.
  std::string encoding() const {
    std::string out;
    out += kind == StepKind::starter ? 'S' : kind == StepKind::terminator ? 'T' : 'I';
    out += '[';
    out += join_labels(events);
    if (kind != StepKind::identity) {
      out += '|';
      bool first = true;
      for_each_bit(changed, [&](int i) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i + 1);
      });
    }
    out += ']';
    return out;
  }

  auto operator<=>(const Step&) const = default;
  bool operator==(const Step&) const = default;
};

/// Recognizes a discrete ipomset as a starter, terminator or identity.
inline std::optional<Step> as_step(const Ipomset& p) {
  if (!is_discrete(p)) return std::nullopt;
  EventSet all = full_set(p.size());
  std::vector<int> ord = ordered(p, all);
  Conclist u;
  EventSet s = 0, t = 0;
  for (std::size_t k = 0; k < ord.size(); ++k) {
    u.push_back(p.labels[ord[k]]);
    if (has(p.source, ord[k])) s |= bit(int(k));
    if (has(p.target, ord[k])) t |= bit(int(k));
  }
  if (s == all && t == all) return Step::make_identity(u);
  if (t == all) return Step::make_starter(u, all & ~s);
  if (s == all) return Step::make_terminator(u, all & ~t);
  return std::nullopt;
}

using StepSequence = std::vector<Step>;

// ---------------------------------------------------------------------------
// Gluing and decomposition

/// P * Q: identifies T_P with S_Q and puts P∖T_P before Q∖S_Q.
inline Ipomset glue(const Ipomset& p, const Ipomset& q) {
  std::vector<int> tp = ordered(p, p.target);
  std::vector<int> sq = ordered(q, q.source);
  bool match = tp.size() == sq.size();
  for (std::size_t k = 0; match && k < tp.size(); ++k) match = p.labels[tp[k]] == q.labels[sq[k]];
  if (!match)
    throw error(errc::interface_mismatch, "target [" + join_labels(conclist_of(p, p.target)) +
                                              "] does not match source [" +
                                              join_labels(conclist_of(q, q.source)) + "]");
  const int np = p.size();
  std::vector<int> qmap(q.size(), -1);
  for (std::size_t k = 0; k < sq.size(); ++k) qmap[sq[k]] = tp[k];
  int next = np;
  for (int j = 0; j < q.size(); ++j)
    if (qmap[j] < 0) qmap[j] = next++;
  if (next > max_events) throw error(errc::bound_exceeded, "glued ipomset exceeds 64 events");

  Ipomset r;
  r.labels = p.labels;
  r.labels.resize(next);
  for (int j = 0; j < q.size(); ++j) r.labels[qmap[j]] = q.labels[j];
  r.prec = p.prec;
  r.evord = p.evord;
  r.prec.resize(next, 0);
  r.evord.resize(next, 0);
  for (int i = 0; i < q.size(); ++i)
    for (int j = 0; j < q.size(); ++j) {
      if (q.before(i, j)) r.prec[qmap[i]] |= bit(qmap[j]);
      if (q.above(i, j)) r.evord[qmap[i]] |= bit(qmap[j]);
    }
  EventSet fresh = full_set(next) & ~full_set(np);
  for_each_bit(full_set(np) & ~p.target, [&](int x) { r.prec[x] |= fresh; });
  r.source = p.source;
  r.target = 0;
  for_each_bit(q.target, [&](int j) { r.target |= bit(qmap[j]); });
  if (!is_interval(r)) throw error(errc::not_interval, "gluing produced a non-interval order");
  return r;
}

/// Left fold of glue; an empty sequence yields id over `base`.
inline Ipomset compose(const StepSequence& steps, const Conclist& base = {}) {
  if (steps.empty()) return Ipomset::identity(base);
  Ipomset r = steps.front().to_ipomset();
  for (std::size_t k = 1; k < steps.size(); ++k) {
    try {
      r = glue(r, steps[k].to_ipomset());
    } catch (const error& e) {
      if (e.code() != errc::interface_mismatch) throw;
      throw error(errc::interface_mismatch, "at step " + std::to_string(k + 1) + ": " + e.what());
    }
  }
  return r;
}

/// Unique sparse step decomposition. Greedily starts every event whose
/// predecessors are done, then terminates every running non-target event
/// whose non-successors have all started.
inline StepSequence sparse_decompose(const Ipomset& p) {
  check(p);
  const int n = p.size();
  const EventSet all = full_set(n);
  std::vector<EventSet> pred(n);
  for (int j = 0; j < n; ++j) pred[j] = p.predecessors(j);

  auto positions = [&](EventSet universe, EventSet sub) {
    std::vector<int> ord = ordered(p, universe);
    EventSet out = 0;
    for (std::size_t k = 0; k < ord.size(); ++k)
      if (has(sub, ord[k])) out |= bit(int(k));
    return std::pair{conclist_of(p, universe), out};
  };

  EventSet done = 0, running = p.source, waiting = all & ~p.source;
  StepSequence out;
  while (true) {
    EventSet start = 0;
    for_each_bit(waiting, [&](int y) {
      if ((pred[y] & ~done) == 0) start |= bit(y);
    });
    if (start) {
      running |= start;
      waiting &= ~start;
      auto [u, a] = positions(running, start);
      out.push_back(Step::make_starter(std::move(u), a));
    }
    EventSet stop = 0;
    for_each_bit(running & ~p.target, [&](int x) {
      EventSet unrelated = all & ~p.prec[x] & ~bit(x);
      if ((unrelated & waiting) == 0) stop |= bit(x);
    });
    if (stop) {
      auto [u, b] = positions(running, stop);
      out.push_back(Step::make_terminator(std::move(u), b));
      running &= ~stop;
      done |= stop;
    }
    if (!start && !stop) break;
  }
  if (waiting || running != p.target) throw error(errc::not_interval, "no step decomposition exists");
  if (out.empty()) out.push_back(Step::make_identity(conclist_of(p, p.source)));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical forms

/// Normalized sparse step decomposition; equal iff the ipomsets are isomorphic.
struct CanonicalForm {
  StepSequence steps;

  bool is_identity() const { return steps.size() == 1 && steps[0].kind == StepKind::identity; }
  /// Number of proper factors (0 for identities).
  int length() const { return is_identity() ? 0 : int(steps.size()); }
  Conclist source() const { return steps.front().source(); }
  Conclist target() const { return steps.back().target(); }

  std::string encoding() const {
    std::string out;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      if (k) out += ';';
      out += steps[k].encoding();
    }
    return out;
  }

  static CanonicalForm identity(const Conclist& u) { return CanonicalForm{{Step::make_identity(u)}}; }

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;
};

inline CanonicalForm canon(const Ipomset& p) { return CanonicalForm{sparse_decompose(p)}; }

/// Rebuilds the ipomset; events are numbered in start order.
inline Ipomset realize(const CanonicalForm& c) { return compose(c.steps); }

inline bool isomorphic(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size()) return false;
  return canon(p) == canon(q);
}

/// Appends one step, merging it into a trailing step of the same kind.
/// Returns nullopt when the step's source does not match the current target.
inline std::optional<CanonicalForm> extend(CanonicalForm c, const Step& s) {
  if (c.target() != s.source()) return std::nullopt;
  if (!s.proper()) return c;
  if (c.is_identity()) return CanonicalForm{{s}};
  Step& last = c.steps.back();
  if (last.kind == s.kind) {
    if (s.kind == StepKind::starter) {
      EventSet kept = full_set(s.dimension()) & ~s.changed;
      last = Step::make_starter(s.events, s.changed | expand(last.changed, kept));
    } else {
      EventSet kept = full_set(last.dimension()) & ~last.changed;
      last = Step::make_terminator(last.events, last.changed | expand(s.changed, kept));
    }
  } else {
    c.steps.push_back(s);
  }
  return c;
}

/// Canonical form of P * Q computed directly from the canonical forms.
inline std::optional<CanonicalForm> concat(const CanonicalForm& a, const CanonicalForm& b) {
  std::optional<CanonicalForm> r = a;
  for (const Step& s : b.steps) {
    r = extend(std::move(*r), s);
    if (!r) return std::nullopt;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Subsumption

/// Returns a bijection f: P → Q witnessing P ⊑ Q (P refines Q), if one exists.
inline std::optional<std::vector<int>> subsumption(const Ipomset& p, const Ipomset& q) {
  const int n = p.size();
  if (n != q.size() || card(p.source) != card(q.source) || card(p.target) != card(q.target))
    return std::nullopt;
  std::vector<int> f(n, -1);
  EventSet used = 0;
  auto fits = [&](int x, int fx) {
    if (p.labels[x] != q.labels[fx]) return false;
    if (has(p.source, x) != has(q.source, fx) || has(p.target, x) != has(q.target, fx)) return false;
    for (int y = 0; y < x; ++y) {
      int fy = f[y];
      if (q.before(fx, fy) && !p.before(x, y)) return false;
      if (q.before(fy, fx) && !p.before(y, x)) return false;
      if (p.above(x, y) && !q.above(fx, fy)) return false;
      if (p.above(y, x) && !q.above(fy, fx)) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int x) -> bool {
    if (x == n) return true;
    for (int fx = 0; fx < n; ++fx) {
      if (has(used, fx) || !fits(x, fx)) continue;
      f[x] = fx;
      used |= bit(fx);
      if (self(self, x + 1)) return true;
      used &= ~bit(fx);
      f[x] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return f;
}

inline bool subsumes(const Ipomset& p, const Ipomset& q) { return subsumption(p, q).has_value(); }

/// All refinements of q (up to isomorphism), q included.
inline std::set<CanonicalForm> refinements(const Ipomset& q) {
  const int n = q.size();
  std::vector<std::pair<int, int>> pairs;  // (x, y) with x ⋏ y
  for (int x = 0; x < n; ++x)
    for_each_bit(q.evord[x], [&](int y) { pairs.emplace_back(x, y); });
  std::set<CanonicalForm> out;
  std::vector<int> choice(pairs.size(), 0);  // 0 keep, 1 x<y, 2 y<x
  while (true) {
    Ipomset p = q;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [x, y] = pairs[k];
      if (choice[k] == 0) continue;
      p.evord[x] &= ~bit(y);
      if (choice[k] == 1) p.prec[x] |= bit(y);
      else p.prec[y] |= bit(x);
    }
    bool ok = true;
    for (int i = 0; ok && i < n; ++i)
      for_each_bit(p.prec[i], [&](int j) {
        if (p.prec[j] & ~p.prec[i]) ok = false;
      });
    if (ok) {
      try {
        check(p);
        out.insert(canon(p));
      } catch (const error&) {
      }
    }
    std::size_t k = 0;
    while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
    if (k == choice.size()) break;
    ++choice[k];
  }
  return out;
}

/// Subsumption closure {P | ∃Q ∈ L, P ⊑ Q}.
inline std::set<CanonicalForm> down_closure(const std::vector<Ipomset>& l) {
  std::set<CanonicalForm> out;
  for (const Ipomset& q : l) {
    auto r = refinements(q);
    out.insert(r.begin(), r.end());
  }
  return out;
}

inline std::set<CanonicalForm> down_closure(const std::set<CanonicalForm>& l) {
  std::vector<Ipomset> v;
  for (const auto& c : l) v.push_back(realize(c));
  return down_closure(v);
}

/// Disjoint union with every left event above every right event (literal shorthand `||`).
inline Ipomset parallel(const Ipomset& p, const Ipomset& q) {
  const int np = p.size(), n = np + q.size();
  if (n > max_events) throw error(errc::bound_exceeded, "more than 64 events");
  Ipomset r;
  r.labels = p.labels;
  r.labels.insert(r.labels.end(), q.labels.begin(), q.labels.end());
  r.prec = p.prec;
  r.evord = p.evord;
  for (int i = 0; i < np; ++i) r.evord[i] |= full_set(n) & ~full_set(np);
  for (int j = 0; j < q.size(); ++j) {
    r.prec.push_back(q.prec[j] << np);
    r.evord.push_back(q.evord[j] << np);
  }
  r.source = p.source | (q.source << np);
  r.target = p.target | (q.target << np);
  check(r);
  return r;
}

}  // namespace hdaforge
