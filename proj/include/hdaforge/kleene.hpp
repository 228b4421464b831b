#pragma once

// Rational expressions over starters, terminators and identities; the
// compiler to partial HDAs and extraction back from complexes.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "language.hpp"
#include "pautomaton.hpp"
#include "translate.hpp"

namespace hdaforge {

struct RationalExpr {
  enum class Kind { empty, atom, union_, concat, plus };
  Kind kind = Kind::empty;
  Step step;  // atoms only
  std::vector<RationalExpr> kids;

  static RationalExpr empty() { return {}; }
  static RationalExpr atom(Step s) { return RationalExpr{Kind::atom, std::move(s), {}}; }

  bool operator==(const RationalExpr&) const = default;
};

// ---------------------------------------------------------------- smart constructors

inline RationalExpr make_union(std::vector<RationalExpr> parts) {
  std::vector<RationalExpr> flat;
  for (auto& p : parts) {
    if (p.kind == RationalExpr::Kind::empty) continue;
    if (p.kind == RationalExpr::Kind::union_)
      for (auto& k : p.kids) flat.push_back(std::move(k));
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return RationalExpr::empty();
  if (flat.size() == 1) return std::move(flat[0]);
  return RationalExpr{RationalExpr::Kind::union_, {}, std::move(flat)};
}

inline RationalExpr make_concat(std::vector<RationalExpr> parts) {
  std::vector<RationalExpr> flat;
  for (auto& p : parts) {
    if (p.kind == RationalExpr::Kind::empty) return RationalExpr::empty();
    if (p.kind == RationalExpr::Kind::concat)
      for (auto& k : p.kids) flat.push_back(std::move(k));
    else
      flat.push_back(std::move(p));
  }
  if (flat.empty()) return RationalExpr::empty();
  if (flat.size() == 1) return std::move(flat[0]);
  return RationalExpr{RationalExpr::Kind::concat, {}, std::move(flat)};
}

inline RationalExpr make_plus(RationalExpr e) {
  if (e.kind == RationalExpr::Kind::empty || e.kind == RationalExpr::Kind::plus) return e;
  if (e.kind == RationalExpr::Kind::atom && e.step.kind == StepKind::identity) return e;
  return RationalExpr{RationalExpr::Kind::plus, {}, {std::move(e)}};
}

// ---------------------------------------------------------------- printing

namespace detail {

inline std::string print_expr(const RationalExpr& e, int context) {
  // context: 0 = top/union, 1 = inside concat, 2 = under ^+
  using K = RationalExpr::Kind;
  switch (e.kind) {
    case K::empty: return "0";
    case K::atom: return e.step.encoding();
    case K::plus: return print_expr(e.kids[0], 2) + "^+";
    case K::concat: {
      std::string s;
      for (std::size_t i = 0; i < e.kids.size(); ++i) s += (i ? " ; " : "") + print_expr(e.kids[i], 1);
      return context >= 2 ? "(" + s + ")" : s;
    }
    case K::union_: {
      std::vector<std::string> parts;
      for (const auto& k : e.kids) parts.push_back(print_expr(k, 0));
      std::sort(parts.begin(), parts.end());
      std::string s;
      for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
      return context >= 1 ? "(" + s + ")" : s;
    }
  }
  return "";
}

}  // namespace detail

inline std::string print(const RationalExpr& e) { return detail::print_expr(e, 0); }

// ---------------------------------------------------------------- parsing

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  RationalExpr parse() {
    RationalExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw error(errc::syntax_error, what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view t) {
    skip();
    return s_.substr(pos_, t.size()) == t;
  }
  bool eat(std::string_view t) {
    if (!peek(t)) return false;
    pos_ += t.size();
    return true;
  }
  void expect(std::string_view t) {
    if (!eat(t)) fail("expected '" + std::string(t) + "'");
  }

  RationalExpr expr() {
    std::vector<RationalExpr> parts{term()};
    while (eat("+")) parts.push_back(term());
    return parts.size() == 1 ? std::move(parts[0]) : RationalExpr{RationalExpr::Kind::union_, {}, std::move(parts)};
  }
  RationalExpr term() {
    std::vector<RationalExpr> parts{factor()};
    while (eat(";")) parts.push_back(factor());
    return parts.size() == 1 ? std::move(parts[0]) : RationalExpr{RationalExpr::Kind::concat, {}, std::move(parts)};
  }
  RationalExpr factor() {
    RationalExpr e;
    if (eat("(")) {
      e = expr();
      expect(")");
    } else {
      e = atom();
    }
    while (eat("^+")) e = RationalExpr{RationalExpr::Kind::plus, {}, {std::move(e)}};
    return e;
  }
  RationalExpr atom() {
    skip();
    if (eat("0")) return RationalExpr::empty();
    if (pos_ >= s_.size()) fail("expected an atom");
    const char k = s_[pos_];
    if ((k != 'S' && k != 'T' && k != 'I') || pos_ + 1 >= s_.size() || s_[pos_ + 1] != '[') fail("expected an atom");
    pos_ += 2;
    Conclist u = labels();
    if (k == 'I') {
      expect("]");
      return RationalExpr::atom(Step::make_identity(std::move(u)));
    }
    expect("|");
    EventSet a = indices(int(u.size()));
    expect("]");
    return RationalExpr::atom(k == 'S' ? Step::make_starter(std::move(u), a) : Step::make_terminator(std::move(u), a));
  }
  Conclist labels() {
    Conclist u;
    while (true) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      if (start == pos_) return u;
      u.emplace_back(s_.substr(start, pos_ - start));
    }
  }
  EventSet indices(int n) {
    EventSet a = 0;
    do {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an event index");
      const int i = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (i < 1 || i > n) fail("event index " + std::to_string(i) + " out of range");
      a |= EventSet{1} << (i - 1);
    } while (eat(","));
    return a;
  }
};

}  // namespace detail

inline RationalExpr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

// ---------------------------------------------------------------- evaluation

/// Every ipomset of the expression's language with sparse length at most bound.
inline BoundedLanguage eval_expr(const RationalExpr& e, int bound) {
  using K = RationalExpr::Kind;
  bool exact = true;
  auto cut = [&](FormSet l) {
    for (auto it = l.begin(); it != l.end();)
      if (it->length() > bound) {
        exact = false;
        it = l.erase(it);
      } else {
        ++it;
      }
    return l;
  };
  auto go = [&](auto&& self, const RationalExpr& x) -> FormSet {
    switch (x.kind) {
      case K::empty: return {};
      case K::atom: {
        CanonicalForm c = step_form(x.step);
        if (c.length() > bound) {
          exact = false;
          return {};
        }
        return {c};
      }
      case K::union_: {
        FormSet out;
        for (const auto& k : x.kids) out = lang_union(out, self(self, k));
        return out;
      }
      case K::concat: {
        FormSet out = self(self, x.kids[0]);
        for (std::size_t i = 1; i < x.kids.size(); ++i) out = cut(lang_product(out, self(self, x.kids[i])));
        return out;
      }
      case K::plus: {
        FormSet body = self(self, x.kids[0]);
        FormSet out = lang_plus_bounded(body, bound);
        cut(lang_product(out, body));
        return out;
      }
    }
    return {};
  };
  BoundedLanguage L;
  L.forms = go(go, e);
  L.bound = bound;
  L.exact = exact;
  return L;
}

// ---------------------------------------------------------------- compilation

namespace detail {

/// Renames states q0.. and transitions e0.. in order.
inline PAutomaton renumber(const PAutomaton& A) {
  PAutomaton B;
  for (int q = 0; q < A.num_states(); ++q) B.add_state("q" + std::to_string(q), A.states()[q].mu);
  for (int e = 0; e < A.num_edges(); ++e)
    B.add_edge("e" + std::to_string(e), A.edges()[e].from, A.edges()[e].to, A.edges()[e].label);
  for (int q : A.bot()) B.add_bot(q);
  for (int q : A.top()) B.add_top(q);
  return B;
}

/// Disjoint sum; returns the offset of the second automaton's states.
inline int append(PAutomaton& into, const PAutomaton& A, const std::string& tag) {
  const int off = into.num_states();
  for (const AState& q : A.states()) into.add_state(tag + q.id, q.mu);
  for (const AEdge& e : A.edges()) into.add_edge(tag + e.id, e.from + off, e.to + off, e.label);
  return off;
}

inline PAutomaton tidy(const PAutomaton& A) { return renumber(trim_automaton(reduce(A))); }

inline PAutomaton compile_sum(const PAutomaton& A, const PAutomaton& B) {
  PAutomaton C;
  const int a = append(C, A, "a."), b = append(C, B, "b.");
  for (int q : A.bot()) C.add_bot(q + a);
  for (int q : A.top()) C.add_top(q + a);
  for (int q : B.bot()) C.add_bot(q + b);
  for (int q : B.top()) C.add_top(q + b);
  return renumber(C);
}

/// Glues accepting states `tops` to initial states `bots` of the same
/// conclist through one hub state per conclist: every transition into a
/// glued accepting state or out of a glued initial state is copied onto
/// the hub. Returns the hub of each top-state, or -1.
inline std::vector<int> hubs(PAutomaton& C, const std::set<int>& tops, const std::set<int>& bots) {
  std::map<Conclist, int> hub;
  std::vector<int> in(C.num_states(), -1), out(C.num_states(), -1);
  for (int t : tops)
    for (int s : bots)
      if (C.states()[t].mu == C.states()[s].mu) {
        auto [it, fresh] = hub.emplace(C.states()[t].mu, -1);
        if (fresh) it->second = C.add_state(C.fresh_state_id("hub"), it->first);
        in[t] = out[s] = it->second;
      }
  const int m = C.num_edges();
  for (int e = 0; e < m; ++e) {
    const AEdge x = C.edges()[e];
    for (int from : {x.from, out[x.from]})
      for (int to : {x.to, in[x.to]})
        if (from >= 0 && to >= 0 && (from != x.from || to != x.to))
          C.add_edge(C.fresh_edge_id(x.id + "@hub"), from, to, x.label);
  }
  return in;
}

inline PAutomaton compile_concat(const PAutomaton& A, const PAutomaton& B) {
  PAutomaton C;
  const int a = append(C, A, "a."), b = append(C, B, "b.");
  std::set<int> tops, bots;
  for (int q : A.top()) tops.insert(q + a);
  for (int q : B.bot()) bots.insert(q + b);
  auto in = hubs(C, tops, bots);
  for (int q : A.bot()) C.add_bot(q + a);
  for (int q : B.top()) C.add_top(q + b);
  for (int q : A.bot())
    if (A.top().count(q) && in[q + a] >= 0) C.add_bot(in[q + a]);
  for (int q : B.top())
    if (B.bot().count(q))
      for (int t : tops)
        if (in[t] >= 0 && C.states()[t].mu == B.states()[q].mu) C.add_top(in[t]);
  return tidy(C);
}

inline PAutomaton compile_plus(const PAutomaton& A) {
  PAutomaton C = A;
  auto in = hubs(C, A.top(), A.bot());
  for (int t : A.top()) {
    if (in[t] < 0) continue;
    if (A.bot().count(t)) C.add_bot(in[t]);
    for (int s : A.bot())
      if (A.top().count(s) && A.states()[s].mu == A.states()[t].mu) C.add_top(in[t]);
  }
  return tidy(C);
}

}  // namespace detail

/// Reduced gST-automaton recognizing the expression.
inline PAutomaton compile_automaton(const RationalExpr& e) {
  using K = RationalExpr::Kind;
  switch (e.kind) {
    case K::empty: return PAutomaton{};
    case K::atom: {
      PAutomaton A;
      if (e.step.kind == StepKind::identity) {
        A.add_state("q0", e.step.events);
        A.add_bot(0);
        A.add_top(0);
        return detail::tidy(A);
      }
      A.add_state("q0", e.step.source());
      A.add_state("q1", e.step.target());
      A.add_edge("e0", 0, 1, step_form(e.step));
      A.add_bot(0);
      A.add_top(1);
      return detail::tidy(A);
    }
    case K::union_: {
      PAutomaton A = compile_automaton(e.kids[0]);
      for (std::size_t i = 1; i < e.kids.size(); ++i) A = detail::compile_sum(A, compile_automaton(e.kids[i]));
      return A;
    }
    case K::concat: {
      PAutomaton A = compile_automaton(e.kids[0]);
      for (std::size_t i = 1; i < e.kids.size(); ++i) A = detail::compile_concat(A, compile_automaton(e.kids[i]));
      return A;
    }
    case K::plus: return detail::compile_plus(compile_automaton(e.kids[0]));
  }
  return PAutomaton{};
}

inline Complex compile(const RationalExpr& e) { return phda_of_gsta(compile_automaton(e)); }

// ---------------------------------------------------------------- extraction

/// State elimination on the operational semantics of X. A star on a state of
/// type U is written as I[U] + x^+.
inline RationalExpr extract(const Complex& X) {
  PAutomaton A = st_of(trim(X));
  const int n = A.num_states();
  const int init = n, fin = n + 1;
  // R[p][q]: expression for direct moves p -> q
  std::vector<std::vector<RationalExpr>> R(n + 2, std::vector<RationalExpr>(n + 2));
  auto add = [&](int p, int q, RationalExpr x) { R[p][q] = make_union({std::move(R[p][q]), std::move(x)}); };
  for (const AEdge& e : A.edges()) add(e.from, e.to, RationalExpr::atom(e.label.steps[0]));
  for (int q : A.bot()) add(init, q, RationalExpr::atom(Step::make_identity(A.states()[q].mu)));
  for (int q : A.top()) add(q, fin, RationalExpr::atom(Step::make_identity(A.states()[q].mu)));

  auto is_identity = [](const RationalExpr& x) {
    return x.kind == RationalExpr::Kind::atom && x.step.kind == StepKind::identity;
  };
  // Gluing with an identity of the matching type changes nothing.
  auto glue3 = [&](RationalExpr a, RationalExpr b, RationalExpr c) {
    std::vector<RationalExpr> parts;
    for (auto* x : {&a, &b, &c})
      if (!is_identity(*x)) parts.push_back(std::move(*x));
    if (parts.empty()) return a;
    return make_concat(std::move(parts));
  };

  std::vector<char> gone(n, 0);
  auto degree = [&](int q) {
    long in = 0, out = 0;
    for (int p = 0; p < n + 2; ++p) {
      if (p == q) continue;
      in += R[p][q].kind != RationalExpr::Kind::empty;
      out += R[q][p].kind != RationalExpr::Kind::empty;
    }
    return in * out;
  };
  for (int step = 0; step < n; ++step) {
    int q = -1;
    long best = 0;
    for (int c = 0; c < n; ++c)
      if (!gone[c] && (q < 0 || degree(c) < best)) q = c, best = degree(c);
    gone[q] = 1;
    RationalExpr loop = RationalExpr::atom(Step::make_identity(A.states()[q].mu));
    if (R[q][q].kind != RationalExpr::Kind::empty) loop = make_union({loop, make_plus(R[q][q])});
    for (int p = 0; p < n + 2; ++p) {
      if (p == q || R[p][q].kind == RationalExpr::Kind::empty) continue;
      for (int r = 0; r < n + 2; ++r) {
        if (r == q || R[q][r].kind == RationalExpr::Kind::empty) continue;
        add(p, r, glue3(R[p][q], loop, R[q][r]));
      }
    }
    for (int p = 0; p < n + 2; ++p) R[p][q] = R[q][p] = RationalExpr::empty();
  }
  return R[init][fin];
}

}  // namespace hdaforge
