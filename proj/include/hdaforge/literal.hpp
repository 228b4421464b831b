#pragma once

// Textual ipomsets.
//
// Full literal:  `[` event* (`:` pair*)? `]`
//   event := `.`? label `.`?    leading dot = source interface, trailing dot = target
//   pair  := int `<` int        1-based positions in the listing
// Events are listed along a linear extension of the event order; every
// pair not related by precedence is ordered top-to-bottom as listed.
//
// Shorthand (no interfaces, single-character labels):
//   seq := par (`;` par)*    par := word (`||` word)*    word := unit+
//   unit := label | `(` seq `)`
// Juxtaposition and `;` are gluing, `||` is parallel composition.

#include <cctype>
#include <string>
#include <string_view>

#include "ipomset.hpp"

namespace hdaforge {

inline bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

/// Canonical literal; equal strings iff isomorphic ipomsets.
inline std::string to_literal(const CanonicalForm& c) {
  Ipomset p = realize(c);
  const int n = p.size();
  // Linear extension of the event order, ties broken by start order.
  std::vector<int> order;
  EventSet placed = 0;
  while (int(order.size()) < n) {
    for (int x = 0; x < n; ++x) {
      if (has(placed, x)) continue;
      bool free = true;
      for (int y = 0; y < n; ++y)
        if (!has(placed, y) && p.above(y, x)) free = false;
      if (free) {
        order.push_back(x);
        placed |= bit(x);
        break;
      }
    }
  }
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[order[k]] = k;
  std::string out = "[";
  for (int k = 0; k < n; ++k) {
    int x = order[k];
    if (k) out += ' ';
    if (has(p.source, x)) out += '.';
    out += p.labels[x];
    if (has(p.target, x)) out += '.';
  }
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for_each_bit(p.prec[x], [&](int y) { pairs.emplace_back(pos[x] + 1, pos[y] + 1); });
  std::sort(pairs.begin(), pairs.end());
  if (!pairs.empty()) {
    out += " :";
    for (auto [a, b] : pairs) out += ' ' + std::to_string(a) + '<' + std::to_string(b);
  }
  out += ']';
  return out;
}

inline std::string to_literal(const Ipomset& p) { return to_literal(canon(p)); }

namespace detail {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : s_(text) {}

  Ipomset parse() {
    skip();
    Ipomset r = peek() == '[' ? full() : seq();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    check(r);
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw error(errc::syntax_error, msg + " at position " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  int number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }

  Ipomset full() {
    eat("[");
    Conclist labels;
    EventSet src = 0, tgt = 0;
    while (true) {
      skip();
      char c = peek();
      if (c == ']' || c == ':' || c == '\0') break;
      bool dot_in = false, dot_out = false;
      if (c == '.') {
        dot_in = true;
        ++i_;
      }
      std::size_t start = i_;
      while (i_ < s_.size() && is_label_char(s_[i_])) ++i_;
      if (start == i_) fail("expected a label");
      if (labels.size() >= std::size_t(max_events)) fail("too many events");
      labels.emplace_back(s_.substr(start, i_ - start));
      if (peek() == '.') {
        dot_out = true;
        ++i_;
      }
      if (dot_in) src |= bit(int(labels.size() - 1));
      if (dot_out) tgt |= bit(int(labels.size() - 1));
    }
    const int n = int(labels.size());
    std::vector<EventSet> prec(n, 0);
    if (eat(":")) {
      while (true) {
        skip();
        if (peek() == ']' || peek() == '\0') break;
        int a = number();
        if (!eat("<")) fail("expected '<'");
        int b = number();
        if (a < 1 || b < 1 || a > n || b > n) fail("pair refers to a missing event");
        prec[a - 1] |= bit(b - 1);
      }
    }
    if (!eat("]")) fail("expected ']'");
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        if (has(prec[i], k)) prec[i] |= prec[k];
    Ipomset p;
    p.labels = labels;
    p.prec = prec;
    p.evord.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!has(prec[i], j) && !has(prec[j], i)) p.evord[i] |= bit(j);
    p.source = src;
    p.target = tgt;
    return p;
  }

  Ipomset seq() {
    Ipomset r = par();
    while (eat(";")) r = glue(r, par());
    return r;
  }
  Ipomset par() {
    Ipomset r = word();
    while (eat("||")) r = parallel(r, word());
    return r;
  }
  Ipomset word() {
    std::optional<Ipomset> r;
    while (true) {
      skip();
      char c = peek();
      std::optional<Ipomset> u;
      if (c == '(') {
        ++i_;
        u = seq();
        if (!eat(")")) fail("expected ')'");
      } else if (is_label_char(c)) {
        ++i_;
        u = Ipomset::discrete({std::string(1, c)}, 0, 0);
      } else {
        break;
      }
      r = r ? glue(*r, *u) : *u;
    }
    if (!r) fail("expected a label or '('");
    return *r;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Ipomset parse_ipomset(std::string_view text) { return detail::LiteralParser(text).parse(); }

}  // namespace hdaforge
