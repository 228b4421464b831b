#pragma once

// Exhaustive reference procedures for small ipomsets. They never consult
// canonical forms, so they can be used to check sparse_decompose and canon.

#include <map>
#include <vector>

#include "ipomset.hpp"

namespace hdaforge::oracle {

/// Isomorphism by trying every label-preserving bijection.
inline bool isomorphic(const Ipomset& p, const Ipomset& q) {
  const int n = p.size();
  if (n != q.size()) return false;
  std::vector<int> f(n, -1);
  EventSet used = 0;
  auto fits = [&](int x, int fx) {
    if (p.labels[x] != q.labels[fx]) return false;
    if (has(p.source, x) != has(q.source, fx) || has(p.target, x) != has(q.target, fx)) return false;
    for (int y = 0; y < x; ++y) {
      int fy = f[y];
      if (p.before(x, y) != q.before(fx, fy) || p.before(y, x) != q.before(fy, fx)) return false;
      if (p.above(x, y) != q.above(fx, fy) || p.above(y, x) != q.above(fy, fx)) return false;
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
    }
    return false;
  };
  return search(search, 0);
}

/// Every sparse step sequence whose gluing is isomorphic to p, found by
/// enumerating all alternating proper step sequences over p's labels.
inline std::vector<StepSequence> decompositions(const Ipomset& p, int max_size = 5) {
  if (p.size() > max_size) throw error(errc::bound_exceeded, "oracle limited to " + std::to_string(max_size) + " events");
  std::vector<StepSequence> found;
  const Conclist start = conclist_of(p, p.source);
  std::map<Label, int> pool;
  for (int i = 0; i < p.size(); ++i)
    if (!has(p.source, i)) ++pool[p.labels[i]];

  if (pool.empty() && Ipomset::identity(start).size() == p.size() && oracle::isomorphic(Ipomset::identity(start), p))
    found.push_back({Step::make_identity(start)});

  StepSequence steps;
  auto remaining = [&] {
    int r = 0;
    for (auto& [l, c] : pool) r += c;
    return r;
  };

  const Conclist finish = conclist_of(p, p.target);
  const int total = remaining();
  auto dfs = [&](auto&& self, const Conclist& u, StepKind last) -> void {
    const int ended = int(start.size()) + (total - remaining()) - int(u.size());
    if (ended > p.size() - int(finish.size())) return;
    if (!steps.empty() && remaining() == 0 && u == finish && oracle::isomorphic(compose(steps), p))
      found.push_back(steps);
    // Starters: insert k new events at any positions with labels from the pool.
    if (last != StepKind::starter && remaining() > 0) {
      const int rem = remaining();
      for (int k = 1; k <= rem; ++k) {
        const int m = int(u.size()) + k;
        for_each_subset(full_set(m), [&](EventSet a) {
          if (card(a) != k) return;
          std::vector<int> slots = members(a);
          Conclist v(m);
          int src = 0;
          for (int i = 0; i < m; ++i)
            if (!has(a, i)) v[i] = u[src++];
          auto fill = [&](auto&& fillself, std::size_t idx) -> void {
            if (idx == slots.size()) {
              steps.push_back(Step::make_starter(v, a));
              self(self, v, StepKind::starter);
              steps.pop_back();
              return;
            }
            for (auto& [label, count] : pool) {
              if (count == 0) continue;
              --count;
              v[slots[idx]] = label;
              fillself(fillself, idx + 1);
              ++count;
            }
          };
          fill(fill, 0);
        });
      }
    }
    if (last != StepKind::terminator && !u.empty()) {
      for_each_subset(full_set(int(u.size())), [&](EventSet b) {
        if (b == 0) return;
        steps.push_back(Step::make_terminator(u, b));
        self(self, restrict_to(u, full_set(int(u.size())) & ~b), StepKind::terminator);
        steps.pop_back();
      });
    }
  };
  dfs(dfs, start, StepKind::identity);
  return found;
}

}  // namespace hdaforge::oracle
