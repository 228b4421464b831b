#pragma once

// Exhaustive enumeration of small interval ipomsets, deduplicated with the
// brute-force isomorphism oracle (never with canonical forms).

#include <map>
#include <tuple>
#include <vector>

#include "hdaforge/ipomset.hpp"
#include "hdaforge/ipomset_oracle.hpp"

namespace hdaforge::testkit {

inline std::vector<Ipomset> all_ipomsets(int max_events_n, const std::vector<Label>& alphabet) {
  std::vector<Ipomset> out;
  std::map<std::tuple<int, int, int, int, std::vector<Label>>, std::vector<std::size_t>> buckets;

  auto consider = [&](const Ipomset& p) {
    try {
      check(p);
    } catch (const error&) {
      return;
    }
    int pairs = 0;
    for (auto s : p.prec) pairs += card(s);
    Conclist sorted = p.labels;
    std::sort(sorted.begin(), sorted.end());
    auto key = std::make_tuple(p.size(), card(p.source), card(p.target), pairs, sorted);
    auto& bucket = buckets[key];
    for (std::size_t idx : bucket)
      if (oracle::isomorphic(out[idx], p)) return;
    bucket.push_back(out.size());
    out.push_back(p);
  };

  for (int n = 0; n <= max_events_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    // Each pair: 0 i<j, 1 j<i, 2 i⋏j, 3 j⋏i.
    std::vector<int> rel(pairs.size(), 0);
    int label_combos = 1;
    for (int i = 0; i < n; ++i) label_combos *= int(alphabet.size());
    while (true) {
      Ipomset base;
      base.prec.assign(n, 0);
      base.evord.assign(n, 0);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        auto [i, j] = pairs[k];
        switch (rel[k]) {
          case 0: base.prec[i] |= bit(j); break;
          case 1: base.prec[j] |= bit(i); break;
          case 2: base.evord[i] |= bit(j); break;
          default: base.evord[j] |= bit(i); break;
        }
      }
      bool transitive = true;
      for (int i = 0; transitive && i < n; ++i)
        for_each_bit(base.prec[i], [&](int j) {
          if (base.prec[j] & ~base.prec[i]) transitive = false;
        });
      if (transitive && is_interval([&] {
            Ipomset t = base;
            t.labels.assign(n, "a");
            return t;
          }())) {
        EventSet minimal = 0, maximal = 0;
        for (int i = 0; i < n; ++i) {
          bool has_pred = false;
          for (int j = 0; j < n; ++j) has_pred |= has(base.prec[j], i);
          if (!has_pred) minimal |= bit(i);
          if (base.prec[i] == 0) maximal |= bit(i);
        }
        for (int lc = 0; lc < label_combos; ++lc) {
          Ipomset p = base;
          p.labels.resize(n);
          int code = lc;
          for (int i = 0; i < n; ++i) {
            p.labels[i] = alphabet[code % alphabet.size()];
            code /= int(alphabet.size());
          }
          for_each_subset(minimal, [&](EventSet s) {
            for_each_subset(maximal, [&](EventSet t) {
              p.source = s;
              p.target = t;
              consider(p);
            });
          });
        }
      }
      std::size_t k = 0;
      while (k < rel.size() && rel[k] == 3) rel[k++] = 0;
      if (k == rel.size()) break;
      ++rel[k];
    }
  }
  return out;
}

}  // namespace hdaforge::testkit
