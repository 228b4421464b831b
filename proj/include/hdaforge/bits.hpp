#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace hdaforge {

/// Subset of event positions 0..63.
using EventSet = std::uint64_t;

inline constexpr int max_events = 64;

inline int card(EventSet s) { return std::popcount(s); }

inline EventSet full_set(int n) { return n >= 64 ? ~EventSet{0} : ((EventSet{1} << n) - 1); }

inline EventSet bit(int i) { return EventSet{1} << i; }

inline bool has(EventSet s, int i) { return (s >> i) & 1u; }

template <class F>
void for_each_bit(EventSet s, F&& f) {
  while (s) {
    int i = std::countr_zero(s);
    f(i);
    s &= s - 1;
  }
}

/// Calls f on every subset of s, the empty set included.
template <class F>
void for_each_subset(EventSet s, F&& f) {
  EventSet sub = s;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
}

/// Scatters the low bits of `packed` onto the positions of `support` (ascending).
inline EventSet expand(EventSet packed, EventSet support) {
  EventSet out = 0;
  int k = 0;
  for_each_bit(support, [&](int i) {
    if (has(packed, k)) out |= bit(i);
    ++k;
  });
  return out;
}

/// Inverse of expand: gathers the bits of `s` at positions of `support` into the low bits.
inline EventSet compress(EventSet s, EventSet support) {
  EventSet out = 0;
  int k = 0;
  for_each_bit(support, [&](int i) {
    if (has(s, i)) out |= bit(k);
    ++k;
  });
  return out;
}

inline std::vector<int> members(EventSet s) {
  std::vector<int> out;
  for_each_bit(s, [&](int i) { out.push_back(i); });
  return out;
}

}  // namespace hdaforge
