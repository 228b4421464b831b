#pragma once

// Finite precubical structures with sparse, possibly partial or relational,
// face tables. Cells are addressed by position; ids are kept for output.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ipomset.hpp"

namespace hdaforge {

enum class Variant : std::uint8_t { HDA, iHDA, spHDA, srHDA, pHDA, rHDA, coneHDA };

inline constexpr std::array<Variant, 7> all_variants = {Variant::HDA,  Variant::iHDA, Variant::spHDA,  Variant::srHDA,
                                                        Variant::pHDA, Variant::rHDA, Variant::coneHDA};

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::HDA: return "HDA";
    case Variant::iHDA: return "iHDA";
    case Variant::coneHDA: return "coneHDA";
    case Variant::spHDA: return "spHDA";
    case Variant::srHDA: return "srHDA";
    case Variant::pHDA: return "pHDA";
    case Variant::rHDA: return "rHDA";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : all_variants)
    if (s == variant_name(v)) return v;
  return std::nullopt;
}

inline bool has_interfaces(Variant v) { return v == Variant::iHDA || v == Variant::coneHDA; }
inline bool is_functional(Variant v) { return v != Variant::srHDA && v != Variant::rHDA; }
inline bool is_lax(Variant v) { return v == Variant::pHDA || v == Variant::rHDA; }

struct Interface {
  EventSet S = 0;
  EventSet T = 0;
  auto operator<=>(const Interface&) const = default;
};

struct Cell {
  std::string id;
  Conclist ev;
  std::optional<Interface> iface;
  int dimension() const { return int(ev.size()); }
};

struct FaceKey {
  int cell;
  EventSet A;
  EventSet B;
  auto operator<=>(const FaceKey&) const = default;
};

using CellSet = std::set<int>;

class Complex {
 public:
  Variant variant = Variant::HDA;

  Complex() = default;
  explicit Complex(Variant v) : variant(v) {}

  int add_cell(std::string id, Conclist ev, std::optional<Interface> iface = std::nullopt) {
    if (ev.size() > std::size_t(max_events)) throw error(errc::bound_exceeded, "cell " + id + " has too many events");
    if (ids_.count(id)) throw error(errc::precondition_violated, "duplicate cell id " + id);
    if (iface && ((iface->S | iface->T) & ~full_set(int(ev.size()))))
      throw error(errc::index_out_of_range, "interface of " + id + " exceeds its events");
    ids_[id] = int(cells_.size());
    cells_.push_back(Cell{std::move(id), std::move(ev), iface});
    return int(cells_.size()) - 1;
  }

  void add_face(int x, EventSet A, EventSet B, int z) {
    check_indices(x, A, B);
    check_cell(z);
    if (A == 0 && B == 0) {
      if (z != x) throw error(errc::precondition_violated, "identity face of " + cells_[x].id + " must be itself");
      return;
    }
    const EventSet rest = full_set(cells_[x].dimension()) & ~(A | B);
    if (restrict_to(cells_[x].ev, rest) != cells_[z].ev)
      throw error(errc::precondition_violated,
                  "face of " + cells_[x].id + " cannot land in " + cells_[z].id + ": conclists differ");
    faces_[FaceKey{x, A, B}].insert(z);
  }
  void add_face(const std::string& x, EventSet A, EventSet B, const std::string& z) { add_face(index(x), A, B, index(z)); }

  /// Declares a face entry that is present but empty (relational reading).
  void add_empty_face(int x, EventSet A, EventSet B) {
    check_indices(x, A, B);
    faces_[FaceKey{x, A, B}];
  }

  void add_bot(int x) { bot_.insert(check_cell(x)); }
  void add_top(int x) { top_.insert(check_cell(x)); }
  void add_bot(const std::string& x) { add_bot(index(x)); }
  void add_top(const std::string& x) { add_top(index(x)); }
  void set_iface(int x, std::optional<Interface> i) { cells_[check_cell(x)].iface = i; }

  CellSet face(int x, EventSet A, EventSet B) const {
    check_indices(x, A, B);
    if (A == 0 && B == 0) return {x};
    auto it = faces_.find(FaceKey{x, A, B});
    return it == faces_.end() ? CellSet{} : it->second;
  }
  CellSet face(const std::string& x, EventSet A, EventSet B) const { return face(index(x), A, B); }
  bool has_key(int x, EventSet A, EventSet B) const { return (A == 0 && B == 0) || faces_.count(FaceKey{x, A, B}); }

  int size() const { return int(cells_.size()); }
  const Cell& cell(int x) const { return cells_[check_cell(x)]; }
  const std::vector<Cell>& cells() const { return cells_; }
  const std::map<FaceKey, CellSet>& faces() const { return faces_; }
  const CellSet& bot() const { return bot_; }
  const CellSet& top() const { return top_; }
  bool contains(const std::string& id) const { return ids_.count(id) > 0; }

  int index(const std::string& id) const {
    auto it = ids_.find(id);
    if (it == ids_.end()) throw error(errc::unknown_cell, "unknown cell " + id);
    return it->second;
  }

  std::vector<std::string> ids(const CellSet& s) const {
    std::vector<std::string> out;
    for (int x : s) out.push_back(cells_[x].id);
    return out;
  }

 private:
  int check_cell(int x) const {
    if (x < 0 || x >= size()) throw error(errc::unknown_cell, "cell index " + std::to_string(x));
    return x;
  }
  void check_indices(int x, EventSet A, EventSet B) const {
    check_cell(x);
    if ((A | B) & ~full_set(cells_[x].dimension()))
      throw error(errc::index_out_of_range, "index set exceeds events of " + cells_[x].id);
    if (A & B) throw error(errc::index_out_of_range, "A and B overlap on " + cells_[x].id);
  }

  std::vector<Cell> cells_;
  std::map<std::string, int> ids_;
  std::map<FaceKey, CellSet> faces_;
  CellSet bot_, top_;
};

/// Key of the composite δ_{C,D}∘δ_{A,B} on x, with C,D indexing the face.
inline FaceKey compose_key(int x, int dim, EventSet A, EventSet B, EventSet C, EventSet D) {
  const EventSet rest = full_set(dim) & ~(A | B);
  return FaceKey{x, A | expand(C, rest), B | expand(D, rest)};
}

inline Interface face_interface(Interface i, int dim, EventSet A, EventSet B) {
  const EventSet rest = full_set(dim) & ~(A | B);
  return Interface{compress(i.S & ~B, rest), compress(i.T & ~A, rest)};
}

// ---------------------------------------------------------------- validation

struct Violation {
  std::string rule;
  std::vector<std::string> cells;
  EventSet A = 0;
  EventSet B = 0;
  std::string detail;
};

struct ValidationReport {
  Variant variant = Variant::HDA;
  std::map<Variant, bool> verdicts;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string show_set(EventSet s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](int i) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  });
  return out + "}";
}

class Validator {
 public:
  Validator(const Complex& X, Variant v, bool inferred) : X_(X), v_(v), inferred_(inferred) {}

  std::vector<Violation> run() {
    if (has_interfaces(v_)) resolve_interfaces();
    if (!out_.empty()) return out_;
    for (int x = 0; x < X_.size(); ++x) {
      const int n = X_.cell(x).dimension();
      for_each_subset(full_set(n), [&](EventSet A) {
        for_each_subset(full_set(n) & ~A, [&](EventSet B) { check_key(x, n, A, B); });
      });
    }
    if (v_ == Variant::iHDA && !inferred_) {
      for (int x : X_.bot())
        if (iface_[x].S != full_set(X_.cell(x).dimension())) report("ihda.bot", {x}, 0, 0, "initial cell needs S=U");
      for (int x : X_.top())
        if (iface_[x].T != full_set(X_.cell(x).dimension())) report("ihda.top", {x}, 0, 0, "accepting cell needs T=U");
    }
    return out_;
  }

 private:
  void report(std::string rule, std::vector<int> cells, EventSet A, EventSet B, std::string detail) {
    Violation v{std::move(rule), {}, A, B, std::move(detail)};
    for (int c : cells) v.cells.push_back(X_.cell(c).id);
    out_.push_back(std::move(v));
  }

  void resolve_interfaces() {
    iface_.assign(X_.size(), Interface{});
    for (int x = 0; x < X_.size(); ++x) {
      const Cell& c = X_.cell(x);
      if (!inferred_) {
        if (!c.iface) {
          report("iface.missing", {x}, 0, 0, "cell carries no interface");
          continue;
        }
        iface_[x] = *c.iface;
        continue;
      }
      const int n = c.dimension();
      EventSet lower = 0, upper = 0;
      for (int i = 0; i < n; ++i) {
        if (!X_.face(x, bit(i), 0).empty()) lower |= bit(i);
        if (!X_.face(x, 0, bit(i)).empty()) upper |= bit(i);
      }
      iface_[x] = Interface{full_set(n) & ~lower, full_set(n) & ~upper};
    }
  }

  bool allowed(int x, EventSet A, EventSet B) const {
    const Interface i = iface_[x];
    if (v_ == Variant::iHDA) return !(A & i.S) && !(B & i.T);
    // cone: pure lower faces avoiding S, pure upper faces avoiding T
    if (A && B) return false;
    return !(A & i.S) && !(B & i.T);
  }

  Interface expected_target(int x, int n, EventSet A, EventSet B) const {
    if (v_ == Variant::iHDA) return face_interface(iface_[x], n, A, B);
    const int m = n - card(A | B);
    const EventSet rest = full_set(n) & ~(A | B);
    if (A) return Interface{compress(iface_[x].S, rest), full_set(m)};
    return Interface{full_set(m), compress(iface_[x].T, rest)};
  }

  void check_key(int x, int n, EventSet A, EventSet B) {
    const bool identity = A == 0 && B == 0;
    const CellSet direct = X_.face(x, A, B);
    if (!identity) {
      if (is_functional(v_) && direct.size() > 1)
        report("functional", {x}, A, B, "face has " + std::to_string(direct.size()) + " values");
      if (v_ == Variant::HDA && direct.empty()) report("hda.total", {x}, A, B, "face undefined");
      if (has_interfaces(v_)) {
        const bool ok = allowed(x, A, B);
        if (ok && direct.empty())
          report(std::string(variant_name(v_)) + ".missing", {x}, A, B, "face required by interfaces is undefined");
        if (!ok && !direct.empty())
          report(std::string(variant_name(v_)) + ".forbidden", {x}, A, B, "face conflicts with interfaces");
        if (ok)
          for (int z : direct)
            if (iface_[z] != expected_target(x, n, A, B))
              report(std::string(variant_name(v_)) + ".target", {x, z}, A, B, "face lands on a cell with the wrong interface");
      }
    }
    if (identity) return;
    // Every splitting (A1,B1) ≤ (A,B): composite through δ_{A1,B1} versus direct.
    for_each_subset(A, [&](EventSet A1) {
      for_each_subset(B, [&](EventSet B1) {
        if ((A1 | B1) == 0 || (A1 == A && B1 == B)) return;
        const EventSet rest = full_set(n) & ~(A1 | B1);
        const EventSet C = compress(A & ~A1, rest), D = compress(B & ~B1, rest);
        CellSet composite;
        for (int y : X_.face(x, A1, B1))
          for (int w : X_.face(y, C, D)) composite.insert(w);
        if (is_lax(v_)) {
          for (int w : composite)
            if (!direct.count(w)) {
              report("lax", {x, w}, A, B, "composite through " + show_set(A1) + "," + show_set(B1) + " not contained in direct face");
              return;
            }
        } else if (composite != direct) {
          report("strict", {x}, A, B, "composite through " + show_set(A1) + "," + show_set(B1) + " differs from direct face");
        }
      });
    });
  }

  const Complex& X_;
  Variant v_;
  bool inferred_;
  std::vector<Interface> iface_;
  std::vector<Violation> out_;
};

inline bool carries_interfaces(const Complex& X) {
  for (const Cell& c : X.cells())
    if (c.iface) return true;
  return false;
}

}  // namespace detail

/// Violations of X read as variant v. Interface variants use the cells'
/// interfaces when present and infer them from missing faces otherwise.
inline std::vector<Violation> violations(const Complex& X, Variant v) {
  const bool inferred = has_interfaces(v) && !detail::carries_interfaces(X);
  return detail::Validator(X, v, inferred).run();
}

inline ValidationReport validate(const Complex& X) {
  ValidationReport r;
  r.variant = X.variant;
  for (Variant v : all_variants) {
    auto vs = violations(X, v);
    r.verdicts[v] = vs.empty();
    if (v == X.variant) r.violations = std::move(vs);
  }
  return r;
}

inline std::vector<Variant> classify(const Complex& X) {
  std::vector<Variant> out;
  for (Variant v : all_variants)
    if (violations(X, v).empty()) out.push_back(v);
  return out;
}

inline std::string classify_string(const Complex& X) {
  std::string out;
  for (Variant v : classify(X)) {
    if (!out.empty()) out += ' ';
    out += variant_name(v);
  }
  return out;
}

// ---------------------------------------------------------------- steps

/// Up- and downsteps. An upstep x -A-> y needs x ∈ δ⁰_A(y); a downstep
/// y -B-> z needs z ∈ δ¹_B(y). A and B index the larger cell.
struct StepEdge {
  StepKind kind;
  int from;
  int to;
  EventSet changed;
};

inline std::vector<std::vector<StepEdge>> step_graph(const Complex& X) {
  std::vector<std::vector<StepEdge>> out(X.size());
  for (const auto& [key, targets] : X.faces()) {
    if (key.A && !key.B)
      for (int x : targets) out[x].push_back(StepEdge{StepKind::starter, x, key.cell, key.A});
    if (key.B && !key.A)
      for (int z : targets) out[key.cell].push_back(StepEdge{StepKind::terminator, key.cell, z, key.B});
  }
  return out;
}

/// The step label of an edge as a discrete ipomset step.
inline Step step_label(const Complex& X, const StepEdge& e) {
  if (e.kind == StepKind::starter) return Step::make_starter(X.cell(e.to).ev, e.changed);
  return Step::make_terminator(X.cell(e.from).ev, e.changed);
}

/// Restriction to the cells satisfying keep, ids preserved.
template <class Pred>
Complex restrict_cells(const Complex& X, Pred keep) {
  Complex Y(X.variant);
  std::vector<int> map(X.size(), -1);
  for (int x = 0; x < X.size(); ++x)
    if (keep(x)) map[x] = Y.add_cell(X.cell(x).id, X.cell(x).ev, X.cell(x).iface);
  for (const auto& [key, targets] : X.faces()) {
    if (map[key.cell] < 0) continue;
    bool any = false;
    for (int z : targets)
      if (map[z] >= 0) {
        Y.add_face(map[key.cell], key.A, key.B, map[z]);
        any = true;
      }
    if (!any && targets.empty()) Y.add_empty_face(map[key.cell], key.A, key.B);
  }
  for (int x : X.bot())
    if (map[x] >= 0) Y.add_bot(map[x]);
  for (int x : X.top())
    if (map[x] >= 0) Y.add_top(map[x]);
  return Y;
}

/// Cells on some path from an initial to an accepting cell.
inline Complex trim(const Complex& X) {
  auto g = step_graph(X);
  std::vector<std::vector<int>> rev(X.size());
  for (auto& edges : g)
    for (auto& e : edges) rev[e.to].push_back(e.from);
  auto sweep = [&](const CellSet& start, auto next) {
    std::vector<char> seen(X.size(), 0);
    std::vector<int> stack(start.begin(), start.end());
    for (int x : stack) seen[x] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      next(x, [&](int y) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      });
    }
    return seen;
  };
  auto fwd = sweep(X.bot(), [&](int x, auto push) {
    for (auto& e : g[x]) push(e.to);
  });
  auto bwd = sweep(X.top(), [&](int x, auto push) {
    for (int y : rev[x]) push(y);
  });
  return restrict_cells(X, [&](int x) { return fwd[x] && bwd[x]; });
}

/// Adds every composite face forced by the lax law, until stable. With a
/// filter, only composite keys it accepts are filled in.
inline Complex saturate(Complex X, const std::function<bool(const FaceKey&)>& only = nullptr) {
  bool changed = true;
  while (changed) {
    changed = false;
    const auto snapshot = X.faces();
    for (const auto& [key, targets] : snapshot)
      for (int y : targets) {
        for (const auto& [k2, t2] : snapshot) {
          if (k2.cell != y) continue;
          FaceKey c = compose_key(key.cell, X.cell(key.cell).dimension(), key.A, key.B, k2.A, k2.B);
          if (only && !only(c)) continue;
          for (int w : t2)
            if (!X.face(c.cell, c.A, c.B).count(w)) {
              X.add_face(c.cell, c.A, c.B, w);
              changed = true;
            }
        }
      }
  }
  return X;
}

}  // namespace hdaforge
