#pragma once

// Graphviz export. Vertices are nodes and edges are arrows from their
// lower to their upper face. Each 2-cell becomes a shaded cluster around
// its four corners, and higher cells are listed as record nodes. Missing
// corners and missing endpoints of partial edges are point nodes.

#include <sstream>
#include <string>

#include "hdaforge/complex.hpp"
#include "hdaforge/pautomaton.hpp"

namespace hdaforge {

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string join_labels(const Conclist& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? " " : "") + u[i];
  return s;
}

}  // namespace detail

inline std::string to_dot(const Complex& X) {
  using detail::quote;
  std::ostringstream out;
  out << "digraph complex {\n  rankdir=LR;\n  node [shape=circle, label=\"\", width=0.2];\n";
  auto marks = [&](int x) {
    std::string s;
    if (X.bot().count(x)) s += ", penwidth=2";
    if (X.top().count(x)) s += ", peripheries=2";
    return s;
  };
  std::vector<char> placed(X.size(), 0);
  for (int x = 0; x < X.size(); ++x) {
    const Cell& c = X.cell(x);
    if (c.dimension() != 2) continue;
    out << "  subgraph " << quote("cluster_" + c.id) << " {\n    style=filled; color=gray85; label="
        << quote(c.id + " [" + detail::join_labels(c.ev) + "]") << ";\n";
    for (EventSet A : {EventSet(0b11), EventSet(0b01), EventSet(0b10), EventSet(0)}) {
      CellSet corner = X.face(x, A, 0b11 & ~A);
      if (corner.empty())
        out << "    " << quote(c.id + ".corner" + std::to_string(A)) << " [shape=point, style=dotted];\n";
      for (int z : corner)
        if (!placed[z]) {
          placed[z] = 1;
          out << "    " << quote(X.cell(z).id) << " [xlabel=" << quote(X.cell(z).id) << marks(z) << "];\n";
        }
    }
    out << "  }\n";
  }
  for (int x = 0; x < X.size(); ++x) {
    const Cell& c = X.cell(x);
    if (c.dimension() == 0 && !placed[x])
      out << "  " << quote(c.id) << " [xlabel=" << quote(c.id) << marks(x) << "];\n";
    if (c.dimension() > 2)
      out << "  " << quote(c.id) << " [shape=record, label=" << quote("{" + c.id + "|" + detail::join_labels(c.ev) + "}")
          << marks(x) << "];\n";
  }
  for (int x = 0; x < X.size(); ++x) {
    const Cell& c = X.cell(x);
    if (c.dimension() != 1) continue;
    auto end = [&](EventSet A, EventSet B, const char* tag) {
      CellSet f = X.face(x, A, B);
      if (!f.empty()) return X.cell(*f.begin()).id;
      const std::string stub = c.id + tag;
      out << "  " << quote(stub) << " [shape=point];\n";
      return stub;
    };
    const std::string from = end(1, 0, ".src"), to = end(0, 1, ".tgt");
    std::string attrs = "label=" + quote(c.id + ": " + c.ev[0]);
    if (X.bot().count(x)) attrs += ", penwidth=2";
    if (X.top().count(x)) attrs += ", color=\"black:black\"";
    out << "  " << quote(from) << " -> " << quote(to) << " [" << attrs << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline std::string to_dot(const PAutomaton& A) {
  using detail::quote;
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int q = 0; q < A.num_states(); ++q) {
    const AState& s = A.states()[q];
    out << "  " << quote(s.id) << " [label=" << quote(s.id + "\\n[" + detail::join_labels(s.mu) + "]");
    if (A.bot().count(q)) out << ", penwidth=2";
    if (A.top().count(q)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const AEdge& e : A.edges())
    out << "  " << quote(A.states()[e.from].id) << " -> " << quote(A.states()[e.to].id)
        << " [label=" << quote(e.label.encoding()) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace hdaforge
