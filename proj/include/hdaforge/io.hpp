#pragma once

// JSON documents: complexes, automata, expressions and bounded languages.
//
//   {"version": "hda-forge/1", "kind": "complex", "variant": ..., "cells": [...],
//    "faces": [...], "bot": [...], "top": [...]}
//
// Index lists (S, T, A, B) are 1-based. Reading accepts a bare payload
// without version and kind; the kind is then inferred from its keys.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "hdaforge/complex.hpp"
#include "hdaforge/kleene.hpp"
#include "hdaforge/language.hpp"
#include "hdaforge/literal.hpp"
#include "hdaforge/pautomaton.hpp"

namespace hdaforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* format_version = "hda-forge/1";

using Document = std::variant<Complex, PAutomaton, RationalExpr, BoundedLanguage>;

inline const char* document_kind(const Document& d) {
  static const char* names[] = {"complex", "automaton", "expression", "language"};
  return names[d.index()];
}

// ---------------------------------------------------------------- writing

namespace detail {

inline Json json_indices(EventSet s) {
  Json out = Json::array();
  for_each_bit(s, [&](int i) { out.push_back(i + 1); });
  return out;
}

inline std::string label_text(const CanonicalForm& c) {
  std::string s;
  for (std::size_t k = 0; k < c.steps.size(); ++k) s += (k ? " ; " : "") + c.steps[k].encoding();
  return s;
}

inline Json header(const char* kind) {
  Json j;
  j["version"] = format_version;
  j["kind"] = kind;
  return j;
}

}  // namespace detail

inline Json to_json(const Complex& X) {
  Json j = detail::header("complex");
  j["variant"] = variant_name(X.variant);
  Json cells = Json::array();
  for (const Cell& c : X.cells()) {
    Json cell;
    cell["id"] = c.id;
    cell["ev"] = c.ev;
    if (c.iface) {
      cell["S"] = detail::json_indices(c.iface->S);
      cell["T"] = detail::json_indices(c.iface->T);
    }
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  Json faces = Json::array();
  for (const auto& [key, targets] : X.faces()) {
    Json f;
    f["cell"] = X.cell(key.cell).id;
    f["A"] = detail::json_indices(key.A);
    f["B"] = detail::json_indices(key.B);
    f["to"] = X.ids(targets);
    faces.push_back(std::move(f));
  }
  j["faces"] = std::move(faces);
  j["bot"] = X.ids(X.bot());
  j["top"] = X.ids(X.top());
  return j;
}

inline Json to_json(const PAutomaton& A) {
  Json j = detail::header("automaton");
  Json states = Json::array(), edges = Json::array();
  for (const AState& q : A.states()) states.push_back(Json{{"id", q.id}, {"mu", q.mu}});
  for (const AEdge& e : A.edges())
    edges.push_back(Json{{"id", e.id},
                         {"from", A.states()[e.from].id},
                         {"to", A.states()[e.to].id},
                         {"label", detail::label_text(e.label)}});
  j["states"] = std::move(states);
  j["edges"] = std::move(edges);
  auto ids = [&](const std::set<int>& s) {
    std::vector<std::string> out;
    for (int q : s) out.push_back(A.states()[q].id);
    return out;
  };
  j["bot"] = ids(A.bot());
  j["top"] = ids(A.top());
  return j;
}

inline Json to_json(const RationalExpr& e) {
  Json j = detail::header("expression");
  j["expression"] = print(e);
  return j;
}

inline Json to_json(const BoundedLanguage& L) {
  Json j = detail::header("language");
  j["bound"] = L.bound;
  j["exact"] = L.exact;
  j["forms"] = L.literals();
  return j;
}

inline Json to_json(const Document& d) {
  return std::visit([](const auto& x) { return to_json(x); }, d);
}

/// Two-space indented JSON with a trailing newline.
inline std::string write_document(const Document& d) { return to_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------- reading

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& path, const std::string& msg) {
  throw error(errc::schema_error, "at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  Reader at(const std::string& key) const {
    require_object();
    if (!j_.contains(key)) schema_fail(path_ + "/" + key, "missing field");
    return Reader(j_.at(key), path_ + "/" + key);
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  std::vector<Reader> items() const {
    if (!j_.is_array()) schema_fail(path_, "expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "/" + std::to_string(i));
    return out;
  }

  std::string str() const {
    if (!j_.is_string()) schema_fail(path_, "expected a string");
    return j_.get<std::string>();
  }
  int integer() const {
    if (!j_.is_number_integer()) schema_fail(path_, "expected an integer");
    return j_.get<int>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) schema_fail(path_, "expected a boolean");
    return j_.get<bool>();
  }
  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const Reader& r : items()) out.push_back(r.str());
    return out;
  }
  Conclist conclist() const {
    Conclist out;
    for (const Reader& r : items()) {
      std::string s = r.str();
      if (s.empty() || !std::all_of(s.begin(), s.end(), is_label_char)) schema_fail(r.path(), "bad label");
      out.push_back(s);
    }
    return out;
  }
  EventSet indices(int dim) const {
    EventSet s = 0;
    for (const Reader& r : items()) {
      const int i = r.integer();
      if (i < 1 || i > dim) schema_fail(r.path(), "index out of range");
      if (has_bit(s, i - 1)) schema_fail(r.path(), "repeated index");
      s |= bit(i - 1);
    }
    return s;
  }

  void require_object() const {
    if (!j_.is_object()) schema_fail(path_, "expected an object");
  }

 private:
  static bool has_bit(EventSet s, int i) { return hdaforge::has(s, i); }
  const Json& j_;
  std::string path_;
};

/// Runs f, turning library errors into schema errors at path.
template <class F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const error& e) {
    if (e.code() == errc::schema_error) throw;
    schema_fail(path, e.what());
  }
}

inline CanonicalForm parse_label(const Reader& r) {
  RationalExpr e = at_path(r.path(), [&] { return parse_expr(r.str()); });
  std::vector<RationalExpr> parts = e.kind == RationalExpr::Kind::concat ? e.kids : std::vector<RationalExpr>{e};
  std::optional<CanonicalForm> form;
  for (const RationalExpr& p : parts) {
    if (p.kind != RationalExpr::Kind::atom) schema_fail(r.path(), "label must be a sequence of steps");
    form = form ? concat(*form, step_form(p.step)) : std::optional(step_form(p.step));
    if (!form) schema_fail(r.path(), "steps do not glue");
  }
  return *form;
}

inline Complex read_complex(const Reader& r) {
  const std::string vname = r.at("variant").str();
  auto v = parse_variant(vname);
  if (!v) schema_fail(r.path() + "/variant", "unknown variant " + vname);
  Complex X(*v);
  for (const Reader& c : r.at("cells").items()) {
    Conclist ev = c.at("ev").conclist();
    std::optional<Interface> iface;
    if (c.has("S") || c.has("T")) {
      iface = Interface{};
      if (c.has("S")) iface->S = c.at("S").indices(int(ev.size()));
      if (c.has("T")) iface->T = c.at("T").indices(int(ev.size()));
    }
    const std::string id = c.at("id").str();
    if (X.contains(id)) schema_fail(c.path() + "/id", "duplicate id " + id);
    at_path(c.path(), [&] { return X.add_cell(id, std::move(ev), iface); });
  }
  auto cell = [&](const Reader& id) {
    const std::string s = id.str();
    if (!X.contains(s)) schema_fail(id.path(), "unknown cell " + s);
    return X.index(s);
  };
  for (const Reader& f : r.at("faces").items()) {
    const int x = cell(f.at("cell"));
    const int dim = X.cell(x).dimension();
    const EventSet A = f.at("A").indices(dim), B = f.at("B").indices(dim);
    if (A & B) schema_fail(f.path(), "A and B overlap");
    if (!A && !B) schema_fail(f.path(), "identity face");
    X.add_empty_face(x, A, B);
    for (const Reader& t : f.at("to").items()) {
      const int z = cell(t);
      at_path(t.path(), [&] {
        X.add_face(x, A, B, z);
        return 0;
      });
    }
  }
  for (const Reader& b : r.at("bot").items()) X.add_bot(cell(b));
  for (const Reader& t : r.at("top").items()) X.add_top(cell(t));
  return X;
}

inline PAutomaton read_automaton(const Reader& r) {
  PAutomaton A;
  for (const Reader& q : r.at("states").items()) {
    const std::string id = q.at("id").str();
    if (A.has_state(id)) schema_fail(q.path() + "/id", "duplicate id " + id);
    A.add_state(id, q.at("mu").conclist());
  }
  auto state = [&](const Reader& id) {
    const std::string s = id.str();
    if (!A.has_state(s)) schema_fail(id.path(), "unknown state " + s);
    return A.state(s);
  };
  for (const Reader& e : r.at("edges").items()) {
    const std::string id = e.at("id").str();
    if (A.has_edge(id)) schema_fail(e.path() + "/id", "duplicate id " + id);
    const int from = state(e.at("from")), to = state(e.at("to"));
    CanonicalForm label = parse_label(e.at("label"));
    at_path(e.path(), [&] { return A.add_edge(id, from, to, label); });
  }
  for (const Reader& b : r.at("bot").items()) A.add_bot(state(b));
  for (const Reader& t : r.at("top").items()) A.add_top(state(t));
  return A;
}

inline BoundedLanguage read_language(const Reader& r) {
  BoundedLanguage L;
  L.bound = r.at("bound").integer();
  L.exact = r.has("exact") ? r.at("exact").boolean() : true;
  for (const Reader& f : r.at("forms").items())
    L.forms.insert(at_path(f.path(), [&] { return canon(parse_ipomset(f.str())); }));
  return L;
}

}  // namespace detail

inline Document from_json(const Json& j) {
  detail::Reader r(j, "");
  r.require_object();
  if (r.has("version") && r.at("version").str() != format_version)
    detail::schema_fail("/version", "unsupported version " + r.at("version").str());
  std::string kind;
  if (r.has("kind")) {
    kind = r.at("kind").str();
  } else if (r.has("cells")) {
    kind = "complex";
  } else if (r.has("states")) {
    kind = "automaton";
  } else if (r.has("expression")) {
    kind = "expression";
  } else if (r.has("forms")) {
    kind = "language";
  } else {
    detail::schema_fail("", "cannot tell the document kind");
  }
  if (kind == "complex") return detail::read_complex(r);
  if (kind == "automaton") return detail::read_automaton(r);
  if (kind == "expression")
    return detail::at_path("/expression", [&] { return parse_expr(r.at("expression").str()); });
  if (kind == "language") return detail::read_language(r);
  detail::schema_fail("/kind", "unknown kind " + kind);
}

inline Document read_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    detail::schema_fail("", std::string("malformed JSON: ") + e.what());
  }
  return from_json(j);
}

inline Document read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::schema_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return read_document(ss.str());
}

template <class T>
T document_as(const Document& d) {
  if (auto p = std::get_if<T>(&d)) return *p;
  throw error(errc::schema_error, std::string("at /kind: unexpected document kind ") + document_kind(d));
}

}  // namespace hdaforge
