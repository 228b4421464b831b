// hda-forge: command-line front end.
//
// Exit codes: 0 success, 1 negative answer, 2 bad input or usage.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hdaforge/determinize.hpp"
#include "hdaforge/dot.hpp"
#include "hdaforge/fixtures.hpp"
#include "hdaforge/io.hpp"
#include "hdaforge/kleene.hpp"
#include "hdaforge/translate.hpp"

using namespace hdaforge;

namespace {

/// A path, or fixture:NAME for a built-in example.
Document load(const std::string& source) {
  if (source.rfind("fixture:", 0) == 0) {
    const std::string name = source.substr(8);
    if (auto it = fixtures::complexes().find(name); it != fixtures::complexes().end()) return it->second();
    if (auto it = fixtures::automata().find(name); it != fixtures::automata().end()) return it->second();
    throw error(errc::schema_error, "unknown fixture " + name);
  }
  return read_document_file(source);
}

BoundedLanguage language_of(const Document& d, int bound) {
  if (auto X = std::get_if<Complex>(&d)) return enumerate_language(*X, bound);
  if (auto A = std::get_if<PAutomaton>(&d)) return enumerate_language(*A, bound);
  if (auto e = std::get_if<RationalExpr>(&d)) return eval_expr(*e, bound);
  BoundedLanguage L = std::get<BoundedLanguage>(d);
  std::erase_if(L.forms, [&](const CanonicalForm& c) { return c.length() > bound; });
  L.bound = bound;
  return L;
}

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw error(errc::schema_error, "cannot write " + path);
    out << text;
  }
};

Complex convert_complex(const Complex& X, Variant to) {
  if (included(X.variant, to)) return widen(X, to);
  auto then_widen = [&](Complex Y) { return Y.variant == to ? Y : widen(std::move(Y), to); };
  if (X.variant == Variant::HDA && to == Variant::iHDA) return hda_to_ihda(X);
  if (X.variant == Variant::HDA && to == Variant::coneHDA) return hda_to_cone(X);
  if (X.variant == Variant::iHDA && included(Variant::spHDA, to)) return then_widen(ihda_to_sphda(X));
  if (X.variant == Variant::coneHDA && included(Variant::spHDA, to)) return then_widen(cone_to_sphda(X));
  if (X.variant == Variant::iHDA && to == Variant::spHDA) return ihda_to_sphda(X);
  if (X.variant == Variant::coneHDA && to == Variant::spHDA) return cone_to_sphda(X);
  throw error(errc::not_an_inclusion_edge,
              std::string("no conversion from ") + variant_name(X.variant) + " to " + variant_name(to));
}

Document convert(const Document& d, const std::string& target) {
  if (auto X = std::get_if<Complex>(&d)) {
    if (target == "st") return st_of(*X);
    auto v = parse_variant(target);
    if (!v) throw error(errc::schema_error, "unknown target " + target);
    return convert_complex(*X, *v);
  }
  if (auto A = std::get_if<PAutomaton>(&d)) {
    auto reduced = [&] { return classify_automaton(*A).reduced() ? *A : reduce(*A); };
    if (target == "pHDA") return phda_of_gsta(reduced());
    if (target == "coneHDA") return cone_of_gsta(reduced());
    if (target == "rHDA") return rhda_image(*A);
    throw error(errc::not_an_inclusion_edge, "automata convert to pHDA, coneHDA or rHDA");
  }
  throw error(errc::schema_error, std::string("cannot convert a ") + document_kind(d));
}

std::string automaton_classes(const PAutomaton& A) {
  const AutomatonClass k = classify_automaton(A);
  std::string s;
  auto add = [&](bool on, const char* name) {
    if (on) s += (s.empty() ? "" : " ") + std::string(name);
  };
  add(true, "p-automaton");
  add(k.gst, "gST");
  add(k.st, "ST");
  add(k.proper, "proper");
  add(k.reduced(), "reduced");
  return s;
}

RationalExpr expression_arg(const std::string& arg) {
  if (arg.rfind("fixture:", 0) != 0 && !std::filesystem::exists(arg)) return parse_expr(arg);
  return document_as<RationalExpr>(load(arg));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hda-forge: higher-dimensional automata toolkit"};
  app.require_subcommand(1);
  int bound = 6;
  std::string input, second, target, text;
  Output out;
  bool check = false;

  auto with_input = [&](CLI::App* cmd) { cmd->add_option("input", input, "JSON document or fixture:NAME")->required(); };
  auto with_bound = [&](CLI::App* cmd) { cmd->add_option("--bound,-k", bound, "sparse length bound")->capture_default_str(); };
  auto with_output = [&](CLI::App* cmd) { cmd->add_option("-o,--output", out.path, "output file"); };

  auto* validate = app.add_subcommand("validate", "check a complex against its declared variant");
  with_input(validate);
  auto* classify_cmd = app.add_subcommand("classify", "list every variant a complex satisfies");
  with_input(classify_cmd);
  auto* convert_cmd = app.add_subcommand("convert", "translate between variants");
  with_input(convert_cmd);
  convert_cmd->add_option("--to", target, "variant name, or st for the ST-automaton")->required();
  with_output(convert_cmd);
  auto* lang = app.add_subcommand("lang", "bounded language");
  with_input(lang);
  with_bound(lang);
  with_output(lang);
  auto* member = app.add_subcommand("member", "is an ipomset in the language");
  member->add_option("ipomset", text, "ipomset literal")->required();
  with_input(member);
  with_bound(member);
  auto* equiv = app.add_subcommand("equiv", "compare two bounded languages");
  with_input(equiv);
  equiv->add_option("other", second, "second document")->required();
  with_bound(equiv);
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a p-automaton");
  with_input(reduce_cmd);
  with_output(reduce_cmd);
  auto* determinize = app.add_subcommand("determinize", "deterministic pHDA with the same language");
  with_input(determinize);
  with_output(determinize);
  with_bound(determinize);
  determinize->add_flag("--check", check, "re-check determinism and language equivalence");
  auto* compile_cmd = app.add_subcommand("compile", "pHDA of a rational expression");
  compile_cmd->add_option("expression", text, "expression text, file, or fixture")->required();
  with_output(compile_cmd);
  auto* extract_cmd = app.add_subcommand("extract", "rational expression of a complex");
  with_input(extract_cmd);
  auto* dot = app.add_subcommand("dot", "Graphviz rendering");
  with_input(dot);
  with_output(dot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bound < 0) throw error(errc::bound_exceeded, "bound must be non-negative");
    if (*validate) {
      const Complex X = document_as<Complex>(load(input));
      const auto vs = violations(X, X.variant);
      std::cout << variant_name(X.variant) << (vs.empty() ? ": valid\n" : ": invalid\n");
      for (const Violation& v : vs) {
        std::cout << "  " << v.rule;
        for (const auto& c : v.cells) std::cout << " " << c;
        std::cout << " A=" << detail::show_set(v.A) << " B=" << detail::show_set(v.B);
        if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
        std::cout << "\n";
      }
      return vs.empty() ? 0 : 1;
    }
    if (*classify_cmd) {
      const Document d = load(input);
      if (auto A = std::get_if<PAutomaton>(&d)) {
        std::cout << automaton_classes(*A) << "\n";
        return 0;
      }
      const std::string s = classify_string(document_as<Complex>(d));
      std::cout << (s.empty() ? "none" : s) << "\n";
      return s.empty() ? 1 : 0;
    }
    if (*convert_cmd) {
      out.write(write_document(convert(load(input), target)));
      return 0;
    }
    if (*lang) {
      out.write(write_document(language_of(load(input), bound)));
      return 0;
    }
    if (*member) {
      const CanonicalForm q = canon(parse_ipomset(text));
      const bool yes = language_of(load(input), std::max(bound, q.length())).contains(q);
      std::cout << (yes ? "yes" : "no") << "\n";
      return yes ? 0 : 1;
    }
    if (*equiv) {
      const auto eq = compare_languages(language_of(load(input), bound), language_of(load(second), bound));
      if (eq.equal) {
        std::cout << "equal up to " << bound << "\n";
        return 0;
      }
      std::cout << "different: " << (eq.witness ? to_literal(*eq.witness) : "?") << "\n";
      return 1;
    }
    if (*reduce_cmd) {
      out.write(write_document(reduce(document_as<PAutomaton>(load(input)))));
      return 0;
    }
    if (*determinize) {
      const Complex X = document_as<Complex>(load(input));
      const Complex Y = det(X);
      out.write(write_document(Y));
      if (!check) return 0;
      const bool d = is_deterministic(Y).deterministic();
      const bool e = lang_equiv(X, Y, bound).equal;
      std::cerr << "deterministic: " << (d ? "yes" : "no") << "\nequivalent up to " << bound << ": "
                << (e ? "yes" : "no") << "\n";
      return d && e ? 0 : 1;
    }
    if (*compile_cmd) {
      out.write(write_document(compile(expression_arg(text))));
      return 0;
    }
    if (*extract_cmd) {
      std::cout << print(extract(document_as<Complex>(load(input)))) << "\n";
      return 0;
    }
    if (*dot) {
      const Document d = load(input);
      if (auto A = std::get_if<PAutomaton>(&d)) {
        out.write(to_dot(*A));
      } else {
        out.write(to_dot(document_as<Complex>(d)));
      }
      return 0;
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
