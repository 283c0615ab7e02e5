#pragma once

// Command-line front end. run() never writes outside the given streams and
// returns 0 on success or pass, 1 on a failed verification, 2 on bad input.

#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hopfquiver/bimodule.hpp"
#include "hopfquiver/error.hpp"
#include "hopfquiver/groups.hpp"
#include "hopfquiver/hopfalg.hpp"
#include "hopfquiver/quiver.hpp"
#include "hopfquiver/scalars.hpp"
#include "hopfquiver/session.hpp"
#include "hopfquiver/verify.hpp"

namespace hopfquiver::cli {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

// Splits at `sep` outside parentheses.
inline std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced ')' in '" + s + "'");
    if (ch == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '(' in '" + s + "'");
  parts.push_back(trim(cur));
  return parts;
}

// Top-level parenthesized groups of s, or nullopt if s is not a sequence of them.
inline std::optional<std::vector<std::string>> paren_groups(const std::string& s) {
  std::vector<std::string> groups;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ') {
      ++i;
      continue;
    }
    if (s[i] != '(') return std::nullopt;
    int depth = 0;
    std::size_t j = i;
    for (; j < s.size(); ++j) {
      if (s[j] == '(') ++depth;
      if (s[j] == ')' && --depth == 0) break;
    }
    if (j == s.size()) throw ParseError("unbalanced '(' in '" + s + "'");
    groups.push_back(s.substr(i + 1, j - i - 1));
    i = j + 1;
  }
  return groups;
}

inline Arrow parse_arrow(const HopfAlgebra& h, const std::string& interior) {
  auto parts = split_top_level(interior, ',');
  if (parts.size() != 3) throw ParseError("arrow '(" + interior + ")' must be (source, class element, index)");
  const Group& G = h.group();
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("arrow index '" + parts[2] + "' is not an integer");
  }
  Arrow a{G.parse_element(parts[0]), G.parse_element(parts[1]), k};
  if (!h.quiver().contains(a)) throw ParseError("arrow (" + interior + ") is not in the quiver");
  return a;
}

}  // namespace detail

/// A factor is "E<n>_<i>" (cyclic group, r = K), "X" or "X^<n>" (trivial
/// group loop), a sequence of arrow triples "(x, c, k)" written a_n first,
/// or a vertex name.
inline Path parse_factor(const HopfAlgebra& h, const std::string& raw) {
  std::string text = detail::trim(raw);
  if (text.empty()) throw ParseError("empty factor");
  static const std::regex e_notation(R"(E(\d+)_(-?\d+))");
  static const std::regex x_notation(R"(X(\^(\d+))?)");
  std::smatch m;
  if (std::regex_match(text, m, e_notation)) return cyclic_path(h, std::stoi(m[1]), std::stoll(m[2]));
  if (std::regex_match(text, m, x_notation)) return loop_path(h, m[2].matched ? std::stoi(m[2]) : 1);
  if (auto groups = detail::paren_groups(text); groups && !groups->empty() &&
                                                detail::split_top_level(groups->front(), ',').size() > 1) {
    std::vector<Arrow> arrows;
    for (auto it = groups->rbegin(); it != groups->rend(); ++it) arrows.push_back(detail::parse_arrow(h, *it));
    return h.path(std::move(arrows));
  }
  return h.vertex(h.group().parse_element(text));
}

/// Product of "*"-separated factors, left to right.
inline GradedVector parse_expression(const HopfAlgebra& h, const std::string& expr) {
  auto factors = detail::split_top_level(expr, '*');
  GradedVector acc(parse_factor(h, factors.front()), h.field().one());
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = h.multiply(acc, GradedVector(parse_factor(h, factors[i]), h.field().one()));
  return acc;
}

namespace detail {

struct Options {
  std::string group = "trivial";
  std::string ram;
  std::string module;
  std::string q;
  std::string field;
  std::string window;
  std::string format = "text";
  std::string session;
  std::string input;
  std::optional<int> degree;
};

struct Context {
  Session session;
  json inputs;
};

inline std::pair<std::int64_t, std::int64_t> parse_window(const std::string& text) {
  auto sep = text.find_first_of(",:", 1);
  if (sep == std::string::npos) throw ParseError("--window expects lo,hi");
  try {
    return {std::stoll(text.substr(0, sep)), std::stoll(text.substr(sep + 1))};
  } catch (const std::exception&) {
    throw ParseError("--window expects integers lo,hi, got '" + text + "'");
  }
}

inline Field field_from_options(const Options& o) {
  std::optional<Field> from_q, from_field;
  if (!o.q.empty()) {
    if (o.q == "generic") from_q = Field::rational_function();
    else if (o.q == "rational") from_q = Field::rational();
    else if (o.q.rfind("zeta", 0) == 0) from_q = parse_field(o.q);
    else throw ParseError("--q expects zetaN, generic or rational, got '" + o.q + "'");
  }
  if (!o.field.empty()) from_field = parse_field(o.field);
  if (from_q && from_field && !(*from_q == *from_field))
    throw ParseError("--q " + o.q + " and --field " + o.field + " disagree");
  if (from_q) return *from_q;
  if (from_field) return *from_field;
  return Field::rational();
}

inline std::string default_ramification(const Group& g) {
  if (g.is_finite() && g.order() == 1) return "e:1";
  if (g.is_infinite_cyclic() || g.kind() == "cyclic") return "K:1";
  throw ParseError("--ram is required for group " + g.description());
}

// Smallest field holding every character needed by enumerate: Q(zeta_M) for
// M the lcm of the cyclic centralizer orders, Q(q) for the infinite group.
inline Field enumeration_field(const Group& g, const Ramification& r) {
  if (g.is_infinite_cyclic()) return Field::rational_function();
  std::int64_t m = 1;
  for (const auto& [u, mult] : r.coefficients()) m = std::lcm(m, g.centralizer(u).order());
  return m <= 2 ? Field::rational() : Field::cyclotomic(static_cast<int>(m));
}

enum class Purpose { structure, describe, enumerate };

inline Context build_context(const Options& o, Purpose purpose = Purpose::structure) {
  Context ctx;
  Session& s = ctx.session;
  if (!o.session.empty()) {
    s = load_session(o.session);
    ctx.inputs["session"] = o.session;
  } else {
    s.group = parse_group(o.group);
    s.field = field_from_options(o);
    std::string ram = o.ram;
    if (ram.empty() && purpose == Purpose::describe) {
      ctx.inputs["group"] = o.group;
      ctx.inputs["field"] = s.field.name();
      s.ramification = Ramification(s.group);
      return ctx;
    }
    if (ram.empty()) ram = default_ramification(s.group);
    s.ramification = parse_ramification(s.group, ram);
    if (purpose == Purpose::enumerate && o.q.empty() && o.field.empty()) s.field = enumeration_field(s.group, s.ramification);
    std::string module = o.module;
    if (module.empty()) module = (!o.q.empty() && s.field.has_generator()) ? "q" : "trivial";
    if (module == "trivial" || module == "sign" || module == "q") {
      s.family = preset_family(s.group, s.ramification, s.field, module);
    } else {
      s.family = family_from_json(s.group, s.field, hopfquiver::detail::read_json_file(module));
    }
    ctx.inputs["group"] = o.group;
    ctx.inputs["ramification"] = ram;
    ctx.inputs["module"] = module;
  }
  if (o.degree) s.degree = *o.degree;
  if (!o.window.empty()) std::tie(s.window_lo, s.window_hi) = parse_window(o.window);
  ctx.inputs["field"] = s.field.name();
  ctx.inputs["degree"] = s.degree;
  if (s.group.is_infinite_cyclic()) ctx.inputs["window"] = {s.window_lo, s.window_hi};
  return ctx;
}

struct Outcome {
  int code = 0;
  std::string text;
  json result;
  json witnesses = json::array();
};

inline Outcome report_outcome(const VerificationReport& r) {
  Outcome o;
  o.result = {{"passed", r.passed}, {"instances", r.instances}};
  if (r.passed) {
    o.text = "pass (" + std::to_string(r.instances) + " instances)\n";
  } else {
    o.code = 1;
    o.text = "FAIL " + r.check + "\nwitness: " + r.witness + "\n";
    o.result["check"] = r.check;
    o.witnesses.push_back({{"check", r.check}, {"instance", r.witness}});
  }
  return o;
}

inline Outcome run_describe(const Context& ctx) {
  const Group& G = ctx.session.group;
  Outcome o;
  std::ostringstream t;
  o.result["group"] = G.description();
  if (G.is_infinite_cyclic()) {
    t << "group: " << G.description() << " (infinite)\n";
    t << "classes: singletons {K^n}; every centralizer is the whole group\n";
    o.result["order"] = "infinite";
    o.text = t.str();
    return o;
  }
  t << "group: " << G.description() << " (order " << G.order() << ")\n";
  std::string elems;
  for (GroupElement g : G.elements()) elems += (elems.empty() ? "" : ", ") + G.name(g);
  t << "elements: " << elems << "\n";
  auto classes = G.conjugacy_classes();
  t << "classes: " << classes.size() << "\n";
  json jc = json::array();
  for (const auto& c : classes) {
    Subgroup z = G.centralizer(c.representative);
    std::string members, zm;
    for (GroupElement g : c.members) members += (members.empty() ? "" : ", ") + G.name(g);
    for (GroupElement g : z.members()) zm += (zm.empty() ? "" : ", ") + G.name(g);
    t << "  class of " << G.name(c.representative) << ": size " << c.members.size() << " {" << members
      << "}; centralizer order " << z.order() << " {" << zm << "}\n";
    jc.push_back({{"representative", G.name(c.representative)},
                  {"size", c.members.size()},
                  {"centralizer_order", z.order()}});
  }
  o.result["order"] = G.order();
  o.result["classes"] = jc;
  o.text = t.str();
  return o;
}

inline Outcome run_quiver(const Context& ctx, const std::string& action, const std::string& input) {
  const Session& s = ctx.session;
  HopfQuiver q(s.group, s.ramification);
  Outcome o;
  if (action == "build") {
    std::vector<GroupElement> vertices = s.group.elements_in_window(s.window_lo, s.window_hi);
    std::ostringstream t;
    std::vector<Arrow> arrows;
    for (GroupElement x : vertices)
      for (const Arrow& a : q.arrows_from(x)) arrows.push_back(a);
    t << "vertices: " << vertices.size() << "\narrows: " << arrows.size() << "\n";
    json ja = json::array();
    for (const Arrow& a : arrows) {
      t << "  " << q.arrow_name(a) << ": " << s.group.name(a.source) << " -> " << s.group.name(q.target(a)) << "\n";
      ja.push_back(q.arrow_name(a));
    }
    o.text = t.str();
    o.result = {{"vertices", vertices.size()}, {"arrows", ja}};
    return o;
  }
  if (action == "components") {
    auto comps = connected_components(q);
    o.text = std::to_string(comps.size()) + (comps.size() == 1 ? " component\n" : " components\n");
    json jc = json::array();
    for (const auto& c : comps) {
      json members = json::array();
      for (GroupElement g : c) members.push_back(s.group.name(g));
      jc.push_back(members);
    }
    o.result = {{"count", comps.size()}, {"components", jc}};
    return o;
  }
  if (action == "dot") {
    o.text = s.group.is_infinite_cyclic() ? export_dot(q, s.window_lo, s.window_hi) : export_dot(q);
    o.result = o.text;
    return o;
  }
  if (action == "recognize") {
    if (input.empty()) throw ParseError("quiver recognize needs --input <quiver.json>");
    LabeledQuiver lq = labeled_quiver_from_json(s.group, hopfquiver::detail::read_json_file(input));
    Recognition r = recognize_hopf_quiver(lq, s.group);
    if (r.recognized()) {
      o.text = "Hopf quiver with r = " + r.ramification->to_string() + "\n";
      o.result = {{"recognized", true}, {"ramification", r.ramification->to_string()}};
    } else {
      o.code = 1;
      o.text = "not a Hopf quiver: " + r.message + "\n";
      o.result = {{"recognized", false}};
      o.witnesses.push_back(r.message);
    }
    return o;
  }
  throw ParseError("unknown quiver action '" + action + "' (expected build, components, dot or recognize)");
}

inline Outcome run_algebra(const Context& ctx, const std::string& op, const std::string& expr) {
  HopfAlgebra h = ctx.session.algebra();
  GradedVector v = parse_expression(h, expr);
  Outcome o;
  if (op == "mul") {
    o.text = h.to_string(v) + "\n";
    o.result = graded_vector_to_json(h, v);
  } else if (op == "comul") {
    TensorVector d = h.comultiply(v);
    o.text = h.to_string(d) + "\n";
    o.result = {{"text", h.to_string(d)}, {"terms", d.terms().size()}};
  } else if (op == "antipode") {
    GradedVector s = h.antipode(v);
    o.text = h.to_string(s) + "\n";
    o.result = graded_vector_to_json(h, s);
  } else {
    throw ParseError("unknown algebra operation '" + op + "' (expected mul, comul or antipode)");
  }
  if (o.result.is_object() && !o.result.contains("text")) o.result["text"] = detail::trim(o.text);
  return o;
}

inline Outcome run_verify(const Context& ctx, const std::string& target) {
  const Session& s = ctx.session;
  if (target == "bimodule") return report_outcome(verify_hopf_bimodule(s.bimodule(), s.window_lo, s.window_hi));
  if (target == "bialgebra") {
    if (s.degree < 0) throw ParseError("--degree must be non-negative");
    return report_outcome(verify_graded_bialgebra(s.algebra(), s.degree, s.window_lo, s.window_hi));
  }
  throw ParseError("unknown verify target '" + target + "' (expected bimodule or bialgebra)");
}

inline Outcome run_enumerate(const Context& ctx) {
  const Session& s = ctx.session;
  StructureEnumeration e = enumerate_structures(s.group, s.ramification, s.field);
  const Group& G = s.group;
  Outcome o;
  std::ostringstream t;
  json jf = json::array();
  for (std::size_t i = 0; i < e.families.size(); ++i) {
    t << "structure " << i + 1 << ":";
    json entries = json::array();
    for (const auto& entry : e.families[i]) {
      const RightModule& m = entry.module;
      const Subgroup& z = m.base();
      std::string gen = z.is_infinite() ? "K" : G.name(*z.cyclic_generator());
      GroupElement g = z.is_infinite() ? GroupElement{1} : *z.cyclic_generator();
      Matrix action = m.action(g);
      std::string value = m.dimension() == 1 ? action(0, 0).to_string() : action.to_string();
      t << " class " << G.name(entry.representative) << ": " << gen << " -> " << value << ";";
      entries.push_back({{"class", G.name(entry.representative)}, {"generator", gen}, {"action", value}});
    }
    t << "\n";
    jf.push_back(entries);
  }
  for (GroupElement u : e.supply_module) t << "class " << G.name(u) << ": supply module\n";
  t << e.families.size() << (e.families.size() == 1 ? " structure" : " structures") << (e.symbolic ? " (symbolic in q)" : "")
    << "\n";
  json supply = json::array();
  for (GroupElement u : e.supply_module) supply.push_back(G.name(u));
  o.text = t.str();
  o.result = {{"count", e.families.size()}, {"families", jf}, {"supply_module", supply}, {"symbolic", e.symbolic}};
  return o;
}

inline Outcome run_qbinom(const Options& opts, int n, int i) {
  Field f = (opts.q.empty() && opts.field.empty()) ? Field::rational_function() : field_from_options(opts);
  if (!f.has_generator()) throw ParseError("qbinom needs a field with q (zetaN or generic)");
  Scalar v = gauss_binomial(n, i, f.generator());
  Outcome o;
  o.text = v.to_string() + "\n";
  o.result = {{"field", f.name()}, {"value", v.to_string()}};
  return o;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded Hopf algebras on path coalgebras of Hopf quivers", "hopfquiver"};
  app.require_subcommand(1);
  detail::Options o;
  app.add_option("--group", o.group, "cyclic:N, dihedral:N, sym:N, trivial or Z");
  app.add_option("--ram", o.ram, "ramification, e.g. \"K^2:1\" or \"transpositions:1\"");
  app.add_option("--module", o.module, "trivial, sign, q, or a module family JSON file");
  app.add_option("--q", o.q, "zetaN, generic or rational");
  app.add_option("--field", o.field, "rational, cyclotomic:N or rational_function");
  app.add_option("--degree", o.degree, "working degree N (default 4)");
  app.add_option("--window", o.window, "vertex window lo,hi for the infinite cyclic group");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--session", o.session, "session JSON file");
  app.add_option("--input", o.input, "labeled quiver JSON for quiver recognize");

  std::string action, expr, target;
  int qn = 0, qi = 0;
  auto* describe = app.add_subcommand("describe", "group, classes and centralizers")->fallthrough();
  auto* quiver = app.add_subcommand("quiver", "build, components, dot or recognize")->fallthrough();
  quiver->add_option("action", action, "build|components|dot|recognize")->required();
  auto* algebra = app.add_subcommand("algebra", "mul, comul or antipode of an expression")->fallthrough();
  algebra->add_option("op", action, "mul|comul|antipode")->required();
  algebra->add_option("expr", expr, "factors separated by *")->required();
  auto* verify = app.add_subcommand("verify", "check the axioms")->fallthrough();
  verify->add_option("target", target, "bimodule|bialgebra")->required();
  auto* enumerate = app.add_subcommand("enumerate", "list one-dimensional module families")->fallthrough();
  auto* qbinom = app.add_subcommand("qbinom", "Gauss binomial (n atop i)_q")->fallthrough();
  qbinom->add_option("n", qn)->required();
  qbinom->add_option("i", qi)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? 0 : 2;
  }

  std::string command;
  detail::Outcome outcome;
  json inputs;
  try {
    if (*qbinom) {
      command = "qbinom";
      outcome = detail::run_qbinom(o, qn, qi);
      inputs = {{"n", qn}, {"i", qi}};
    } else {
      detail::Purpose purpose = *describe ? detail::Purpose::describe
                                : *enumerate ? detail::Purpose::enumerate
                                             : detail::Purpose::structure;
      detail::Context ctx = detail::build_context(o, purpose);
      inputs = ctx.inputs;
      if (*describe) {
        command = "describe";
        outcome = detail::run_describe(ctx);
      } else if (*quiver) {
        command = "quiver " + action;
        outcome = detail::run_quiver(ctx, action, o.input);
      } else if (*algebra) {
        command = "algebra " + action;
        inputs["expression"] = expr;
        outcome = detail::run_algebra(ctx, action, expr);
      } else if (*verify) {
        command = "verify " + target;
        outcome = detail::run_verify(ctx, target);
      } else if (*enumerate) {
        command = "enumerate";
        outcome = detail::run_enumerate(ctx);
      }
    }
  } catch (const InvariantViolation& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.format == "json") {
    json report = {{"command", command}, {"inputs", inputs}, {"result", outcome.result}, {"witnesses", outcome.witnesses}};
    out << report.dump(2) << "\n";
  } else {
    out << outcome.text;
  }
  return outcome.code;
}

}  // namespace hopfquiver::cli
