#pragma once

// JSON session files: group, ramification, field and module family in one
// self-describing document, plus a lossless JSON form for GradedVector.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hopfquiver/bimodule.hpp"
#include "hopfquiver/error.hpp"
#include "hopfquiver/groups.hpp"
#include "hopfquiver/hopfalg.hpp"
#include "hopfquiver/quiver.hpp"
#include "hopfquiver/scalars.hpp"

namespace hopfquiver {

using json = nlohmann::json;

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string require_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

inline std::int64_t require_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline Scalar scalar_from_json(const Field& field, const json& j, const std::string& where) {
  if (j.is_number_integer()) return field.integer(j.get<long>());
  if (j.is_string()) {
    try {
      return field.parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a scalar string or integer");
}

inline Matrix matrix_from_json(const Field& field, const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of rows");
  const auto n = j.size();
  std::vector<Scalar> entries;
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != n) throw ParseError(where + ": row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < n; ++c)
      entries.push_back(scalar_from_json(field, row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  return Matrix(static_cast<int>(n), std::move(entries));
}

inline GroupElement element_from_json(const Group& g, const json& j, const std::string& where) {
  try {
    return g.parse_element(require_string(j, where));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

}  // namespace detail

/// {"kind": "cyclic"|"dihedral"|"symmetric"|"infinite_cyclic"|"table"|"permutations", ...}
/// or a compact string such as "sym:3".
inline Group group_from_json(const json& j) {
  if (j.is_string()) return parse_group(j.get<std::string>());
  const std::string where = "group";
  std::string kind = detail::require_string(detail::require(j, "kind", where), where + ".kind");
  auto param = [&]() {
    return static_cast<int>(detail::require_integer(detail::require(j, "n", where), where + ".n"));
  };
  if (kind == "cyclic") return Group::cyclic(param());
  if (kind == "dihedral") return Group::dihedral(param());
  if (kind == "symmetric") return Group::symmetric(param());
  if (kind == "infinite_cyclic") return Group::infinite_cyclic();
  if (kind == "table") {
    const json& t = detail::require(j, "table", where);
    std::vector<std::vector<int>> table;
    try {
      table = t.get<std::vector<std::vector<int>>>();
    } catch (const json::exception&) {
      throw ParseError(where + ".table: expected a square array of integers");
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return Group::from_table(table, std::move(names));
  }
  if (kind == "permutations") {
    int degree = static_cast<int>(detail::require_integer(detail::require(j, "degree", where), where + ".degree"));
    std::vector<Permutation> gens;
    try {
      gens = detail::require(j, "generators", where).get<std::vector<Permutation>>();
    } catch (const json::exception&) {
      throw ParseError(where + ".generators: expected arrays of 0-indexed images");
    }
    std::size_t cap = Group::default_closure_cap;
    if (j.contains("cap")) cap = static_cast<std::size_t>(detail::require_integer(j.at("cap"), where + ".cap"));
    return Group::from_permutations(degree, gens, cap);
  }
  throw ParseError(where + ".kind: unknown group kind '" + kind + "'");
}

/// One-dimensional character lambda on the chosen generator of a cyclic
/// centralizer, tensored up to dimension dim as lambda^k times the identity.
inline RightModule scalar_module(const Subgroup& z, int dim, const Scalar& lambda) {
  const Field field = lambda.field();
  auto diagonal = [&](const Scalar& value) {
    std::vector<Scalar> e(static_cast<std::size_t>(dim) * dim, field.zero());
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = value;
    return Matrix(dim, std::move(e));
  };
  if (z.is_infinite()) return RightModule::make_infinite_cyclic(z, diagonal(lambda));
  auto gen = z.cyclic_generator();
  if (!gen) throw ValidationError("centralizer is not cyclic; supply a module family file");
  const Group& g = z.parent();
  std::map<GroupElement, Matrix> action;
  Scalar value = field.one();
  GroupElement x = g.identity();
  for (std::int64_t k = 0; k < z.order(); ++k) {
    action.emplace(x, diagonal(value));
    x = g.multiply(x, *gen);
    value *= lambda;
  }
  return RightModule::make(z, std::move(action));
}

/// Built-in module families: "trivial" (identity actions), "sign" (the
/// cyclic generator of each centralizer acts by -1), "q" (it acts by the
/// field's distinguished element q). Dimensions follow r.
inline std::vector<ModuleFamilyEntry> preset_family(const Group& group, const Ramification& r, const Field& field,
                                                    const std::string& kind) {
  std::vector<ModuleFamilyEntry> family;
  for (const auto& [u, mult] : r.coefficients()) {
    Subgroup z = group.centralizer(u);
    if (kind == "trivial") family.push_back({u, RightModule::trivial(z, mult, field)});
    else if (kind == "sign") family.push_back({u, scalar_module(z, mult, field.integer(-1))});
    else if (kind == "q") {
      if (!field.has_generator()) throw ValidationError("module 'q' needs a cyclotomic or rational-function field");
      family.push_back({u, scalar_module(z, mult, field.generator())});
    } else {
      throw ParseError("unknown module preset '" + kind + "' (expected trivial, sign, q or a file)");
    }
  }
  return family;
}

/// [{"class": name, "dimension": d, "matrices": {element name: [[...]], ...}}, ...];
/// the infinite cyclic centralizer takes the single key "K".
inline std::vector<ModuleFamilyEntry> family_from_json(const Group& group, const Field& field, const json& j) {
  if (!j.is_array()) throw ParseError("modules: expected an array of class entries");
  std::vector<ModuleFamilyEntry> family;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "modules[" + std::to_string(i) + "]";
    const json& entry = j[i];
    GroupElement u = detail::element_from_json(group, detail::require(entry, "class", where), where + ".class");
    auto dim = detail::require_integer(detail::require(entry, "dimension", where), where + ".dimension");
    const json& mats = detail::require(entry, "matrices", where);
    if (!mats.is_object()) throw ParseError(where + ".matrices: expected an object");
    Subgroup z = group.centralizer(group.class_representative(u));
    auto check_dim = [&](const Matrix& m, const std::string& at) {
      if (m.size() != dim) throw ParseError(at + ": matrix size differs from dimension " + std::to_string(dim));
    };
    if (z.is_infinite()) {
      if (mats.size() != 1 || !mats.contains("K")) throw ParseError(where + ".matrices: expected the single key \"K\"");
      Matrix m = detail::matrix_from_json(field, mats.at("K"), where + ".matrices.K");
      check_dim(m, where + ".matrices.K");
      family.push_back({u, RightModule::make_infinite_cyclic(z, std::move(m))});
      continue;
    }
    std::map<GroupElement, Matrix> action;
    for (const auto& [key, value] : mats.items()) {
      const std::string at = where + ".matrices." + key;
      GroupElement zelem = detail::element_from_json(group, key, at);
      Matrix m = detail::matrix_from_json(field, value, at);
      check_dim(m, at);
      if (!action.emplace(zelem, std::move(m)).second) throw ParseError(at + ": element given twice");
    }
    family.push_back({u, RightModule::make(z, std::move(action))});
  }
  return family;
}

/// Everything needed to build one Hopf structure.
struct Session {
  Group group = Group::cyclic(1);
  Ramification ramification{Group::cyclic(1)};
  Field field = Field::rational();
  std::vector<ModuleFamilyEntry> family;
  int degree = 4;
  std::int64_t window_lo = -4;
  std::int64_t window_hi = 4;

  HopfBimodule bimodule(CocycleMutation mutation = CocycleMutation::none) const {
    return HopfBimodule::build(group, family, field, mutation);
  }
  HopfAlgebra algebra() const { return HopfAlgebra(bimodule()); }
};

/// {"group": ..., "group_file": path, "ramification": "K:1", "field": "zeta4",
///  "modules": "trivial"|"sign"|"q"|[...], "modules_file": path,
///  "degree": N, "window": [lo, hi]}. Relative paths resolve against base_dir.
inline Session session_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ParseError("session: expected an object");
  Session s;
  if (j.contains("group_file")) s.group = group_from_json(detail::read_json_file(base_dir / j.at("group_file").get<std::string>()));
  else s.group = group_from_json(detail::require(j, "group", "session"));
  if (j.contains("field")) s.field = parse_field(detail::require_string(j.at("field"), "session.field"));
  s.ramification = parse_ramification(s.group, detail::require_string(detail::require(j, "ramification", "session"),
                                                                      "session.ramification"));
  if (j.contains("modules_file")) {
    s.family = family_from_json(s.group, s.field,
                                detail::read_json_file(base_dir / j.at("modules_file").get<std::string>()));
  } else {
    const json& m = j.contains("modules") ? j.at("modules") : json("trivial");
    s.family = m.is_string() ? preset_family(s.group, s.ramification, s.field, m.get<std::string>())
                             : family_from_json(s.group, s.field, m);
  }
  if (j.contains("degree")) s.degree = static_cast<int>(detail::require_integer(j.at("degree"), "session.degree"));
  if (j.contains("window")) {
    const json& w = j.at("window");
    if (!w.is_array() || w.size() != 2) throw ParseError("session.window: expected [lo, hi]");
    s.window_lo = detail::require_integer(w[0], "session.window[0]");
    s.window_hi = detail::require_integer(w[1], "session.window[1]");
  }
  return s;
}

inline Session load_session(const std::filesystem::path& path) {
  return session_from_json(detail::read_json_file(path), path.parent_path());
}

/// {"vertices": [names], "arrows": [[src, dst], ...], "labeling": {name: element}}
inline LabeledQuiver labeled_quiver_from_json(const Group& group, const json& j) {
  LabeledQuiver q;
  try {
    q.vertices = detail::require(j, "vertices", "quiver").get<std::vector<std::string>>();
    q.arrows = detail::require(j, "arrows", "quiver").get<std::vector<std::pair<std::string, std::string>>>();
    for (const auto& [name, elem] : detail::require(j, "labeling", "quiver").items())
      q.labeling.emplace(name, detail::element_from_json(group, elem, "quiver.labeling." + name));
  } catch (const json::exception& e) {
    throw ParseError(std::string("quiver: ") + e.what());
  }
  return q;
}

// ---- GradedVector ------------------------------------------------------------

inline json arrow_to_json(const HopfAlgebra& h, const Arrow& a) {
  const Group& g = h.group();
  return {{"source", g.name(a.source)}, {"class", g.name(a.class_element)}, {"index", a.index}};
}

/// {"field": name, "terms": [{"source": x, "arrows": [a_1, ..., a_n], "coefficient": text}]}
inline json graded_vector_to_json(const HopfAlgebra& h, const GradedVector& v) {
  json terms = json::array();
  for (const auto& [p, c] : v.terms()) {
    json arrows = json::array();
    for (const Arrow& a : p.arrows) arrows.push_back(arrow_to_json(h, a));
    terms.push_back({{"source", h.group().name(p.start)}, {"arrows", arrows}, {"coefficient", c.to_string()}});
  }
  return {{"field", h.field().name()}, {"terms", terms}};
}

inline GradedVector graded_vector_from_json(const HopfAlgebra& h, const json& j) {
  const Group& g = h.group();
  Field f = parse_field(detail::require_string(detail::require(j, "field", "vector"), "vector.field"));
  if (!(f == h.field())) throw FieldMismatch("vector is over " + f.name() + ", algebra over " + h.field().name());
  const json& terms = detail::require(j, "terms", "vector");
  if (!terms.is_array()) throw ParseError("vector.terms: expected an array");
  GradedVector out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string where = "vector.terms[" + std::to_string(i) + "]";
    const json& t = terms[i];
    GroupElement start = detail::element_from_json(g, detail::require(t, "source", where), where + ".source");
    const json& arrows = detail::require(t, "arrows", where);
    std::vector<Arrow> seq;
    for (std::size_t k = 0; k < arrows.size(); ++k) {
      const std::string at = where + ".arrows[" + std::to_string(k) + "]";
      const json& a = arrows[k];
      seq.push_back({detail::element_from_json(g, detail::require(a, "source", at), at + ".source"),
                     detail::element_from_json(g, detail::require(a, "class", at), at + ".class"),
                     static_cast<int>(detail::require_integer(detail::require(a, "index", at), at + ".index"))});
    }
    Path p = seq.empty() ? h.vertex(start) : h.path(std::move(seq));
    if (p.start != start) throw ParseError(where + ": source does not match the first arrow");
    out.add(p, detail::scalar_from_json(f, detail::require(t, "coefficient", where), where + ".coefficient"));
  }
  return out;
}

}  // namespace hopfquiver
