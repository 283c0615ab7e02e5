#pragma once

// Hopf quivers of a group with respect to a ramification data: r_C arrows
// x -> cx for every vertex x and every c in the class C.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfquiver/error.hpp"
#include "hopfquiver/groups.hpp"

namespace hopfquiver {

/// Arrow (x, c, k): source x, class element c, parallel index k in [0, r_C).
/// Target and orbit point are derived (see HopfQuiver).
struct Arrow {
  GroupElement source;
  GroupElement class_element;
  int index = 0;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// r = sum_C r_C C, keyed by class representative. Zero coefficients are
/// not stored.
class Ramification {
 public:
  explicit Ramification(Group group) : group_(std::move(group)) {}

  const Group& group() const { return group_; }

  // Any member of the class may be given.
  Ramification& set(GroupElement class_member, int multiplicity) {
    if (multiplicity < 0) throw ValidationError("ramification coefficients must be non-negative");
    GroupElement rep = group_.class_representative(class_member);
    if (multiplicity == 0) coefficients_.erase(rep);
    else coefficients_[rep] = multiplicity;
    return *this;
  }

  int multiplicity(GroupElement class_member) const {
    auto it = coefficients_.find(group_.class_representative(class_member));
    return it == coefficients_.end() ? 0 : it->second;
  }

  // (representative, r_C) in representative order.
  const std::map<GroupElement, int>& coefficients() const { return coefficients_; }
  bool empty() const { return coefficients_.empty(); }

  friend bool operator==(const Ramification& a, const Ramification& b) {
    return a.group_ == b.group_ && a.coefficients_ == b.coefficients_;
  }

  std::string to_string() const {
    if (coefficients_.empty()) return "0";
    std::string out;
    for (const auto& [rep, mult] : coefficients_) {
      if (!out.empty()) out += " + ";
      out += std::to_string(mult) + "*{" + group_.name(rep) + "}";
    }
    return out;
  }

 private:
  Group group_;
  std::map<GroupElement, int> coefficients_;
};

/// Parses "K^2:1,(1 2):2" style ramification text. A class is named by any
/// of its members; "transpositions" names the class of a transposition in a
/// symmetric group and "identity" the trivial class.
inline Ramification parse_ramification(const Group& group, const std::string& text) {
  Ramification r(group);
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = start;
    int depth = 0;
    while (comma < text.size() && !(text[comma] == ',' && depth == 0)) {
      if (text[comma] == '(') ++depth;
      if (text[comma] == ')') --depth;
      ++comma;
    }
    std::string item = text.substr(start, comma - start);
    auto colon = item.rfind(':');
    std::string cls = item, count = "1";
    if (colon != std::string::npos) {
      cls = item.substr(0, colon);
      count = item.substr(colon + 1);
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    cls = trim(cls);
    count = trim(count);
    GroupElement member;
    if (cls == "transpositions") member = group.parse_element("(1 2)");
    else if (cls == "identity") member = group.identity();
    else member = group.parse_element(cls);
    int mult = 0;
    try {
      std::size_t used = 0;
      mult = std::stoi(count, &used);
      if (used != count.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad ramification multiplicity '" + count + "'");
    }
    r.set(member, r.multiplicity(member) + mult);
    start = comma + 1;
  }
  return r;
}

class HopfQuiver {
 public:
  HopfQuiver(Group group, Ramification ramification)
      : group_(std::move(group)), ramification_(std::move(ramification)) {
    if (!(ramification_.group() == group_)) throw ValidationError("ramification data is over a different group");
  }

  const Group& group() const { return group_; }
  const Ramification& ramification() const { return ramification_; }

  GroupElement source(const Arrow& a) const { return a.source; }
  GroupElement target(const Arrow& a) const { return group_.multiply(a.class_element, a.source); }
  // w = x^-1 c^-1 x, a point of the inverse class C^-1.
  GroupElement orbit_point(const Arrow& a) const {
    return group_.multiply(group_.multiply(group_.inverse(a.source), group_.inverse(a.class_element)), a.source);
  }

  bool contains(const Arrow& a) const {
    return group_.contains(a.source) && group_.contains(a.class_element) && a.index >= 0 &&
           a.index < ramification_.multiplicity(a.class_element);
  }

  // Deterministic order: class (representative order), member, index.
  std::vector<Arrow> arrows_from(GroupElement x) const {
    std::vector<Arrow> out;
    for (const auto& [rep, mult] : ramification_.coefficients())
      for (GroupElement c : group_.conjugacy_class(rep).members)
        for (int k = 0; k < mult; ++k) out.push_back({x, c, k});
    return out;
  }

  std::vector<Arrow> arrows_between(GroupElement x, GroupElement y) const {
    GroupElement c = group_.multiply(y, group_.inverse(x));
    int mult = ramification_.multiplicity(c);
    std::vector<Arrow> out;
    for (int k = 0; k < mult; ++k) out.push_back({x, c, k});
    return out;
  }

  std::vector<GroupElement> vertices() const { return group_.elements(); }

  // Every arrow of a finite quiver, ordered by source then arrows_from order.
  std::vector<Arrow> arrows() const {
    std::vector<Arrow> out;
    for (GroupElement x : vertices()) {
      auto from = arrows_from(x);
      out.insert(out.end(), from.begin(), from.end());
    }
    return out;
  }

  std::int64_t arrow_count() const {
    std::int64_t per_vertex = 0;
    for (const auto& [rep, mult] : ramification_.coefficients())
      per_vertex += static_cast<std::int64_t>(mult) * static_cast<std::int64_t>(group_.conjugacy_class(rep).members.size());
    return per_vertex * group_.order();
  }

  std::string arrow_name(const Arrow& a) const {
    return "(" + group_.name(a.source) + ", " + group_.name(a.class_element) + ", " + std::to_string(a.index) + ")";
  }

 private:
  Group group_;
  Ramification ramification_;
};

/// Unlabelled finite quiver with a vertex labelling by group elements.
struct LabeledQuiver {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> arrows;
  std::map<std::string, GroupElement> labeling;
};

struct Recognition {
  std::optional<Ramification> ramification;
  // Set on failure: two vertex pairs (x, y) in the same class of yx^-1 with
  // different arrow counts.
  std::pair<GroupElement, GroupElement> first_pair, second_pair;
  int first_count = 0, second_count = 0;
  std::string message;
  bool recognized() const { return ramification.has_value(); }
};

/// Decides whether the arrow count x -> cx depends only on the class of c,
/// and if so returns the ramification data.
inline Recognition recognize_hopf_quiver(const LabeledQuiver& q, const Group& group) {
  if (!group.is_finite()) throw UnsupportedOperation("recognition requires a finite group");
  const auto n = static_cast<std::size_t>(group.order());
  if (q.vertices.size() != n || q.labeling.size() != n)
    throw ValidationError("labeling must be a bijection onto the group's " + std::to_string(n) + " elements");
  std::vector<char> hit(n, 0);
  for (const auto& v : q.vertices) {
    auto it = q.labeling.find(v);
    if (it == q.labeling.end()) throw ValidationError("vertex '" + v + "' has no label");
    if (!group.contains(it->second) || hit[static_cast<std::size_t>(it->second.value)]++)
      throw ValidationError("labeling is not a bijection (at vertex '" + v + "')");
  }
  std::vector<int> count(n * n, 0);
  for (const auto& [src, dst] : q.arrows) {
    auto s = q.labeling.find(src), t = q.labeling.find(dst);
    if (s == q.labeling.end() || t == q.labeling.end())
      throw ValidationError("arrow " + src + " -> " + dst + " uses an unknown vertex");
    ++count[static_cast<std::size_t>(s->second.value) * n + static_cast<std::size_t>(t->second.value)];
  }
  auto arrows = [&](GroupElement x, GroupElement y) {
    return count[static_cast<std::size_t>(x.value) * n + static_cast<std::size_t>(y.value)];
  };
  Recognition result;
  Ramification r(group);
  for (const auto& cls : group.conjugacy_classes()) {
    GroupElement e = group.identity(), u = cls.representative;
    int reference = arrows(e, u);
    for (GroupElement x : group.elements())
      for (GroupElement c : cls.members) {
        GroupElement y = group.multiply(c, x);
        if (arrows(x, y) != reference) {
          result.first_pair = {e, u};
          result.second_pair = {x, y};
          result.first_count = reference;
          result.second_count = arrows(x, y);
          result.message = "pair (" + group.name(e) + "," + group.name(u) + ") has " + std::to_string(reference) +
                           " arrows but pair (" + group.name(x) + "," + group.name(y) + ") has " +
                           std::to_string(result.second_count) + " although both lie over the class of " +
                           group.name(u);
          return result;
        }
      }
    if (reference > 0) r.set(u, reference);
  }
  result.ramification = std::move(r);
  return result;
}

/// Components of the underlying undirected graph; each list ascending,
/// components ordered by smallest vertex.
inline std::vector<std::vector<GroupElement>> connected_components(const HopfQuiver& q) {
  if (!q.group().is_finite())
    throw UnsupportedOperation(
        "components of an infinite quiver are not enumerable; the quiver is connected iff the ramified "
        "classes generate the group");
  const auto n = static_cast<std::size_t>(q.group().order());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Arrow& a : q.arrows()) {
    std::size_t s = find(static_cast<std::size_t>(a.source.value));
    std::size_t t = find(static_cast<std::size_t>(q.target(a).value));
    if (s != t) parent[std::max(s, t)] = std::min(s, t);
  }
  std::map<std::size_t, std::vector<GroupElement>> groups;
  for (std::size_t x = 0; x < n; ++x) groups[find(x)].push_back({static_cast<std::int64_t>(x)});
  std::vector<std::vector<GroupElement>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline std::string dot_render(const HopfQuiver& q, const std::vector<GroupElement>& vertices,
                              const std::vector<Arrow>& arrows) {
  const Group& g = q.group();
  std::ostringstream out;
  out << "digraph hopf_quiver {\n";
  for (GroupElement v : vertices) out << "  " << dot_quote(g.name(v)) << ";\n";
  for (const Arrow& a : arrows)
    out << "  " << dot_quote(g.name(a.source)) << " -> " << dot_quote(g.name(q.target(a)))
        << " [label=" << dot_quote(g.name(a.class_element) + "/" + std::to_string(a.index)) << "];\n";
  out << "}\n";
  return out.str();
}
}  // namespace detail

/// DOT digraph of a finite Hopf quiver; edges labelled "c/k".
inline std::string export_dot(const HopfQuiver& q) {
  return detail::dot_render(q, q.vertices(), q.arrows());
}

/// DOT digraph of the vertices K^lo..K^hi (any group kind; for finite groups
/// the window is ignored) and the arrows with both ends inside.
inline std::string export_dot(const HopfQuiver& q, std::int64_t lo, std::int64_t hi) {
  if (q.group().is_finite()) return export_dot(q);
  std::vector<GroupElement> vertices = q.group().elements_in_window(lo, hi);
  std::vector<Arrow> arrows;
  for (GroupElement x : vertices)
    for (const Arrow& a : q.arrows_from(x)) {
      auto t = q.target(a).value;
      if (t >= lo && t <= hi) arrows.push_back(a);
    }
  return detail::dot_render(q, vertices, arrows);
}

}  // namespace hopfquiver
