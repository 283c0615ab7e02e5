#pragma once

// Vertex groups: finite groups (Cayley table, permutation generators, or a
// built-in family) and the infinite cyclic group <K>.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hopfquiver/error.hpp"

namespace hopfquiver {

/// Opaque element handle, valid within its parent Group: an index into the
/// element list for finite groups, the exponent of K for the infinite cyclic
/// group.
struct GroupElement {
  std::int64_t value = 0;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct ConjugacyClass {
  GroupElement representative;
  std::vector<GroupElement> members;  // ascending; representative first
};

class Subgroup;

using Permutation = std::vector<int>;

class Group {
 public:
  static constexpr std::size_t default_closure_cap = 10000;

  static Group cyclic(int n) {
    if (n < 1) throw ValidationError("cyclic group order must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = "cyclic";
    impl->size = n;
    impl->table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) impl->table[a * n + b] = (a + b) % n;
    for (int i = 0; i < n; ++i) impl->names.push_back(power_name("K", i));
    if (n > 1) impl->generators.push_back({1});
    impl->description = "cyclic:" + std::to_string(n);
    return finish(std::move(impl));
  }

  // Dihedral group of order 2n; element r^i s^j has index i + n*j.
  static Group dihedral(int n) {
    if (n < 1) throw ValidationError("dihedral parameter must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = "dihedral";
    impl->size = 2 * n;
    int size = 2 * n;
    impl->table.resize(static_cast<std::size_t>(size) * size);
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y) {
        int a = x % n, b = x / n, c = y % n, d = y / n;
        int rot = ((a + (b ? -c : c)) % n + n) % n;
        impl->table[x * size + y] = rot + n * ((b + d) % 2);
      }
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < n; ++i) {
        std::string r = power_name("r", i);
        if (j == 0) impl->names.push_back(r);
        else impl->names.push_back(i == 0 ? "s" : r + " s");
      }
    if (n > 1) impl->generators.push_back({1});
    impl->generators.push_back({n});
    impl->description = "dihedral:" + std::to_string(n);
    return finish(std::move(impl));
  }

  static Group symmetric(int n) {
    if (n < 1) throw ValidationError("symmetric degree must be positive");
    std::vector<Permutation> perms;
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<Permutation> gens;
    if (n >= 2) {
      Permutation t(n), cycle(n);
      std::iota(t.begin(), t.end(), 0);
      std::swap(t[0], t[1]);
      for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
      gens.push_back(t);
      if (n > 2) gens.push_back(cycle);
    }
    return from_sorted_permutations(std::move(perms), gens, "symmetric", "symmetric:" + std::to_string(n));
  }

  // Group generated by 0-indexed image lists, closed by breadth-first
  // multiplication and sorted lexicographically.
  static Group from_permutations(int degree, const std::vector<Permutation>& generators,
                                 std::size_t cap = default_closure_cap) {
    for (const auto& g : generators) {
      if (static_cast<int>(g.size()) != degree) throw ValidationError("generator has wrong degree");
      std::vector<int> sorted(g);
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < degree; ++i)
        if (sorted[i] != i) throw ValidationError("generator is not a permutation");
    }
    Permutation id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::set<Permutation> seen{id};
    std::deque<Permutation> queue{id};
    while (!queue.empty()) {
      Permutation cur = queue.front();
      queue.pop_front();
      for (const auto& g : generators) {
        Permutation next = compose(cur, g);
        if (seen.insert(next).second) {
          if (seen.size() > cap)
            throw ValidationError("permutation group exceeds the closure cap of " + std::to_string(cap));
          queue.push_back(std::move(next));
        }
      }
    }
    return from_sorted_permutations({seen.begin(), seen.end()}, generators, "permutations",
                                    "permutations:" + std::to_string(degree));
  }

  // Validates a 0-indexed Cayley table whose element 0 must be the identity.
  static Group from_table(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> names = {}) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw ValidationError("empty Cayley table");
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table[a].size()) != n) throw ValidationError("Cayley table is not square");
      for (int b = 0; b < n; ++b)
        if (table[a][b] < 0 || table[a][b] >= n)
          throw ValidationError("Cayley table entry out of range at (" + std::to_string(a) + ", " +
                                std::to_string(b) + ")");
    }
    for (int a = 0; a < n; ++a)
      if (table[0][a] != a || table[a][0] != a)
        throw ValidationError("element 0 is not an identity (fails at " + std::to_string(a) + ")");
    for (int a = 0; a < n; ++a) {
      bool found = false;
      for (int b = 0; b < n && !found; ++b) found = table[a][b] == 0 && table[b][a] == 0;
      if (!found) throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw ValidationError("Cayley table is not associative at triple (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ", " + std::to_string(c) + ")");
    if (!names.empty() && static_cast<int>(names.size()) != n)
      throw ValidationError("name list length differs from table size");
    auto impl = std::make_shared<Impl>();
    impl->kind = "table";
    impl->size = n;
    impl->table.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) impl->table[a * n + b] = table[a][b];
    if (names.empty()) {
      names.push_back("e");
      for (int i = 1; i < n; ++i) names.push_back("g" + std::to_string(i));
    }
    impl->names = std::move(names);
    impl->description = "table:" + std::to_string(n);
    // Greedy generating set in index order.
    std::vector<char> reached(n, 0);
    reached[0] = 1;
    for (int g = 1; g < n; ++g) {
      if (reached[g]) continue;
      impl->generators.push_back({g});
      std::vector<int> members;
      for (int i = 0; i < n; ++i)
        if (reached[i]) members.push_back(i);
      std::deque<int> queue(members.begin(), members.end());
      while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (const auto& gen : impl->generators) {
          int y = impl->table[x * n + gen.value];
          if (!reached[y]) {
            reached[y] = 1;
            queue.push_back(y);
          }
        }
      }
    }
    return finish(std::move(impl));
  }

  static Group infinite_cyclic() {
    auto impl = std::make_shared<Impl>();
    impl->kind = "infinite_cyclic";
    impl->infinite = true;
    impl->generators.push_back({1});
    impl->description = "infinite_cyclic";
    return Group(std::move(impl));
  }

  Group() : Group(cyclic(1)) {}

  bool is_finite() const { return !impl_->infinite; }
  bool is_infinite_cyclic() const { return impl_->infinite; }
  const std::string& kind() const { return impl_->kind; }
  const std::string& description() const { return impl_->description; }

  std::int64_t order() const {
    require_finite("order");
    return impl_->size;
  }

  GroupElement identity() const { return {0}; }
  bool contains(GroupElement g) const { return impl_->infinite || (g.value >= 0 && g.value < impl_->size); }

  GroupElement multiply(GroupElement a, GroupElement b) const {
    if (impl_->infinite) return {a.value + b.value};
    return {impl_->table[a.value * impl_->size + b.value]};
  }
  GroupElement inverse(GroupElement a) const {
    if (impl_->infinite) return {-a.value};
    return {impl_->inverse[a.value]};
  }
  GroupElement power(GroupElement a, std::int64_t k) const {
    if (impl_->infinite) return {a.value * k};
    if (k < 0) {
      a = inverse(a);
      k = -k;
    }
    GroupElement r = identity();
    for (std::int64_t i = 0; i < k; ++i) r = multiply(r, a);
    return r;
  }
  // g a g^-1
  GroupElement conjugate(GroupElement g, GroupElement a) const { return multiply(multiply(g, a), inverse(g)); }

  std::int64_t element_order(GroupElement a) const {
    if (impl_->infinite) {
      if (a.value == 0) return 1;
      throw UnsupportedOperation("element of infinite order");
    }
    std::int64_t k = 1;
    for (GroupElement x = a; x != identity(); x = multiply(x, a)) ++k;
    return k;
  }

  std::vector<GroupElement> elements() const {
    require_finite("element enumeration");
    std::vector<GroupElement> out;
    for (std::int64_t i = 0; i < impl_->size; ++i) out.push_back({i});
    return out;
  }

  // Elements K^lo .. K^hi of the infinite cyclic group, or every element of a
  // finite group.
  std::vector<GroupElement> elements_in_window(std::int64_t lo, std::int64_t hi) const {
    if (!impl_->infinite) return elements();
    std::vector<GroupElement> out;
    for (std::int64_t i = lo; i <= hi; ++i) out.push_back({i});
    return out;
  }

  const std::vector<GroupElement>& generators() const { return impl_->generators; }

  std::string name(GroupElement g) const {
    if (impl_->infinite) return power_name("K", g.value);
    return impl_->names.at(static_cast<std::size_t>(g.value));
  }

  GroupElement parse_element(const std::string& text) const {
    std::string s = normalize_name(text);
    if (impl_->infinite) {
      if (s == "e" || s == "1") return {0};
      if (s == "K") return {1};
      if (s.rfind("K^", 0) == 0) {
        try {
          std::size_t used = 0;
          long long k = std::stoll(s.substr(2), &used);
          if (used == s.size() - 2) return {k};
        } catch (const std::exception&) {
        }
      }
      throw ParseError("unknown element '" + text + "' of the infinite cyclic group");
    }
    auto it = impl_->by_name.find(s);
    if (it != impl_->by_name.end()) return {it->second};
    if (s == "1" || s == "e" || s == "()") return identity();
    if (impl_->kind == "cyclic" && s.rfind("K^", 0) == 0) {
      try {
        long long k = std::stoll(s.substr(2));
        return power({1}, k);
      } catch (const std::exception&) {
      }
    }
    if (!impl_->permutations.empty()) {
      if (auto p = parse_cycles(s, static_cast<int>(impl_->permutations[0].size()))) {
        auto pit = std::lower_bound(impl_->permutations.begin(), impl_->permutations.end(), *p);
        if (pit != impl_->permutations.end() && *pit == *p)
          return {static_cast<std::int64_t>(pit - impl_->permutations.begin())};
      }
    }
    throw ParseError("unknown group element '" + text + "'");
  }

  // Image list of a permutation group element, if the group is one.
  std::optional<Permutation> permutation(GroupElement g) const {
    if (impl_->permutations.empty()) return std::nullopt;
    return impl_->permutations.at(static_cast<std::size_t>(g.value));
  }

  bool is_abelian() const {
    if (impl_->infinite) return true;
    for (std::int64_t a = 0; a < impl_->size; ++a)
      for (std::int64_t b = a + 1; b < impl_->size; ++b)
        if (multiply({a}, {b}) != multiply({b}, {a})) return false;
    return true;
  }

  /// Classes partition G; ordered by smallest member index.
  std::vector<ConjugacyClass> conjugacy_classes() const {
    require_finite("conjugacy class enumeration");
    return impl_->classes;
  }

  ConjugacyClass conjugacy_class(GroupElement g) const {
    if (impl_->infinite) return {g, {g}};
    return impl_->classes.at(impl_->class_index.at(static_cast<std::size_t>(g.value)));
  }
  GroupElement class_representative(GroupElement g) const {
    if (impl_->infinite) return g;
    return impl_->classes[impl_->class_index[static_cast<std::size_t>(g.value)]].representative;
  }

  inline Subgroup centralizer(GroupElement u) const;
  inline Subgroup whole() const;
  // Subgroup generated by the given elements (finite groups only).
  inline Subgroup generated_subgroup(const std::vector<GroupElement>& gens) const;

  /// For the conjugation orbit C^-1 = {g^-1 v g} of v = u(C)^-1, returns
  /// w -> s_w with s_w^-1 v s_w = w and s_v = e, by breadth-first search over
  /// the generator list.
  std::map<GroupElement, GroupElement> transversal(const ConjugacyClass& c) const {
    GroupElement v = inverse(c.representative);
    std::map<GroupElement, GroupElement> s{{v, identity()}};
    if (impl_->infinite) return s;
    std::deque<GroupElement> queue{v};
    while (!queue.empty()) {
      GroupElement w = queue.front();
      queue.pop_front();
      for (GroupElement g : impl_->generators) {
        GroupElement next = multiply(multiply(inverse(g), w), g);
        if (s.emplace(next, multiply(s[w], g)).second) queue.push_back(next);
      }
    }
    return s;
  }

  friend bool operator==(const Group& a, const Group& b) { return a.impl_ == b.impl_; }

  static Permutation compose(const Permutation& a, const Permutation& b) {
    // (ab)(i) = a(b(i)): apply b first.
    Permutation r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
  }

  static int sign(const Permutation& p) {
    int s = 1;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
        seen[j] = 1;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  // 1-based cycle notation, identity "e".
  static std::string cycle_name(const Permutation& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i] || p[i] == static_cast<int>(i)) continue;
      out += "(";
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
        seen[j] = 1;
        if (!first) out += " ";
        out += std::to_string(j + 1);
        first = false;
      }
      out += ")";
    }
    return out.empty() ? "e" : out;
  }

 private:
  struct Impl {
    std::string kind, description;
    bool infinite = false;
    std::int64_t size = 0;
    std::vector<std::int32_t> table;
    std::vector<std::int64_t> inverse;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::int64_t> by_name;
    std::vector<GroupElement> generators;
    std::vector<Permutation> permutations;
    std::vector<ConjugacyClass> classes;
    std::vector<std::size_t> class_index;
  };

  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  static std::string power_name(const std::string& base, std::int64_t k) {
    if (k == 0) return "e";
    if (k == 1) return base;
    return base + "^" + std::to_string(k);
  }

  // Collapses whitespace and drops it next to parentheses, so "( 1 2 )" and
  // "(1 2)" name the same element.
  static std::string normalize_name(const std::string& text) {
    std::string collapsed;
    for (char ch : text) {
      bool space = ch == ' ' || ch == '\t';
      if (space) {
        if (!collapsed.empty() && collapsed.back() != ' ') collapsed += ' ';
      } else {
        collapsed += ch;
      }
    }
    std::string out;
    for (std::size_t i = 0; i < collapsed.size(); ++i) {
      char ch = collapsed[i];
      if (ch == ' ') {
        char prev = out.empty() ? '(' : out.back();
        char next = i + 1 < collapsed.size() ? collapsed[i + 1] : ')';
        if (prev == '(' || prev == ')' || next == ')' || next == '(') continue;
      }
      out += ch;
    }
    return out;
  }

  static std::optional<Permutation> parse_cycles(const std::string& s, int degree) {
    Permutation p(degree);
    std::iota(p.begin(), p.end(), 0);
    std::size_t i = 0;
    if (s.empty()) return std::nullopt;
    while (i < s.size()) {
      if (s[i] == ' ') {
        ++i;
        continue;
      }
      if (s[i] != '(') return std::nullopt;
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) return std::nullopt;
      std::istringstream in(s.substr(i + 1, close - i - 1));
      std::vector<int> cyc;
      int x;
      while (in >> x) {
        if (x < 1 || x > degree) return std::nullopt;
        cyc.push_back(x - 1);
      }
      Permutation c(degree);
      std::iota(c.begin(), c.end(), 0);
      for (std::size_t k = 0; k < cyc.size(); ++k) c[cyc[k]] = cyc[(k + 1) % cyc.size()];
      p = compose(p, c);
      i = close + 1;
    }
    return p;
  }

  static Group from_sorted_permutations(std::vector<Permutation> perms, const std::vector<Permutation>& gens,
                                        const std::string& kind, const std::string& description) {
    std::sort(perms.begin(), perms.end());
    auto impl = std::make_shared<Impl>();
    impl->kind = kind;
    impl->description = description;
    const auto n = static_cast<std::int64_t>(perms.size());
    impl->size = n;
    std::map<Permutation, std::int64_t> index;
    for (std::int64_t i = 0; i < n; ++i) index[perms[i]] = i;
    impl->table.resize(static_cast<std::size_t>(n * n));
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        impl->table[a * n + b] = static_cast<std::int32_t>(index.at(compose(perms[a], perms[b])));
    for (const auto& p : perms) impl->names.push_back(cycle_name(p));
    for (const auto& g : gens) {
      GroupElement e{index.at(g)};
      if (e.value != 0 && std::find(impl->generators.begin(), impl->generators.end(), e) == impl->generators.end())
        impl->generators.push_back(e);
    }
    impl->permutations = std::move(perms);
    return finish(std::move(impl));
  }

  static Group finish(std::shared_ptr<Impl> impl) {
    const std::int64_t n = impl->size;
    impl->inverse.assign(static_cast<std::size_t>(n), -1);
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        if (impl->table[a * n + b] == 0) impl->inverse[a] = b;
    for (std::int64_t i = 0; i < n; ++i) impl->by_name.emplace(impl->names[i], i);
    impl->class_index.assign(static_cast<std::size_t>(n), static_cast<std::size_t>(-1));
    for (std::int64_t x = 0; x < n; ++x) {
      if (impl->class_index[x] != static_cast<std::size_t>(-1)) continue;
      std::set<std::int64_t> orbit;
      for (std::int64_t g = 0; g < n; ++g) {
        std::int64_t gx = impl->table[g * n + x];
        orbit.insert(impl->table[gx * n + impl->inverse[g]]);
      }
      ConjugacyClass c;
      for (auto m : orbit) {
        c.members.push_back({m});
        impl->class_index[m] = impl->classes.size();
      }
      c.representative = c.members.front();
      impl->classes.push_back(std::move(c));
    }
    return Group(std::move(impl));
  }

  void require_finite(const char* what) const {
    if (impl_->infinite) throw UnsupportedOperation(std::string(what) + " is not available for the infinite cyclic group");
  }

  std::shared_ptr<const Impl> impl_;
};

/// A subgroup of a parent group, stored by its sorted member list (finite
/// case) or as the whole infinite cyclic group.
class Subgroup {
 public:
  Subgroup(Group parent, std::vector<GroupElement> members, bool whole_infinite = false)
      : parent_(std::move(parent)), members_(std::move(members)), whole_infinite_(whole_infinite) {
    std::sort(members_.begin(), members_.end());
  }

  const Group& parent() const { return parent_; }
  bool is_infinite() const { return whole_infinite_; }
  const std::vector<GroupElement>& members() const {
    if (whole_infinite_) throw UnsupportedOperation("infinite subgroup has no member list");
    return members_;
  }
  std::int64_t order() const {
    if (whole_infinite_) throw UnsupportedOperation("infinite subgroup has no finite order");
    return static_cast<std::int64_t>(members_.size());
  }
  bool contains(GroupElement g) const {
    return whole_infinite_ || std::binary_search(members_.begin(), members_.end(), g);
  }

  // A generator when the subgroup is cyclic: K for the infinite case, else
  // the smallest-index element of maximal order.
  std::optional<GroupElement> cyclic_generator() const {
    if (whole_infinite_) return GroupElement{1};
    for (GroupElement g : members_)
      if (parent_.element_order(g) == order()) return g;
    return std::nullopt;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.whole_infinite_ == b.whole_infinite_ && a.members_ == b.members_ && a.parent_ == b.parent_;
  }

 private:
  Group parent_;
  std::vector<GroupElement> members_;
  bool whole_infinite_;
};

inline Subgroup Group::centralizer(GroupElement u) const {
  if (impl_->infinite) return Subgroup(*this, {}, true);
  std::vector<GroupElement> members;
  for (std::int64_t g = 0; g < impl_->size; ++g)
    if (multiply({g}, u) == multiply(u, {g})) members.push_back({g});
  return Subgroup(*this, std::move(members));
}

inline Subgroup Group::whole() const {
  if (impl_->infinite) return Subgroup(*this, {}, true);
  return Subgroup(*this, elements());
}

inline Subgroup Group::generated_subgroup(const std::vector<GroupElement>& gens) const {
  require_finite("subgroup closure");
  std::set<GroupElement> seen{identity()};
  std::deque<GroupElement> queue{identity()};
  while (!queue.empty()) {
    GroupElement x = queue.front();
    queue.pop_front();
    for (GroupElement g : gens) {
      GroupElement y = multiply(x, g);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return Subgroup(*this, {seen.begin(), seen.end()});
}

/// Parses a compact group description: "cyclic:N", "dihedral:N", "sym:N" /
/// "symmetric:N", "trivial", "Z" / "infinite_cyclic".
inline Group parse_group(const std::string& text) {
  if (text == "trivial") return Group::cyclic(1);
  if (text == "Z" || text == "infinite_cyclic") return Group::infinite_cyclic();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("unknown group description '" + text + "'");
  std::string kind = text.substr(0, colon);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw ParseError("bad group parameter");
  } catch (const std::exception&) {
    throw ParseError("bad group parameter in '" + text + "'");
  }
  if (kind == "cyclic" || kind == "C") return Group::cyclic(n);
  if (kind == "dihedral" || kind == "D") return Group::dihedral(n);
  if (kind == "sym" || kind == "symmetric" || kind == "S") return Group::symmetric(n);
  throw ParseError("unknown group kind '" + kind + "'");
}

}  // namespace hopfquiver
