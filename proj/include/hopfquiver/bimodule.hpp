#pragma once

// Hopf bimodules over kG built from a family {M_C} of right modules over the
// centralizers Z_{u(C)}.
//
// Realization: the basis is the arrow set (x, c, k) of the Hopf quiver.
//   left action   g.(x, c, k) = (gx, gcg^-1, k)
//   right action  (x, c, k).g = sum_k' rho_C(zeta(g, w))_{k'k} (xg, c, k')
// with w = x^-1 c^-1 x the orbit point, zeta(g, w) = s_w g s_{g^-1 w g}^-1 and
// s the transversal of the orbit of v = u(C)^-1 (s_v = e). zeta(g, w) always
// lies in Z_{u(C)} and satisfies zeta(gh, w) = zeta(g, w) zeta(h, g^-1 w g).

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hopfquiver/error.hpp"
#include "hopfquiver/groups.hpp"
#include "hopfquiver/quiver.hpp"
#include "hopfquiver/scalars.hpp"

namespace hopfquiver {

/// Dense square matrix over one scalar field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int size, std::vector<Scalar> entries) : size_(size), entries_(std::move(entries)) {
    if (size < 1 || entries_.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size))
      throw ValidationError("matrix entries do not form a square");
    Field f = entries_.front().field();
    for (const auto& e : entries_)
      if (!(e.field() == f)) throw FieldMismatch("matrix mixes scalar fields");
  }
  static Matrix identity(int size, const Field& field) {
    std::vector<Scalar> e(static_cast<std::size_t>(size) * size, field.zero());
    for (int i = 0; i < size; ++i) e[static_cast<std::size_t>(i) * size + i] = field.one();
    return Matrix(size, std::move(e));
  }
  static Matrix scalar(const Scalar& s) { return Matrix(1, {s}); }

  int size() const { return size_; }
  Field field() const { return entries_.front().field(); }
  const Scalar& operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * size_ + col];
  }
  bool is_identity() const {
    for (int i = 0; i < size_; ++i)
      for (int j = 0; j < size_; ++j)
        if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.size_ != b.size_) throw ValidationError("matrix size mismatch");
    const int n = a.size_;
    std::vector<Scalar> e(static_cast<std::size_t>(n) * n, a.field().zero());
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] += aik * b(k, j);
      }
    return Matrix(n, std::move(e));
  }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  // Gauss-Jordan; nullopt when singular.
  std::optional<Matrix> inverse() const {
    const int n = size_;
    Field f = field();
    std::vector<Scalar> a(entries_), inv = identity(n, f).entries_;
    auto at = [n](std::vector<Scalar>& m, int r, int c) -> Scalar& { return m[static_cast<std::size_t>(r) * n + c]; };
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (!at(a, r, col).is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) return std::nullopt;
      for (int c = 0; c < n; ++c) {
        std::swap(at(a, col, c), at(a, pivot, c));
        std::swap(at(inv, col, c), at(inv, pivot, c));
      }
      Scalar scale = at(a, col, col).inverse();
      for (int c = 0; c < n; ++c) {
        at(a, col, c) *= scale;
        at(inv, col, c) *= scale;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || at(a, r, col).is_zero()) continue;
        Scalar factor = at(a, r, col);
        for (int c = 0; c < n; ++c) {
          at(a, r, c) -= factor * at(a, col, c);
          at(inv, r, c) -= factor * at(inv, col, c);
        }
      }
    }
    return Matrix(n, std::move(inv));
  }

  std::string to_string() const {
    std::string out = "[";
    for (int i = 0; i < size_; ++i) {
      out += i ? ", [" : "[";
      for (int j = 0; j < size_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
      out += "]";
    }
    return out + "]";
  }

 private:
  int size_ = 0;
  std::vector<Scalar> entries_;
};

inline Matrix matrix_power(const Matrix& m, std::int64_t e) {
  if (e < 0) {
    auto inv = m.inverse();
    if (!inv) throw DivisionByZero();
    return matrix_power(*inv, -e);
  }
  Matrix result = Matrix::identity(m.size(), m.field()), base = m;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// Right module M over a subgroup Z. action(z) is the matrix of m -> m<z on
/// coordinate columns, so a right module satisfies
/// action(z1 z2) = action(z2) action(z1).
class RightModule {
 public:
  // Finite Z: one matrix per element, validated exhaustively.
  static RightModule make(Subgroup base, std::map<GroupElement, Matrix> action) {
    if (base.is_infinite()) throw ValidationError("use make_infinite_cyclic for an infinite base");
    if (action.empty()) throw ValidationError("module action is empty");
    const Group& g = base.parent();
    int dim = action.begin()->second.size();
    Field field = action.begin()->second.field();
    for (GroupElement z : base.members())
      if (!action.count(z)) throw ValidationError("no matrix given for element " + g.name(z));
    for (const auto& [z, m] : action) {
      if (!base.contains(z)) throw ValidationError("matrix given for " + g.name(z) + " outside the base subgroup");
      if (m.size() != dim) throw ValidationError("module matrices have different sizes");
      if (!(m.field() == field)) throw FieldMismatch("module matrices mix scalar fields");
      if (!m.inverse()) throw ValidationError("matrix for " + g.name(z) + " is singular");
    }
    if (!action.at(g.identity()).is_identity()) throw ValidationError("identity does not act as the identity matrix");
    for (GroupElement z1 : base.members())
      for (GroupElement z2 : base.members())
        if (!(action.at(g.multiply(z1, z2)) == action.at(z2) * action.at(z1)))
          throw ValidationError("module axiom (m<z1)<z2 = m<(z1 z2) fails for pair (" + g.name(z1) + ", " +
                                g.name(z2) + ")");
    return RightModule(std::move(base), dim, field, std::move(action), std::nullopt);
  }

  // Infinite cyclic Z = <K>: the single invertible matrix rho(K).
  static RightModule make_infinite_cyclic(Subgroup base, Matrix generator_action) {
    if (!base.is_infinite()) throw ValidationError("base subgroup is not infinite cyclic");
    if (!generator_action.inverse()) throw ValidationError("matrix for K is singular");
    int dim = generator_action.size();
    Field field = generator_action.field();
    return RightModule(std::move(base), dim, field, {}, std::move(generator_action));
  }

  static RightModule trivial(Subgroup base, int dim, const Field& field) {
    Matrix id = Matrix::identity(dim, field);
    if (base.is_infinite()) return make_infinite_cyclic(std::move(base), id);
    std::map<GroupElement, Matrix> action;
    for (GroupElement z : base.members()) action.emplace(z, id);
    return make(std::move(base), std::move(action));
  }

  // One-dimensional module of a cyclic base, generator acting by lambda.
  static RightModule character(Subgroup base, GroupElement generator, const Scalar& lambda) {
    if (base.is_infinite()) {
      if (generator.value != 1) throw ValidationError("infinite cyclic characters are given on K");
      return make_infinite_cyclic(std::move(base), Matrix::scalar(lambda));
    }
    const Group& g = base.parent();
    std::map<GroupElement, Matrix> action;
    Scalar value = lambda.field().one();
    GroupElement z = g.identity();
    for (std::int64_t k = 0; k < base.order(); ++k) {
      action.emplace(z, Matrix::scalar(value));
      z = g.multiply(z, generator);
      value *= lambda;
    }
    if (action.size() != static_cast<std::size_t>(base.order()))
      throw ValidationError("character generator does not generate the base subgroup");
    return make(std::move(base), std::move(action));
  }

  const Subgroup& base() const { return base_; }
  int dimension() const { return dim_; }
  const Field& field() const { return field_; }

  Matrix action(GroupElement z) const {
    if (generator_action_) return matrix_power(*generator_action_, z.value);
    auto it = action_.find(z);
    if (it == action_.end()) throw ValidationError("element outside the module's base subgroup");
    return it->second;
  }

  friend bool operator==(const RightModule& a, const RightModule& b) {
    return a.base_ == b.base_ && a.dim_ == b.dim_ && a.action_ == b.action_ &&
           a.generator_action_ == b.generator_action_;
  }

 private:
  RightModule(Subgroup base, int dim, Field field, std::map<GroupElement, Matrix> action,
              std::optional<Matrix> generator_action)
      : base_(std::move(base)),
        dim_(dim),
        field_(field),
        action_(std::move(action)),
        generator_action_(std::move(generator_action)) {}

  Subgroup base_;
  int dim_;
  Field field_;
  std::map<GroupElement, Matrix> action_;
  std::optional<Matrix> generator_action_;
};

/// Module M_C attached to the class of `representative` (any member).
struct ModuleFamilyEntry {
  GroupElement representative;
  RightModule module;
};

using ArrowTerm = std::pair<Arrow, Scalar>;
// Linear combination of arrows, nonzero coefficients only.
using ArrowCombination = std::vector<ArrowTerm>;

/// Deliberate corruptions used by mutation tests.
enum class CocycleMutation {
  none,
  // zeta(g, w) forced to e at every orbit point w other than the base point.
  identity_off_base,
};

class HopfBimodule {
 public:
  static HopfBimodule build(const Group& group, std::vector<ModuleFamilyEntry> family, const Field& field,
                            CocycleMutation mutation = CocycleMutation::none) {
    Ramification r(group);
    auto impl = std::make_shared<Impl>(group, field);
    impl->mutation = mutation;
    for (auto& entry : family) {
      ConjugacyClass cls = group.conjugacy_class(group.class_representative(entry.representative));
      GroupElement u = cls.representative;
      if (impl->classes.count(u)) throw ValidationError("class of " + group.name(u) + " given twice");
      if (!(entry.module.base() == group.centralizer(u))) {
        if (!(entry.module.base() == group.centralizer(entry.representative)))
          throw ValidationError("module for class " + group.name(u) + " is not over the centralizer of " +
                                group.name(entry.representative));
        entry.module = transport(group, entry.module, entry.representative, u);
      }
      if (!(entry.module.field() == field))
        throw FieldMismatch("module for class " + group.name(u) + " is over " + entry.module.field().name() +
                            ", expected " + field.name());
      ClassData data{u, group.inverse(u), entry.module, group.transversal(cls), {}};
      for (const auto& [w, s] : data.transversal) data.transversal_inverse.emplace(w, group.inverse(s));
      r.set(u, entry.module.dimension());
      impl->classes.emplace(u, std::move(data));
    }
    impl->quiver.emplace(group, std::move(r));
    return HopfBimodule(std::move(impl));
  }

  // M over C(x) becomes M' over C(u) with rho'(z) = rho(g^-1 z g), where u = g x g^-1.
  static RightModule transport(const Group& group, const RightModule& m, GroupElement x, GroupElement u) {
    GroupElement g = group.identity();
    for (GroupElement y : group.elements())
      if (group.conjugate(y, x) == u) {
        g = y;
        break;
      }
    Subgroup target = group.centralizer(u);
    std::map<GroupElement, Matrix> action;
    for (GroupElement z : target.members()) action.emplace(z, m.action(group.multiply(group.multiply(group.inverse(g), z), g)));
    return RightModule::make(std::move(target), std::move(action));
  }

  const Group& group() const { return impl_->group; }
  const Field& field() const { return impl_->field; }
  const HopfQuiver& quiver() const { return *impl_->quiver; }
  CocycleMutation mutation() const { return impl_->mutation; }

  const RightModule& module(GroupElement class_member) const { return data(class_member).module; }
  const std::map<GroupElement, GroupElement>& transversal(GroupElement class_member) const {
    return data(class_member).transversal;
  }

  /// zeta(g, w) = s_w g s_{g^-1 w g}^-1 for the class containing c.
  GroupElement cocycle(GroupElement class_member, GroupElement g, GroupElement w) const {
    const Group& G = impl_->group;
    const ClassData& d = data(class_member);
    if (impl_->mutation == CocycleMutation::identity_off_base && w != d.base_point) return G.identity();
    GroupElement moved = G.multiply(G.multiply(G.inverse(g), w), g);
    return G.multiply(G.multiply(d.transversal.at(w), g), d.transversal_inverse.at(moved));
  }

  Arrow left_act(GroupElement g, const Arrow& a) const {
    const Group& G = impl_->group;
    return {G.multiply(g, a.source), G.conjugate(g, a.class_element), a.index};
  }

  ArrowCombination right_act(const Arrow& a, GroupElement g) const {
    const Group& G = impl_->group;
    const ClassData& d = data(a.class_element);
    GroupElement new_source = G.multiply(a.source, g);
    GroupElement z = cocycle(a.class_element, g, quiver().orbit_point(a));
    if (d.module.dimension() == 1) {
      Scalar coeff = d.module.action(z)(0, 0);
      return {{Arrow{new_source, a.class_element, 0}, std::move(coeff)}};
    }
    Matrix m = d.module.action(z);
    ArrowCombination out;
    for (int row = 0; row < m.size(); ++row)
      if (!m(row, a.index).is_zero()) out.push_back({Arrow{new_source, a.class_element, row}, m(row, a.index)});
    return out;
  }

  ArrowCombination left_act(GroupElement g, const ArrowCombination& v) const {
    ArrowCombination out;
    for (const auto& [a, c] : v) out.push_back({left_act(g, a), c});
    return out;
  }
  ArrowCombination right_act(const ArrowCombination& v, GroupElement g) const {
    std::map<Arrow, Scalar> acc;
    for (const auto& [a, c] : v)
      for (auto& [b, d] : right_act(a, g)) {
        auto [it, inserted] = acc.try_emplace(b, c * d);
        if (!inserted) it->second += c * d;
      }
    ArrowCombination out;
    for (auto& [b, c] : acc)
      if (!c.is_zero()) out.push_back({b, c});
    return out;
  }

  /// The isotypic component at (u(C), 1) with z |> b = z^-1 . b . z, as a
  /// right module over Z_{u(C)} in the basis (e, u(C), k).
  RightModule coinvariants_module(GroupElement class_member) const {
    const Group& G = impl_->group;
    const ClassData& d = data(class_member);
    const int dim = d.module.dimension();
    auto matrix_for = [&](GroupElement z) {
      std::vector<Scalar> entries(static_cast<std::size_t>(dim) * dim, impl_->field.zero());
      for (int k = 0; k < dim; ++k) {
        Arrow b{G.identity(), d.representative, k};
        for (const auto& [arrow, coeff] : right_act(left_act(G.inverse(z), b), z)) {
          if (arrow.source != G.identity() || arrow.class_element != d.representative)
            throw InvariantViolation("z^-1 b z left the (u(C), 1) isotypic component");
          entries[static_cast<std::size_t>(arrow.index) * dim + k] = coeff;
        }
      }
      return Matrix(dim, std::move(entries));
    };
    Subgroup z = G.centralizer(d.representative);
    if (z.is_infinite()) return RightModule::make_infinite_cyclic(z, matrix_for({1}));
    std::map<GroupElement, Matrix> action;
    for (GroupElement m : z.members()) action.emplace(m, matrix_for(m));
    return RightModule::make(z, std::move(action));
  }

  /// r_C = dim of the (u(C), 1) isotypic component.
  Ramification ramification() const {
    const Group& G = impl_->group;
    Ramification r(G);
    for (const auto& [u, d] : impl_->classes) r.set(u, static_cast<int>(quiver().arrows_between(G.identity(), u).size()));
    return r;
  }

  std::vector<GroupElement> class_representatives() const {
    std::vector<GroupElement> out;
    for (const auto& [u, d] : impl_->classes) out.push_back(u);
    return out;
  }

  HopfBimodule with_mutation(CocycleMutation mutation) const {
    auto impl = std::make_shared<Impl>(*impl_);
    impl->mutation = mutation;
    return HopfBimodule(std::move(impl));
  }

 private:
  struct ClassData {
    GroupElement representative;
    GroupElement base_point;
    RightModule module;
    std::map<GroupElement, GroupElement> transversal;
    std::map<GroupElement, GroupElement> transversal_inverse;
  };
  struct Impl {
    Impl(Group g, Field f) : group(std::move(g)), field(f) {}
    Group group;
    Field field;
    std::map<GroupElement, ClassData> classes;
    std::optional<HopfQuiver> quiver;
    CocycleMutation mutation = CocycleMutation::none;
  };

  explicit HopfBimodule(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  const ClassData& data(GroupElement class_member) const {
    auto it = impl_->classes.find(impl_->group.class_representative(class_member));
    if (it == impl_->classes.end())
      throw ValidationError("class of " + impl_->group.name(class_member) + " is not ramified");
    return it->second;
  }

  std::shared_ptr<const Impl> impl_;
};

struct VerificationReport {
  bool passed = true;
  std::string check;    // name of the failed axiom
  std::string witness;  // first failing instance in scan order
  std::size_t instances = 0;

  static VerificationReport fail(std::string check, std::string witness, std::size_t instances) {
    return {false, std::move(check), std::move(witness), instances};
  }
};

namespace detail {
inline ArrowCombination canonical(ArrowCombination v) {
  std::map<Arrow, Scalar> acc;
  for (auto& [a, c] : v) {
    auto [it, inserted] = acc.try_emplace(a, c);
    if (!inserted) it->second += c;
  }
  ArrowCombination out;
  for (auto& [a, c] : acc)
    if (!c.is_zero()) out.push_back({a, c});
  return out;
}

inline std::string combination_to_string(const HopfQuiver& q, const ArrowCombination& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [a, c] : v) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")" + q.arrow_name(a);
  }
  return out;
}
}  // namespace detail

/// Checks the bimodule and bicomodule compatibility axioms on every basis
/// arrow and every pair g, h (finite G), or on the exponent window
/// [lo, hi] for the infinite cyclic group.
inline VerificationReport verify_hopf_bimodule(const HopfBimodule& b, std::int64_t lo = -4, std::int64_t hi = 4) {
  const Group& G = b.group();
  const HopfQuiver& q = b.quiver();
  std::vector<GroupElement> scope = G.elements_in_window(lo, hi);
  std::vector<Arrow> arrows;
  for (GroupElement x : scope)
    for (const Arrow& a : q.arrows_from(x)) arrows.push_back(a);
  std::size_t instances = 0;
  auto name = [&](GroupElement g) { return G.name(g); };
  const GroupElement e = G.identity();
  for (const Arrow& a : arrows) {
    ArrowCombination single{{a, b.field().one()}};
    ++instances;
    if (!(detail::canonical({{b.left_act(e, a), b.field().one()}}) == single))
      return VerificationReport::fail("left unit", "e." + q.arrow_name(a), instances);
    if (!(detail::canonical(b.right_act(a, e)) == single))
      return VerificationReport::fail("right unit", q.arrow_name(a) + ".e", instances);
  }
  for (const Arrow& a : arrows) {
    ArrowCombination single{{a, b.field().one()}};
    for (GroupElement g : scope) {
      for (GroupElement h : scope) {
        ++instances;
        std::string where = "a = " + q.arrow_name(a) + ", g = " + name(g) + ", h = " + name(h);
        // (g.a).h = g.(a.h)
        auto lhs = detail::canonical(b.right_act(b.left_act(g, single), h));
        auto rhs = detail::canonical(b.left_act(g, b.right_act(single, h)));
        if (!(lhs == rhs))
          return VerificationReport::fail("mixed associativity", where + ": " + detail::combination_to_string(q, lhs) +
                                                                     " vs " + detail::combination_to_string(q, rhs),
                                          instances);
        // (gh).a = g.(h.a)
        if (!(b.left_act(G.multiply(g, h), a) == b.left_act(g, b.left_act(h, a))))
          return VerificationReport::fail("left associativity", where, instances);
        // a.(gh) = (a.g).h
        auto r1 = detail::canonical(b.right_act(single, G.multiply(g, h)));
        auto r2 = detail::canonical(b.right_act(b.right_act(single, g), h));
        if (!(r1 == r2))
          return VerificationReport::fail("right associativity", where + ": " + detail::combination_to_string(q, r1) +
                                                                     " vs " + detail::combination_to_string(q, r2),
                                          instances);
        // Every term of g.a.h lies in the isotypic component (g t(a) h, g s(a) h).
        GroupElement src = G.multiply(G.multiply(g, a.source), h);
        GroupElement tgt = G.multiply(G.multiply(g, q.target(a)), h);
        for (const auto& [term, coeff] : lhs) {
          if (!q.contains(term))
            return VerificationReport::fail("basis membership", where + ": " + q.arrow_name(term), instances);
          if (term.source != src || q.target(term) != tgt)
            return VerificationReport::fail("comodule compatibility", where + ": " + q.arrow_name(term), instances);
        }
      }
    }
  }
  return {true, "", "", instances};
}

/// Family of cyclic-centralizer characters for every ramified class, or a
/// marker that the user must supply modules.
struct StructureEnumeration {
  std::vector<std::vector<ModuleFamilyEntry>> families;
  std::vector<GroupElement> supply_module;  // classes outside the enumerable case
  bool symbolic = false;                    // families are parametrized by the indeterminate q
};

/// Lists every one-dimensional right module family over the ramified
/// classes whose r_C = 1 and whose centralizer is cyclic of an order whose
/// roots of unity live in `field`. Classes failing this are reported in
/// supply_module and omitted from the families.
inline StructureEnumeration enumerate_structures(const Group& group, const Ramification& r, const Field& field) {
  StructureEnumeration result;
  std::vector<std::vector<ModuleFamilyEntry>> options;
  for (const auto& [u, mult] : r.coefficients()) {
    Subgroup z = group.centralizer(u);
    if (mult != 1) {
      result.supply_module.push_back(u);
      continue;
    }
    if (z.is_infinite()) {
      if (field.kind() != FieldKind::rational_function) {
        result.supply_module.push_back(u);
        continue;
      }
      result.symbolic = true;
      options.push_back({{u, RightModule::character(z, {1}, field.generator())}});
      continue;
    }
    auto gen = z.cyclic_generator();
    std::int64_t m = z.order();
    if (!gen || !field.contains_roots_of_unity(m)) {
      result.supply_module.push_back(u);
      continue;
    }
    Scalar root = field.primitive_root_of_unity(m);
    std::vector<ModuleFamilyEntry> chars;
    for (std::int64_t j = 0; j < m; ++j) chars.push_back({u, RightModule::character(z, *gen, pow(root, j))});
    options.push_back(std::move(chars));
  }
  std::vector<std::vector<ModuleFamilyEntry>> families{{}};
  for (const auto& opts : options) {
    std::vector<std::vector<ModuleFamilyEntry>> next;
    for (const auto& fam : families)
      for (const auto& o : opts) {
        auto f = fam;
        f.push_back(o);
        next.push_back(std::move(f));
      }
    families = std::move(next);
  }
  if (!options.empty()) result.families = std::move(families);
  return result;
}

}  // namespace hopfquiver
