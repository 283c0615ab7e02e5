#pragma once

// The graded Hopf algebra on the path coalgebra of a Hopf quiver.
//
// Coproduct: sum of all two-part splits. Product: for paths a (length n) and
// b (length m), the sum over all masks d with n ones among n+m positions of
// the concatenation of the position-wise actions
//   d_i = 1: (arrow of a) . (vertex of the complementary thin split of b)
//   d_i = 0: (vertex of a) . (arrow of b).
// Positions are numbered 1..p from the source end of the path.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hopfquiver/bimodule.hpp"
#include "hopfquiver/error.hpp"
#include "hopfquiver/groups.hpp"
#include "hopfquiver/quiver.hpp"
#include "hopfquiver/scalars.hpp"

namespace hopfquiver {

/// A vertex (no arrows) or a concatenated arrow sequence; arrows[0] is a_1,
/// the arrow leaving the source.
struct Path {
  GroupElement start;
  GroupElement end;
  std::vector<Arrow> arrows;

  std::size_t length() const { return arrows.size(); }
  bool is_vertex() const { return arrows.empty(); }
  GroupElement source() const { return start; }
  GroupElement target() const { return end; }

  friend bool operator==(const Path& a, const Path& b) { return a.start == b.start && a.arrows == b.arrows; }
  // Canonical order: by length, then source, then arrow sequence.
  friend bool operator<(const Path& a, const Path& b) {
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.start != b.start) return a.start < b.start;
    return a.arrows < b.arrows;
  }
};

/// Finite linear combination of paths; zero coefficients are never stored.
class GradedVector {
 public:
  GradedVector() = default;
  GradedVector(Path p, Scalar c) {
    if (!c.is_zero()) terms_.emplace(std::move(p), std::move(c));
  }

  const std::map<Path, Scalar>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Path& p, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void add(const GradedVector& v, const Scalar& factor) {
    for (const auto& [p, c] : v.terms_) add(p, c * factor);
  }
  void add(const GradedVector& v) {
    for (const auto& [p, c] : v.terms_) add(p, c);
  }

  Scalar coefficient(const Path& p, const Field& field) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? field.zero() : it->second;
  }

  friend GradedVector operator+(GradedVector a, const GradedVector& b) {
    a.add(b);
    return a;
  }
  friend GradedVector operator-(const GradedVector& a) {
    GradedVector r;
    for (const auto& [p, c] : a.terms_) r.terms_.emplace(p, -c);
    return r;
  }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, -c);
    return a;
  }
  friend GradedVector operator*(const Scalar& s, const GradedVector& v) {
    GradedVector r;
    r.add(v, s);
    return r;
  }
  friend bool operator==(const GradedVector& a, const GradedVector& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Path, Scalar> terms_;
};

/// Finite linear combination of tensors of paths, factors written left to
/// right (p_1 (x) p_2 (x) ...).
class TensorVector {
 public:
  using Key = std::vector<Path>;
  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  friend bool operator==(const TensorVector& a, const TensorVector& b) { return a.terms_ == b.terms_; }

 private:
  std::map<Key, Scalar> terms_;
};

/// 0/1 sequence (d_p, ..., d_1); bit i-1 of `bits` holds d_i.
struct ThinSplitMask {
  int length = 0;
  std::uint64_t bits = 0;

  bool at(int position) const { return (bits >> (position - 1)) & 1u; }  // position in 1..length
  int weight() const { return std::popcount(bits); }
  ThinSplitMask complement() const {
    std::uint64_t all = length == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
    return {length, ~bits & all};
  }
  friend bool operator==(const ThinSplitMask&, const ThinSplitMask&) = default;

  // Written d_p first, e.g. "(0,0,1,1,0,0,1)".
  std::string to_string() const {
    std::string out = "(";
    for (int i = length; i >= 1; --i) out += std::string(at(i) ? "1" : "0") + (i > 1 ? "," : "");
    return out + ")";
  }
};

/// All masks of length p and weight n, ordered by increasing integer value of
/// (d_p ... d_1) (so d_1 varies fastest). Empty when n > p.
inline std::vector<ThinSplitMask> thin_splits(int n, int p) {
  if (n < 0 || p < 0 || p > 63) throw ValidationError("thin split parameters out of range");
  std::vector<ThinSplitMask> out;
  if (n > p) return out;
  if (n == 0) return {{p, 0}};
  std::uint64_t x = (std::uint64_t{1} << n) - 1;
  const std::uint64_t limit = std::uint64_t{1} << p;
  while (x < limit) {
    out.push_back({p, x});
    // Gosper's hack: next integer with the same popcount.
    std::uint64_t c = x & -x, r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return out;
}

/// One piece of a thin split: a vertex or a single arrow.
using ThinSplitPiece = std::variant<GroupElement, Arrow>;

/// Symbolic factor left . arrow . right (unevaluated).
struct Factor {
  GroupElement left;
  Arrow arrow;
  GroupElement right;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

// A product summand before evaluation; factors[0] sits at position 1.
using SymbolicTerm = std::vector<Factor>;

/// Drops one mask-summand from every product of paths of lengths (n, m);
/// used for mutation testing.
struct ProductMutation {
  int left_length = 0;
  int right_length = 0;
  std::uint64_t mask_bits = 0;
};

struct IsotypicIndex {
  int degree = 0;
  GroupElement source;
  GroupElement target;
};

class HopfAlgebra {
 public:
  explicit HopfAlgebra(HopfBimodule bimodule, std::optional<ProductMutation> mutation = std::nullopt)
      : bimodule_(std::move(bimodule)), mutation_(mutation) {}

  const HopfBimodule& bimodule() const { return bimodule_; }
  const Group& group() const { return bimodule_.group(); }
  const HopfQuiver& quiver() const { return bimodule_.quiver(); }
  const Field& field() const { return bimodule_.field(); }
  const std::optional<ProductMutation>& mutation() const { return mutation_; }
  HopfAlgebra with_mutation(std::optional<ProductMutation> m) const { return HopfAlgebra(bimodule_, m); }

  Path vertex(GroupElement g) const { return {g, g, {}}; }

  // Validates membership and concatenation; arrows given a_1 first.
  Path path(std::vector<Arrow> arrows) const {
    if (arrows.empty()) throw ValidationError("use vertex() for zero-length paths");
    for (std::size_t i = 0; i < arrows.size(); ++i) {
      if (!quiver().contains(arrows[i])) throw ValidationError("arrow " + quiver().arrow_name(arrows[i]) + " is not in the quiver");
      if (i > 0 && quiver().target(arrows[i - 1]) != arrows[i].source)
        throw ValidationError("arrows " + quiver().arrow_name(arrows[i - 1]) + " and " + quiver().arrow_name(arrows[i]) +
                              " do not concatenate");
    }
    GroupElement s = arrows.front().source, t = quiver().target(arrows.back());
    return {s, t, std::move(arrows)};
  }

  // Sub-path a_{i+1} ... a_j of p, 0 <= i <= j <= n.
  Path segment(const Path& p, std::size_t i, std::size_t j) const {
    if (i == j) {
      GroupElement v = i == 0 ? p.start : quiver().target(p.arrows[i - 1]);
      return vertex(v);
    }
    std::vector<Arrow> arrows(p.arrows.begin() + static_cast<std::ptrdiff_t>(i),
                              p.arrows.begin() + static_cast<std::ptrdiff_t>(j));
    return {arrows.front().source, quiver().target(arrows.back()), std::move(arrows)};
  }

  // ---- coalgebra --------------------------------------------------------

  /// Sum of the degree-0 coefficients.
  Scalar counit(const GradedVector& v) const {
    Scalar s = field().zero();
    for (const auto& [p, c] : v.terms())
      if (p.is_vertex()) s += c;
    return s;
  }
  Scalar counit(const Path& p) const { return p.is_vertex() ? field().one() : field().zero(); }

  /// sum_i a_n..a_{i+1} (x) a_i..a_1, i = 0..n.
  TensorVector comultiply(const Path& p) const {
    TensorVector out;
    const std::size_t n = p.length();
    for (std::size_t i = 0; i <= n; ++i) out.add({segment(p, i, n), segment(p, 0, i)}, field().one());
    return out;
  }
  TensorVector comultiply(const GradedVector& v) const {
    TensorVector out;
    for (const auto& [p, c] : v.terms()) {
      TensorVector dp = comultiply(p);
      for (const auto& [k, d] : dp.terms()) out.add(k, c * d);
    }
    return out;
  }

  /// All p-fold splits alpha_(p) (x) ... (x) alpha_(1), p >= 1.
  TensorVector delta_power(const Path& path, int p) const {
    if (p < 1) throw ValidationError("delta_power needs p >= 1");
    TensorVector out;
    const std::size_t n = path.length();
    std::vector<std::size_t> cuts(static_cast<std::size_t>(p) + 1, 0);
    cuts[static_cast<std::size_t>(p)] = n;
    // cuts[0] = 0 <= cuts[1] <= ... <= cuts[p] = n; factor j is segment(cuts[j-1], cuts[j]).
    std::function<void(int)> rec = [&](int j) {
      if (j == p) {
        TensorVector::Key key;
        for (int f = p; f >= 1; --f) key.push_back(segment(path, cuts[f - 1], cuts[f]));
        out.add(key, field().one());
        return;
      }
      for (std::size_t c = cuts[j - 1]; c <= n; ++c) {
        cuts[j] = c;
        rec(j + 1);
      }
    };
    if (p == 1) out.add({path}, field().one());
    else rec(1);
    return out;
  }

  /// Interleaved sum over all p-splits of alpha and of beta:
  /// alpha_(p) (x) beta_(p) (x) ... (x) alpha_(1) (x) beta_(1).
  TensorVector delta2_power(const Path& alpha, const Path& beta, int p) const {
    TensorVector a = delta_power(alpha, p), b = delta_power(beta, p);
    TensorVector out;
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) {
        TensorVector::Key key;
        for (int i = 0; i < p; ++i) {
          key.push_back(ka[static_cast<std::size_t>(i)]);
          key.push_back(kb[static_cast<std::size_t>(i)]);
        }
        out.add(key, ca * cb);
      }
    return out;
  }

  // ---- thin splits and the product -------------------------------------

  /// Pieces indexed by position - 1: arrows of the path at the 1-positions,
  /// every 0-position filled with the vertex that keeps the sequence
  /// concatenated.
  std::vector<ThinSplitPiece> apply_thin_split(const ThinSplitMask& d, const Path& p) const {
    if (d.weight() != static_cast<int>(p.length()))
      throw ValidationError("mask weight " + std::to_string(d.weight()) + " differs from path length " +
                            std::to_string(p.length()));
    std::vector<ThinSplitPiece> out;
    std::size_t next = 0;
    GroupElement current = p.start;
    for (int i = 1; i <= d.length; ++i) {
      if (d.at(i)) {
        const Arrow& a = p.arrows[next++];
        out.emplace_back(a);
        current = quiver().target(a);
      } else {
        out.emplace_back(current);
      }
    }
    return out;
  }

  /// The unevaluated summand (a.b)_d, one factor per position.
  SymbolicTerm summand_factors(const Path& a, const Path& b, const ThinSplitMask& d) const {
    if (d.length != static_cast<int>(a.length() + b.length()))
      throw ValidationError("mask length must equal the total path length");
    auto left = apply_thin_split(d, a);
    auto right = apply_thin_split(d.complement(), b);
    const GroupElement e = group().identity();
    SymbolicTerm term;
    term.reserve(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (d.at(static_cast<int>(i) + 1)) term.push_back({e, std::get<Arrow>(left[i]), std::get<GroupElement>(right[i])});
      else term.push_back({std::get<GroupElement>(left[i]), std::get<Arrow>(right[i]), e});
    }
    return term;
  }

  /// Multilinear expansion of the factor actions, concatenated into paths.
  /// An empty term evaluates to the vertex `empty_vertex`.
  GradedVector evaluate(std::span<const Factor> term, GroupElement empty_vertex) const {
    if (term.empty()) return GradedVector(vertex(empty_vertex), field().one());
    const GroupElement e = group().identity();
    std::vector<std::pair<std::vector<Arrow>, Scalar>> partial{{{}, field().one()}};
    for (const Factor& f : term) {
      Arrow moved = bimodule_.left_act(f.left, f.arrow);
      ArrowCombination values = f.right == e ? ArrowCombination{{moved, field().one()}} : bimodule_.right_act(moved, f.right);
      std::vector<std::pair<std::vector<Arrow>, Scalar>> next;
      next.reserve(partial.size() * values.size());
      for (const auto& [arrows, coeff] : partial)
        for (const auto& [arrow, c] : values) {
          if (!arrows.empty() && quiver().target(arrows.back()) != arrow.source)
            throw InvariantViolation("product summand is not concatenated at " + quiver().arrow_name(arrow));
          auto extended = arrows;
          extended.push_back(arrow);
          next.emplace_back(std::move(extended), coeff * c);
        }
      partial = std::move(next);
    }
    GradedVector out;
    for (auto& [arrows, coeff] : partial) {
      GroupElement s = arrows.front().source, t = quiver().target(arrows.back());
      out.add(Path{s, t, std::move(arrows)}, coeff);
    }
    return out;
  }

  GradedVector product_summand(const Path& a, const Path& b, const ThinSplitMask& d) const {
    GroupElement s = group().multiply(a.start, b.start);
    GradedVector v = evaluate(summand_factors(a, b, d), s);
    GroupElement t = group().multiply(a.end, b.end);
    for (const auto& [p, c] : v.terms())
      if (p.start != s || p.end != t || p.length() != a.length() + b.length())
        throw InvariantViolation("product summand left the isotypic component (s(a)s(b), t(a)t(b))");
    return v;
  }

  /// a.b = sum over masks of weight |a| and length |a|+|b|.
  GradedVector multiply(const Path& a, const Path& b) const {
    const int n = static_cast<int>(a.length()), m = static_cast<int>(b.length());
    GradedVector out;
    for (const ThinSplitMask& d : thin_splits(n, n + m)) {
      if (mutation_ && mutation_->left_length == n && mutation_->right_length == m && mutation_->mask_bits == d.bits)
        continue;
      out.add(product_summand(a, b, d));
    }
    return out;
  }
  GradedVector multiply(const GradedVector& x, const GradedVector& y) const {
    GradedVector out;
    for (const auto& [p, c] : x.terms())
      for (const auto& [q, d] : y.terms()) out.add(multiply(p, q), c * d);
    return out;
  }
  GradedVector multiply(const GradedVector& x, const Path& q) const { return multiply(x, GradedVector(q, field().one())); }
  GradedVector multiply(const Path& p, const GradedVector& y) const { return multiply(GradedVector(p, field().one()), y); }

  GradedVector unit() const { return GradedVector(vertex(group().identity()), field().one()); }

  /// One symbolic term per permutation sigma of {1..n} (lexicographic, the
  /// identity first). `factors` is written left to right: factors[0] = a_n.
  /// Factor k of the term for sigma is
  ///   (p(a_n) ... p(a_{sigma(k)+1})) . a_{sigma(k)} . (p(a_{sigma(k)-1}) ... p(a_1))
  /// with p(a_i) = t(a_i) if i is in sigma{1..k-1} and s(a_i) otherwise.
  std::vector<SymbolicTerm> arrow_sequence_terms(std::span<const Arrow> factors) const {
    const int n = static_cast<int>(factors.size());
    const Group& G = group();
    auto arrow_at = [&](int i) -> const Arrow& { return factors[static_cast<std::size_t>(n - i)]; };  // a_i
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<SymbolicTerm> terms;
    do {
      SymbolicTerm term;
      std::vector<char> reached(static_cast<std::size_t>(n) + 1, 0);
      for (int k = 1; k <= n; ++k) {
        int pivot = sigma[static_cast<std::size_t>(k - 1)];
        auto p = [&](int i) { return reached[static_cast<std::size_t>(i)] ? quiver().target(arrow_at(i)) : arrow_at(i).source; };
        GroupElement left = G.identity(), right = G.identity();
        for (int i = n; i > pivot; --i) left = G.multiply(left, p(i));
        for (int i = pivot - 1; i >= 1; --i) right = G.multiply(right, p(i));
        term.push_back({left, arrow_at(pivot), right});
        reached[static_cast<std::size_t>(pivot)] = 1;
      }
      terms.push_back(std::move(term));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return terms;
  }

  /// a_n . ... . a_1 as the sum over S_n of the permutation terms.
  GradedVector arrow_sequence_product(std::span<const Arrow> factors) const {
    if (factors.empty()) return unit();
    GroupElement s = group().identity();
    for (const Arrow& a : factors) s = group().multiply(s, a.source);
    GradedVector out;
    for (const auto& term : arrow_sequence_terms(factors)) out.add(evaluate(term, s));
    return out;
  }

  /// Left-to-right iterated product of single arrows (factors[0] = a_n).
  GradedVector iterated_product(std::span<const Arrow> factors) const {
    GradedVector out = unit();
    for (const Arrow& a : factors) out = multiply(out, path({a}));
    return out;
  }

  // ---- antipode ----------------------------------------------------------

  /// S(u) = u^-1; S(a) = -[t(a)^-1 . a + sum_{0<i<n} S(a_n..a_{i+1}) . (a_i..a_1)] . s(a)^-1.
  GradedVector antipode(const Path& p) const {
    const Group& G = group();
    if (p.is_vertex()) return GradedVector(vertex(G.inverse(p.start)), field().one());
    const std::size_t n = p.length();
    // suffix[i] = S(a_n ... a_{i+1}), computed from the shortest suffix.
    std::vector<GradedVector> suffix(n);
    for (std::size_t i = n; i-- > 0;) {
      Path tail = segment(p, i, n);
      GradedVector inner = multiply(vertex(G.inverse(tail.end)), tail);
      for (std::size_t j = i + 1; j < n; ++j) inner.add(multiply(suffix[j], segment(p, i, j)));
      suffix[i] = -multiply(inner, vertex(G.inverse(tail.start)));
    }
    return suffix[0];
  }
  GradedVector antipode(const GradedVector& v) const {
    GradedVector out;
    for (const auto& [p, c] : v.terms()) out.add(antipode(p), c);
    return out;
  }

  // ---- bases -------------------------------------------------------------

  /// Paths of length n leaving x, in depth-first arrows_from order.
  std::vector<Path> paths_from(GroupElement x, int n) const {
    std::vector<Path> out;
    std::vector<Arrow> stack;
    std::function<void(GroupElement, int)> rec = [&](GroupElement v, int left) {
      if (left == 0) {
        out.push_back(stack.empty() ? vertex(x) : Path{x, v, stack});
        return;
      }
      for (const Arrow& a : quiver().arrows_from(v)) {
        stack.push_back(a);
        rec(quiver().target(a), left - 1);
        stack.pop_back();
      }
    };
    rec(x, n);
    return out;
  }

  /// Degree-n paths from source to target.
  std::vector<Path> isotypic_basis(const IsotypicIndex& idx) const {
    std::vector<Path> out;
    for (auto& p : paths_from(idx.source, idx.degree))
      if (p.end == idx.target) out.push_back(std::move(p));
    return out;
  }

  // ---- printing ----------------------------------------------------------

  /// "X^n" on the one-loop quiver of the trivial group, "E<n>_<i>" on the
  /// quiver of a cyclic group with r = K; otherwise arrow triples a_n first.
  std::string path_name(const Path& p) const {
    const Group& G = group();
    if (p.is_vertex()) return G.name(p.start);
    if (is_loop_algebra()) return p.length() == 1 ? "X" : "X^" + std::to_string(p.length());
    if (is_cyclic_algebra()) return "E" + std::to_string(p.length()) + "_" + std::to_string(p.start.value);
    std::string out;
    for (std::size_t i = p.length(); i-- > 0;) out += quiver().arrow_name(p.arrows[i]);
    return out;
  }

  bool is_loop_algebra() const {
    const auto& r = quiver().ramification().coefficients();
    return group().is_finite() && group().order() == 1 && r.size() == 1 && r.begin()->second == 1;
  }
  bool is_cyclic_algebra() const {
    const Group& G = group();
    if (G.kind() != "cyclic" && !G.is_infinite_cyclic()) return false;
    if (G.is_finite() && G.order() < 2) return false;
    const auto& r = quiver().ramification().coefficients();
    return r.size() == 1 && r.begin()->first == GroupElement{1} && r.begin()->second == 1;
  }

  std::string to_string(const GradedVector& v) const {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : v.terms()) out += term_string(c, path_name(p), out.empty());
    return out;
  }
  std::string to_string(const TensorVector& v) const {
    if (v.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : v.terms()) {
      std::string body;
      for (std::size_t i = 0; i < key.size(); ++i) body += (i ? " ⊗ " : "") + path_name(key[i]);
      out += term_string(c, body, out.empty());
    }
    return out;
  }

  static std::string term_string(const Scalar& c, const std::string& body, bool first) {
    std::string coeff = c.to_string();
    bool negative = c.prints_as_monomial() && coeff.front() == '-';
    if (negative) coeff.erase(0, 1);
    std::string prefix;
    if (coeff == "1") prefix = "";
    else if (c.prints_as_monomial()) prefix = coeff + " ";
    else prefix = "(" + coeff + ") ";
    std::string sep = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    return sep + prefix + body;
  }

 private:
  HopfBimodule bimodule_;
  std::optional<ProductMutation> mutation_;
};

/// E^n_i: the length-n path of the r = K quiver of a cyclic group leaving K^i.
inline Path cyclic_path(const HopfAlgebra& h, int n, std::int64_t i) {
  const Group& G = h.group();
  if (!h.is_cyclic_algebra()) throw UnsupportedOperation("E-notation needs a cyclic group with r = K");
  GroupElement x = G.is_finite() ? GroupElement{((i % G.order()) + G.order()) % G.order()} : GroupElement{i};
  if (n == 0) return h.vertex(x);
  std::vector<Arrow> arrows;
  for (int t = 0; t < n; ++t) {
    arrows.push_back({x, {1}, 0});
    x = G.multiply({1}, x);
  }
  return h.path(std::move(arrows));
}

/// X^n on the one-loop quiver of the trivial group.
inline Path loop_path(const HopfAlgebra& h, int n) {
  if (!h.is_loop_algebra()) throw UnsupportedOperation("X-notation needs the trivial group with one loop");
  if (n == 0) return h.vertex(h.group().identity());
  return h.path(std::vector<Arrow>(static_cast<std::size_t>(n), Arrow{{0}, {0}, 0}));
}

// ---- q-series ---------------------------------------------------------------

/// (n atop i)_q via (n+1 atop i) = (n atop i) + q^{n+1-i} (n atop i-1).
/// Zero when i is out of range.
inline Scalar gauss_binomial(int n, int i, const Scalar& q) {
  const Field f = q.field();
  if (n < 0 || i < 0 || i > n) return f.zero();
  std::vector<Scalar> row{f.one()};  // row for n = 0
  for (int k = 0; k < n; ++k) {
    std::vector<Scalar> next(static_cast<std::size_t>(k) + 2, f.zero());
    for (int j = 0; j <= k + 1; ++j) {
      Scalar v = j <= k ? row[static_cast<std::size_t>(j)] : f.zero();
      if (j >= 1) v += pow(q, k + 1 - j) * row[static_cast<std::size_t>(j - 1)];
      next[static_cast<std::size_t>(j)] = v;
    }
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(i)];
}

/// n_q = 1 + q + ... + q^{n-1}.
inline Scalar q_integer(int n, const Scalar& q) {
  Scalar s = q.field().zero(), term = q.field().one();
  for (int k = 0; k < n; ++k) {
    s += term;
    term *= q;
  }
  return s;
}

inline Scalar q_factorial(int n, const Scalar& q) {
  Scalar s = q.field().one();
  for (int k = 1; k <= n; ++k) s *= q_integer(k, q);
  return s;
}

/// n_q! / ((n-i)_q! i_q!), or nullopt when a q-integer vanishes.
inline std::optional<Scalar> gauss_binomial_factorial(int n, int i, const Scalar& q) {
  if (i < 0 || i > n) return q.field().zero();
  Scalar den = q_factorial(n - i, q) * q_factorial(i, q);
  if (den.is_zero()) return std::nullopt;
  return q_factorial(n, q) / den;
}

struct CyclicProduct {
  Scalar coefficient;
  int length = 0;
  std::int64_t start = 0;  // reduced modulo the group order when finite
};

/// E^n_i . E^m_j = q^{jn} (n+m atop n)_q E^{n+m}_{i+j}.
inline CyclicProduct cyclic_closed_form(int n, std::int64_t i, int m, std::int64_t j, const Scalar& q,
                                        std::optional<std::int64_t> group_order = std::nullopt) {
  std::int64_t start = i + j;
  std::int64_t jr = j;
  if (group_order) {
    start = ((start % *group_order) + *group_order) % *group_order;
    jr = ((j % *group_order) + *group_order) % *group_order;
  }
  return {pow(q, jr * n) * gauss_binomial(n + m, n, q), n + m, start};
}

}  // namespace hopfquiver
