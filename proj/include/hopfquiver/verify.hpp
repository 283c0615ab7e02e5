#pragma once

// Degreewise verification of the graded Hopf algebra axioms on the path
// basis.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hopfquiver/bimodule.hpp"
#include "hopfquiver/hopfalg.hpp"

namespace hopfquiver {

namespace detail {

// Memoized basis products; the algebra is immutable so cached values stay valid.
class ProductCache {
 public:
  explicit ProductCache(const HopfAlgebra& h) : h_(h) {}

  const GradedVector& get(const Path& a, const Path& b) {
    auto key = std::make_pair(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(std::move(key), h_.multiply(a, b)).first->second;
  }

  GradedVector get(const GradedVector& x, const Path& b) {
    GradedVector out;
    for (const auto& [p, c] : x.terms()) out.add(get(p, b), c);
    return out;
  }
  GradedVector get(const Path& a, const GradedVector& y) {
    GradedVector out;
    for (const auto& [p, c] : y.terms()) out.add(get(a, p), c);
    return out;
  }

 private:
  const HopfAlgebra& h_;
  std::map<std::pair<Path, Path>, GradedVector> cache_;
};

}  // namespace detail

/// Checks, on every basis path of degree <= max_degree (sources in the
/// window [lo, hi] for the infinite cyclic group), scanning by total
/// degree: grading and s/t multiplicativity of products, multiplicativity of
/// the counit, Delta(ab) = Delta(a)Delta(b), associativity, unit, counit
/// and coassociativity of Delta, and both antipode identities. Stops at the
/// first failing instance.
inline VerificationReport verify_graded_bialgebra(const HopfAlgebra& h, int max_degree, std::int64_t lo = -4,
                                                  std::int64_t hi = 4) {
  const Group& G = h.group();
  const Field& F = h.field();
  std::vector<std::vector<Path>> basis(static_cast<std::size_t>(max_degree) + 1);
  for (GroupElement x : G.elements_in_window(lo, hi))
    for (int d = 0; d <= max_degree; ++d)
      for (auto& p : h.paths_from(x, d)) basis[static_cast<std::size_t>(d)].push_back(std::move(p));

  detail::ProductCache products(h);
  std::size_t instances = 0;
  auto name = [&](const Path& p) { return h.path_name(p); };
  auto show = [&](const GradedVector& v) { return h.to_string(v); };
  const GradedVector unit = h.unit();
  const Path e = h.vertex(G.identity());

  // Delta(x) Delta(y) with factor-wise products.
  auto delta_product = [&](const Path& a, const Path& b) {
    TensorVector out;
    TensorVector da = h.comultiply(a), db = h.comultiply(b);
    for (const auto& [ka, ca] : da.terms())
      for (const auto& [kb, cb] : db.terms()) {
        const GradedVector& left = products.get(ka[0], kb[0]);
        const GradedVector& right = products.get(ka[1], kb[1]);
        for (const auto& [pl, cl] : left.terms())
          for (const auto& [pr, cr] : right.terms()) out.add({pl, pr}, ca * cb * cl * cr);
      }
    return out;
  };

  for (int total = 0; total <= max_degree; ++total) {
    // Pairs of total degree `total`.
    for (int da = 0; da <= total; ++da) {
      const int db = total - da;
      for (const Path& a : basis[static_cast<std::size_t>(da)])
        for (const Path& b : basis[static_cast<std::size_t>(db)]) {
          ++instances;
          std::string where = "a = " + name(a) + ", b = " + name(b);
          const GradedVector& ab = products.get(a, b);
          GroupElement s = G.multiply(a.start, b.start), t = G.multiply(a.end, b.end);
          for (const auto& [p, c] : ab.terms())
            if (static_cast<int>(p.length()) != total || p.start != s || p.end != t)
              return VerificationReport::fail("grading", where + ": term " + name(p), instances);
          if (!(h.counit(ab) == h.counit(a) * h.counit(b)))
            return VerificationReport::fail("counit multiplicativity", where, instances);
          if (!(h.comultiply(ab) == delta_product(a, b)))
            return VerificationReport::fail("compatibility Delta(ab) = Delta(a)Delta(b)",
                                            where + ": ab = " + show(ab), instances);
        }
    }
    // Triples of total degree `total`.
    for (int da = 0; da <= total; ++da)
      for (int db = 0; da + db <= total; ++db) {
        const int dc = total - da - db;
        for (const Path& a : basis[static_cast<std::size_t>(da)])
          for (const Path& b : basis[static_cast<std::size_t>(db)]) {
            const GradedVector& ab = products.get(a, b);
            for (const Path& c : basis[static_cast<std::size_t>(dc)]) {
              ++instances;
              GradedVector lhs = products.get(ab, c);
              GradedVector rhs = products.get(a, products.get(b, c));
              if (!(lhs == rhs))
                return VerificationReport::fail("associativity",
                                                "a = " + name(a) + ", b = " + name(b) + ", c = " + name(c) +
                                                    ": (ab)c = " + show(lhs) + ", a(bc) = " + show(rhs),
                                                instances);
            }
          }
      }
    // Single paths of degree `total`.
    for (const Path& a : basis[static_cast<std::size_t>(total)]) {
      ++instances;
      std::string where = "a = " + name(a);
      GradedVector single(a, F.one());
      if (!(products.get(e, a) == single) || !(products.get(a, e) == single))
        return VerificationReport::fail("unit", where, instances);
      TensorVector delta = h.comultiply(a);
      GradedVector left_counit, right_counit;
      for (const auto& [k, c] : delta.terms()) {
        left_counit.add(k[1], c * h.counit(k[0]));
        right_counit.add(k[0], c * h.counit(k[1]));
      }
      if (!(left_counit == single) || !(right_counit == single))
        return VerificationReport::fail("counit", where, instances);
      TensorVector coassoc_left, coassoc_right;
      for (const auto& [k, c] : delta.terms()) {
        TensorVector d0 = h.comultiply(k[0]), d1 = h.comultiply(k[1]);
        for (const auto& [k2, c2] : d0.terms()) coassoc_left.add({k2[0], k2[1], k[1]}, c * c2);
        for (const auto& [k2, c2] : d1.terms()) coassoc_right.add({k[0], k2[0], k2[1]}, c * c2);
      }
      if (!(coassoc_left == coassoc_right)) return VerificationReport::fail("coassociativity", where, instances);
      GradedVector expected = h.counit(a) * unit;
      GradedVector s_left, s_right;
      for (const auto& [k, c] : delta.terms()) {
        s_left.add(products.get(h.antipode(k[0]), k[1]), c);
        s_right.add(products.get(k[0], h.antipode(k[1])), c);
      }
      if (!(s_left == expected))
        return VerificationReport::fail("antipode m(S (x) id)Delta = unit counit", where + ": got " + show(s_left),
                                        instances);
      if (!(s_right == expected))
        return VerificationReport::fail("antipode m(id (x) S)Delta = unit counit", where + ": got " + show(s_right),
                                        instances);
    }
  }
  return {true, "", "", instances};
}

}  // namespace hopfquiver
