#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>
#include <vector>

#include "hopfquiver/hopfalg.hpp"
#include "hopfquiver/verify.hpp"

using namespace hopfquiver;

namespace {

HopfAlgebra loop_algebra() {
  Group t = Group::cyclic(1);
  Field f = Field::rational();
  return HopfAlgebra(HopfBimodule::build(t, {{t.identity(), RightModule::trivial(t.whole(), 1, f)}}, f));
}

HopfAlgebra cyclic_algebra(int n, const Field& f) {
  Group g = Group::cyclic(n);
  return HopfAlgebra(
      HopfBimodule::build(g, {{GroupElement{1}, RightModule::character(g.whole(), {1}, f.generator())}}, f));
}

HopfAlgebra s3_algebra(bool sign) {
  Group g = Group::symmetric(3);
  Field f = Field::rational();
  GroupElement t = g.parse_element("(1 2)");
  Subgroup z = g.centralizer(t);
  RightModule m = sign ? RightModule::character(z, *z.cyclic_generator(), f.integer(-1)) : RightModule::trivial(z, 1, f);
  return HopfAlgebra(HopfBimodule::build(g, {{t, m}}, f));
}

HopfAlgebra parallel_cyclic4() {
  Group g = Group::cyclic(4);
  Field f = Field::rational();
  return HopfAlgebra(HopfBimodule::build(g, {{GroupElement{1}, RightModule::trivial(g.whole(), 2, f)}}, f));
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All paths of length <= max_len from every vertex.
std::vector<Path> all_paths(const HopfAlgebra& h, int max_len) {
  std::vector<Path> out;
  for (GroupElement x : h.group().elements())
    for (int n = 0; n <= max_len; ++n)
      for (auto& p : h.paths_from(x, n)) out.push_back(p);
  return out;
}

GradedVector single(const HopfAlgebra& h, const Path& p) { return GradedVector(p, h.field().one()); }

// Sum over binary words with i ones of q^{#inversions}: the coefficient of
// x^{n-i} y^i in (x + y)^n when yx = q xy.
Scalar inversion_oracle(int n, int i, const Scalar& q) {
  Scalar total = q.field().zero();
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    if (std::popcount(w) != i) continue;
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inversions += ((w >> a) & 1) && !((w >> b) & 1);
    total += pow(q, inversions);
  }
  return total;
}

}  // namespace

// ---- coalgebra ------------------------------------------------------------

TEST(Coalgebra, Counit) {
  HopfAlgebra h = s3_algebra(false);
  const Group& g = h.group();
  Path u = h.vertex(g.parse_element("(1 2)"));
  Path a = h.path({h.quiver().arrows_from(g.identity())[0]});
  EXPECT_TRUE(h.counit(u).is_one());
  EXPECT_TRUE(h.counit(a).is_zero());
  GradedVector v;
  v.add(u, h.field().integer(3));
  v.add(a, h.field().integer(5));
  EXPECT_EQ(h.counit(v), h.field().integer(3));
}

TEST(Coalgebra, ComultiplyExamples) {
  HopfAlgebra h = s3_algebra(false);
  const Group& g = h.group();
  const HopfQuiver& q = h.quiver();
  Path u = h.vertex(g.identity());
  TensorVector du = h.comultiply(u);
  ASSERT_EQ(du.size(), 1u);
  EXPECT_EQ(du.terms().begin()->first, (TensorVector::Key{u, u}));

  Arrow a = q.arrows_from(g.identity())[1];
  Arrow b = q.arrows_from(q.target(a))[0];
  Path pa = h.path({a}), pb = h.path({b}), ba = h.path({a, b});
  TensorVector expected_a;
  expected_a.add({pa, h.vertex(a.source)}, h.field().one());
  expected_a.add({h.vertex(q.target(a)), pa}, h.field().one());
  EXPECT_EQ(h.comultiply(pa), expected_a);

  TensorVector expected_ba;
  expected_ba.add({ba, h.vertex(a.source)}, h.field().one());
  expected_ba.add({pb, pa}, h.field().one());
  expected_ba.add({h.vertex(q.target(b)), ba}, h.field().one());
  EXPECT_EQ(h.comultiply(ba), expected_ba);
}

TEST(Coalgebra, CoassociativityAndCounitOnAllPaths) {
  for (const HopfAlgebra& h : {s3_algebra(false), cyclic_algebra(4, Field::cyclotomic(4)), parallel_cyclic4()}) {
    for (const Path& p : all_paths(h, 4)) {
      TensorVector left, right;
      GradedVector lc, rc;
      const TensorVector dp = h.comultiply(p);
      for (const auto& [k, c] : dp.terms()) {
        TensorVector d0 = h.comultiply(k[0]), d1 = h.comultiply(k[1]);
        for (const auto& [k2, c2] : d0.terms()) left.add({k2[0], k2[1], k[1]}, c * c2);
        for (const auto& [k2, c2] : d1.terms()) right.add({k[0], k2[0], k2[1]}, c * c2);
        lc.add(k[1], c * h.counit(k[0]));
        rc.add(k[0], c * h.counit(k[1]));
      }
      ASSERT_EQ(left, right);
      ASSERT_EQ(lc, single(h, p));
      ASSERT_EQ(rc, single(h, p));
      ASSERT_EQ(left, h.delta_power(p, 3));
    }
  }
}

TEST(Coalgebra, DeltaPowerTriple) {
  HopfAlgebra h = s3_algebra(false);
  const HopfQuiver& q = h.quiver();
  Arrow a = q.arrows_from(h.group().identity())[0];
  Path pa = h.path({a}), s = h.vertex(a.source), t = h.vertex(q.target(a));
  TensorVector expected;
  expected.add({pa, s, s}, h.field().one());
  expected.add({t, pa, s}, h.field().one());
  expected.add({t, t, pa}, h.field().one());
  EXPECT_EQ(h.delta_power(pa, 3), expected);
  EXPECT_EQ(h.delta_power(pa, 2), h.comultiply(pa));
}

TEST(Coalgebra, DeltaPowerTermCounts) {
  HopfAlgebra h = loop_algebra();
  for (int n = 0; n <= 5; ++n)
    for (int p = 1; p <= 5; ++p) {
      TensorVector d = h.delta_power(loop_path(h, n), p);
      // On the loop quiver distinct splits give distinct keys.
      EXPECT_EQ(static_cast<long long>(d.size()), binomial(n + p - 1, n)) << n << " " << p;
      long long thin = 0;
      for (const auto& [k, c] : d.terms()) {
        bool ok = true;
        for (const Path& f : k) ok = ok && f.length() <= 1;
        thin += ok;
      }
      EXPECT_EQ(thin, binomial(p, n)) << n << " " << p;
    }
}

TEST(Coalgebra, Delta2Power) {
  HopfAlgebra h = s3_algebra(false);
  const HopfQuiver& q = h.quiver();
  Arrow a = q.arrows_from(h.group().identity())[0];
  Arrow b = q.arrows_from(h.group().identity())[2];
  Path pa = h.path({a}), pb = h.path({b});
  TensorVector d1 = h.delta2_power(pa, pb, 1);
  ASSERT_EQ(d1.size(), 1u);
  EXPECT_EQ(d1.terms().begin()->first, (TensorVector::Key{pa, pb}));
  EXPECT_EQ(h.delta2_power(pa, pb, 2).size(), 4u);
  Path b2 = h.path({b, q.arrows_from(q.target(b))[0]});
  for (int p = 1; p <= 4; ++p)
    EXPECT_EQ(h.delta2_power(b2, pa, p).size(), h.delta_power(b2, p).size() * h.delta_power(pa, p).size());
}

// ---- thin splits ------------------------------------------------------------

TEST(ThinSplits, SmallCases) {
  auto d = thin_splits(1, 2);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].to_string(), "(0,1)");
  EXPECT_EQ(d[1].to_string(), "(1,0)");
  auto z = thin_splits(0, 3);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].to_string(), "(0,0,0)");
  EXPECT_TRUE(thin_splits(4, 3).empty());
}

TEST(ThinSplits, CountsAreBinomial) {
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= 8; ++m) {
      auto masks = thin_splits(n, n + m);
      EXPECT_EQ(static_cast<long long>(masks.size()), binomial(n + m, n));
      std::set<std::uint64_t> distinct;
      for (const auto& d : masks) {
        EXPECT_EQ(d.weight(), n);
        EXPECT_EQ(d.complement().weight(), m);
        distinct.insert(d.bits);
      }
      EXPECT_EQ(distinct.size(), masks.size());
    }
}

TEST(ThinSplits, SevenThinCut) {
  HopfAlgebra h = s3_algebra(false);
  const HopfQuiver& q = h.quiver();
  Arrow a = q.arrows_from(h.group().identity())[0];
  Arrow b = q.arrows_from(q.target(a))[1];
  Arrow c = q.arrows_from(q.target(b))[2];
  Path cba = h.path({a, b, c});
  ThinSplitMask d{7, 0b0011001};
  ASSERT_EQ(d.to_string(), "(0,0,1,1,0,0,1)");
  auto pieces = h.apply_thin_split(d, cba);
  // Written position 7 first: (t(c), t(c), c, b, s(b), s(b), a).
  std::vector<ThinSplitPiece> expected{a, b.source, b.source, b, c, q.target(c), q.target(c)};
  EXPECT_EQ(pieces, expected);
  auto all = h.apply_thin_split(ThinSplitMask{3, 0b111}, cba);
  EXPECT_EQ(all, (std::vector<ThinSplitPiece>{a, b, c}));
  Path u = h.vertex(h.group().parse_element("(1 2 3)"));
  auto zeros = h.apply_thin_split(ThinSplitMask{3, 0}, u);
  EXPECT_EQ(zeros, (std::vector<ThinSplitPiece>(3, u.start)));
  EXPECT_THROW(h.apply_thin_split(ThinSplitMask{3, 0b11}, u), ValidationError);
}

// ---- product --------------------------------------------------------------------

TEST(Product, ArrowTimesArrowSummands) {
  HopfAlgebra h = s3_algebra(false);
  const Group& g = h.group();
  const HopfQuiver& q = h.quiver();
  Arrow a = q.arrows_from(g.parse_element("(1 2 3)"))[1];
  Arrow b = q.arrows_from(g.parse_element("(1 3)"))[2];
  Path pa = h.path({a}), pb = h.path({b});
  const GroupElement e = g.identity();
  // d = (1,0): [a . t(b)][s(a) . b].
  SymbolicTerm t10 = h.summand_factors(pa, pb, ThinSplitMask{2, 0b10});
  EXPECT_EQ(t10, (SymbolicTerm{{a.source, b, e}, {e, a, q.target(b)}}));
  // d = (0,1): [t(a) . b][a . s(b)].
  SymbolicTerm t01 = h.summand_factors(pa, pb, ThinSplitMask{2, 0b01});
  EXPECT_EQ(t01, (SymbolicTerm{{e, a, b.source}, {q.target(a), b, e}}));
  GradedVector sum = h.product_summand(pa, pb, ThinSplitMask{2, 0b10});
  sum.add(h.product_summand(pa, pb, ThinSplitMask{2, 0b01}));
  EXPECT_EQ(h.multiply(pa, pb), sum);
}

TEST(Product, CyclicSummandCarriesQ) {
  Field f = Field::cyclotomic(4);
  HopfAlgebra h = cyclic_algebra(4, f);
  Path e0 = cyclic_path(h, 1, 0);
  GradedVector v = h.product_summand(e0, e0, ThinSplitMask{2, 0b10});
  GradedVector expected(cyclic_path(h, 2, 0), f.generator());
  EXPECT_EQ(v, expected);
}

TEST(Product, LoopBinomials) {
  HopfAlgebra h = loop_algebra();
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m)
      EXPECT_EQ(h.multiply(loop_path(h, n), loop_path(h, m)),
                GradedVector(loop_path(h, n + m), h.field().integer(binomial(n + m, m))));
}

TEST(Product, VertexActionsOnCyclicPaths) {
  Field f = Field::cyclotomic(5);
  HopfAlgebra h = cyclic_algebra(5, f);
  const Group& g = h.group();
  for (int n = 0; n <= 4; ++n)
    for (int i = 0; i < 5; ++i) {
      EXPECT_EQ(h.multiply(h.vertex({i}), cyclic_path(h, n, 0)), single(h, cyclic_path(h, n, i)));
      EXPECT_EQ(h.multiply(cyclic_path(h, n, 0), h.vertex({i})),
                GradedVector(cyclic_path(h, n, i), pow(f.generator(), n * i)));
    }
  EXPECT_EQ(h.multiply(h.vertex({2}), h.vertex({4})), single(h, h.vertex(g.multiply({2}, {4}))));
}

TEST(Product, HomogeneityAndMaskCount) {
  for (const HopfAlgebra& h : {s3_algebra(true), parallel_cyclic4()}) {
    auto paths = all_paths(h, 2);
    for (const Path& a : paths)
      for (const Path& b : paths) {
        auto masks = thin_splits(static_cast<int>(a.length()), static_cast<int>(a.length() + b.length()));
        EXPECT_EQ(static_cast<long long>(masks.size()),
                  binomial(static_cast<int>(a.length() + b.length()), static_cast<int>(a.length())));
        GradedVector sum;
        for (const auto& d : masks) sum.add(h.product_summand(a, b, d));
        ASSERT_EQ(sum, h.multiply(a, b));
        GroupElement s = h.group().multiply(a.start, b.start), t = h.group().multiply(a.end, b.end);
        for (const auto& [p, c] : sum.terms()) {
          EXPECT_EQ(p.length(), a.length() + b.length());
          EXPECT_EQ(p.start, s);
          EXPECT_EQ(p.end, t);
        }
      }
  }
}

TEST(Product, ThreeTermArrowTimesTwoPath) {
  HopfAlgebra h = s3_algebra(false);
  const Group& g = h.group();
  const HopfQuiver& q = h.quiver();
  const GroupElement e = g.identity();
  Arrow a = q.arrows_from(g.parse_element("(1 2)"))[0];
  Arrow b = q.arrows_from(e)[1];
  Arrow c = q.arrows_from(q.target(b))[2];
  Path pa = h.path({a}), cb = h.path({b, c});
  std::multiset<SymbolicTerm> got;
  for (const auto& d : thin_splits(1, 3)) got.insert(h.summand_factors(pa, cb, d));
  // [t(a).c][t(a).b][a.s(b)] + [t(a).c][a.t(b)][s(a).b] + [a.t(c)][s(a).c][s(a).b]
  GroupElement ta = q.target(a), sa = a.source;
  std::multiset<SymbolicTerm> expected{
      {{e, a, b.source}, {ta, b, e}, {ta, c, e}},
      {{sa, b, e}, {e, a, q.target(b)}, {ta, c, e}},
      {{sa, b, e}, {sa, c, e}, {e, a, q.target(c)}}};
  EXPECT_EQ(got, expected);
}

// Reassemble multiply from delta2_power: keep the interleaved terms whose
// factors are complementary thin splits, act position-wise and concatenate.
TEST(Product, Delta2RouteReproducesMultiply) {
  for (const HopfAlgebra& h : {s3_algebra(true), cyclic_algebra(3, Field::cyclotomic(3)), parallel_cyclic4()}) {
    const HopfBimodule& bm = h.bimodule();
    const HopfQuiver& q = h.quiver();
    auto paths = all_paths(h, 2);
    for (const Path& a : paths)
      for (const Path& b : paths) {
        const int p = static_cast<int>(a.length() + b.length());
        GradedVector expected;
        if (p == 0) {
          expected = single(h, h.vertex(h.group().multiply(a.start, b.start)));
          ASSERT_EQ(expected, h.multiply(a, b));
          continue;
        }
        const TensorVector d2 = h.delta2_power(a, b, p);
        for (const auto& [key, coeff] : d2.terms()) {
          bool keep = true;
          for (int i = 0; i < p && keep; ++i) {
            const Path& x = key[static_cast<std::size_t>(2 * i)];
            const Path& y = key[static_cast<std::size_t>(2 * i + 1)];
            keep = x.length() + y.length() == 1;
          }
          if (!keep) continue;
          std::vector<std::pair<std::vector<Arrow>, Scalar>> partial{{{}, coeff}};
          for (int i = p - 1; i >= 0; --i) {  // position 1 is the last pair
            const Path& x = key[static_cast<std::size_t>(2 * i)];
            const Path& y = key[static_cast<std::size_t>(2 * i + 1)];
            ArrowCombination piece = x.is_vertex() ? ArrowCombination{{bm.left_act(x.start, y.arrows[0]), h.field().one()}}
                                                   : bm.right_act(x.arrows[0], y.start);
            std::vector<std::pair<std::vector<Arrow>, Scalar>> next;
            for (const auto& [arrows, c] : partial)
              for (const auto& [arrow, c2] : piece) {
                auto ext = arrows;
                ext.push_back(arrow);
                next.emplace_back(ext, c * c2);
              }
            partial = std::move(next);
          }
          for (auto& [arrows, c] : partial) expected.add(Path{arrows.front().source, q.target(arrows.back()), arrows}, c);
        }
        ASSERT_EQ(expected, h.multiply(a, b)) << h.path_name(a) << " * " << h.path_name(b);
      }
  }
}

TEST(Product, PermutationFormulaSmallCases) {
  HopfAlgebra h = s3_algebra(false);
  const Group& g = h.group();
  const HopfQuiver& q = h.quiver();
  const GroupElement e = g.identity();
  Arrow a = q.arrows_from(e)[0];
  Arrow b = q.arrows_from(g.parse_element("(1 2 3)"))[1];
  std::vector<Arrow> one{a};
  EXPECT_EQ(h.arrow_sequence_product(one), single(h, h.path({a})));
  std::vector<Arrow> two{a, b};  // a . b
  auto terms = h.arrow_sequence_terms(two);
  ASSERT_EQ(terms.size(), 2u);
  // Identity permutation first: [a.t(b)][s(a).b], factor for position 1 first.
  EXPECT_EQ(terms[0], (SymbolicTerm{{a.source, b, e}, {e, a, q.target(b)}}));
  EXPECT_EQ(terms[1], (SymbolicTerm{{e, a, b.source}, {q.target(a), b, e}}));
  EXPECT_EQ(h.arrow_sequence_product(two), h.multiply(h.path({a}), h.path({b})));
}

TEST(Product, PermutationFormulaMatchesIteratedProduct) {
  std::mt19937 rng(3);
  for (const HopfAlgebra& h : {s3_algebra(true), cyclic_algebra(4, Field::cyclotomic(4))}) {
    auto arrows = h.quiver().arrows();
    std::uniform_int_distribution<std::size_t> pick(0, arrows.size() - 1);
    for (int len = 1; len <= 3; ++len)
      for (int t = 0; t < 15; ++t) {
        std::vector<Arrow> seq;
        for (int i = 0; i < len; ++i) seq.push_back(arrows[pick(rng)]);
        ASSERT_EQ(h.arrow_sequence_product(seq), h.iterated_product(seq));
      }
  }
}

TEST(Product, MixedAlgebrasRejected) {
  HopfAlgebra h = cyclic_algebra(4, Field::cyclotomic(4));
  GradedVector foreign(h.vertex({0}), Field::rational().one());
  EXPECT_THROW(h.multiply(foreign, single(h, cyclic_path(h, 1, 0))), FieldMismatch);
}

// ---- antipode -----------------------------------------------------------------

TEST(Antipode, VertexAndArrow) {
  HopfAlgebra h = s3_algebra(true);
  const Group& g = h.group();
  for (GroupElement x : g.elements()) EXPECT_EQ(h.antipode(h.vertex(x)), single(h, h.vertex(g.inverse(x))));
  for (const Arrow& a : h.quiver().arrows()) {
    Path pa = h.path({a});
    // -t(a)^-1 . a . s(a)^-1
    GradedVector expected = -h.multiply(h.multiply(h.vertex(g.inverse(h.quiver().target(a))), pa), h.vertex(g.inverse(a.source)));
    EXPECT_EQ(h.antipode(pa), expected);
    ASSERT_EQ(expected.terms().size(), 1u);
    const Path& image = expected.terms().begin()->first;
    EXPECT_EQ(image.start, g.inverse(h.quiver().target(a)));
    EXPECT_EQ(image.end, g.inverse(a.source));
  }
}

TEST(Antipode, LoopQuiver) {
  HopfAlgebra h = loop_algebra();
  EXPECT_EQ(h.antipode(loop_path(h, 1)), GradedVector(loop_path(h, 1), h.field().integer(-1)));
  EXPECT_EQ(h.antipode(loop_path(h, 2)), single(h, loop_path(h, 2)));
  for (int n = 0; n <= 6; ++n)
    EXPECT_EQ(h.antipode(loop_path(h, n)), GradedVector(loop_path(h, n), h.field().integer(n % 2 ? -1 : 1)));
}

TEST(Antipode, BothIdentitiesUpToDegreeThree) {
  for (const HopfAlgebra& h : {s3_algebra(true), cyclic_algebra(4, Field::cyclotomic(4)), parallel_cyclic4()}) {
    for (const Path& p : all_paths(h, 3)) {
      GradedVector left, right;
      const TensorVector dp = h.comultiply(p);
      for (const auto& [k, c] : dp.terms()) {
        left.add(h.multiply(h.antipode(k[0]), k[1]), c);
        right.add(h.multiply(k[0], h.antipode(k[1])), c);
      }
      GradedVector expected = h.counit(p) * h.unit();
      ASSERT_EQ(left, expected) << h.path_name(p);
      ASSERT_EQ(right, expected) << h.path_name(p);
    }
  }
}

// ---- bases ------------------------------------------------------------------------

TEST(Isotypic, Bases) {
  HopfAlgebra loop = loop_algebra();
  auto l3 = loop.isotypic_basis({3, {0}, {0}});
  ASSERT_EQ(l3.size(), 1u);
  EXPECT_EQ(loop.path_name(l3[0]), "X^3");
  HopfAlgebra crown = cyclic_algebra(3, Field::cyclotomic(3));
  auto c3 = crown.isotypic_basis({3, {0}, {0}});
  ASSERT_EQ(c3.size(), 1u);
  EXPECT_EQ(crown.path_name(c3[0]), "E3_0");
  HopfAlgebra par = parallel_cyclic4();
  EXPECT_EQ(par.isotypic_basis({2, {0}, {2}}).size(), 4u);
  EXPECT_TRUE(par.isotypic_basis({2, {0}, {1}}).empty());
}

// ---- q-series ------------------------------------------------------------------

TEST(GaussBinomial, SmallValues) {
  Field f = Field::rational_function();
  Scalar q = f.generator();
  for (int n = 0; n <= 6; ++n) EXPECT_TRUE(gauss_binomial(n, 0, q).is_one());
  EXPECT_EQ(gauss_binomial(2, 1, q), f.parse("1+q"));
  EXPECT_EQ(gauss_binomial(4, 2, q), f.parse("1+q+2q^2+q^3+q^4"));
  EXPECT_TRUE(gauss_binomial(3, 5, q).is_zero());
  EXPECT_TRUE(gauss_binomial(3, -1, q).is_zero());
}

TEST(GaussBinomial, MatchesInversionCount) {
  for (const Field& f : {Field::rational_function(), Field::cyclotomic(4), Field::cyclotomic(5)}) {
    Scalar q = f.generator();
    for (int n = 0; n <= 9; ++n)
      for (int i = 0; i <= n; ++i) EXPECT_EQ(gauss_binomial(n, i, q), inversion_oracle(n, i, q)) << n << " " << i;
  }
}

TEST(GaussBinomial, MatchesFactorialFormulaWhenDefined) {
  Field f = Field::rational_function();
  for (int n = 0; n <= 10; ++n)
    for (int i = 0; i <= n; ++i) {
      auto viaf = gauss_binomial_factorial(n, i, f.generator());
      ASSERT_TRUE(viaf.has_value());
      EXPECT_EQ(*viaf, gauss_binomial(n, i, f.generator()));
    }
  Field z4 = Field::cyclotomic(4);
  EXPECT_FALSE(gauss_binomial_factorial(8, 4, z4.generator()).has_value());  // 4_q = 0 below the bar
  auto vanishing = gauss_binomial_factorial(4, 2, z4.generator());            // 4_q = 0 above the bar
  ASSERT_TRUE(vanishing.has_value());
  EXPECT_TRUE(vanishing->is_zero());
  EXPECT_EQ(*vanishing, gauss_binomial(4, 2, z4.generator()));
}

TEST(GaussBinomial, QEqualsOneIsOrdinary) {
  Field f = Field::rational();
  for (int n = 0; n <= 10; ++n)
    for (int i = 0; i <= n; ++i) EXPECT_EQ(gauss_binomial(n, i, f.one()), f.integer(binomial(n, i)));
}

TEST(CyclicClosedForm, SmallCases) {
  Field f = Field::rational_function();
  Scalar q = f.generator();
  CyclicProduct p = cyclic_closed_form(1, 0, 1, 0, q);
  EXPECT_EQ(p.coefficient, f.parse("1+q"));
  EXPECT_EQ(p.length, 2);
  EXPECT_EQ(p.start, 0);
  CyclicProduct p2 = cyclic_closed_form(1, 0, 1, 1, q);
  EXPECT_EQ(p2.coefficient, f.parse("q(1+q)"));
  EXPECT_EQ(p2.start, 1);
  CyclicProduct wrap = cyclic_closed_form(2, 3, 1, 2, q, 4);
  EXPECT_EQ(wrap.start, 1);
}

TEST(CyclicClosedForm, AgreesWithMultiplyOnInfiniteCyclic) {
  Group z = Group::infinite_cyclic();
  Field f = Field::rational_function();
  HopfAlgebra h(HopfBimodule::build(z, {{GroupElement{1}, RightModule::character(z.whole(), {1}, f.generator())}}, f));
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for (int i = -2; i <= 2; ++i)
        for (int j = -2; j <= 2; ++j) {
          CyclicProduct c = cyclic_closed_form(n, i, m, j, f.generator());
          EXPECT_EQ(h.multiply(cyclic_path(h, n, i), cyclic_path(h, m, j)),
                    GradedVector(cyclic_path(h, c.length, c.start), c.coefficient));
        }
}

// ---- printing --------------------------------------------------------------------

TEST(Printing, Notation) {
  Field f = Field::cyclotomic(4);
  HopfAlgebra h = cyclic_algebra(4, f);
  Path e0 = cyclic_path(h, 1, 0);
  EXPECT_EQ(h.to_string(h.multiply(e0, e0)), "(1+q) E2_0");
  EXPECT_EQ(h.to_string(h.multiply(e0, h.vertex({1}))), "q E1_1");
  EXPECT_EQ(h.to_string(h.antipode(e0)), "-E1_3");
  EXPECT_EQ(h.to_string(GradedVector{}), "0");
  HopfAlgebra loop = loop_algebra();
  EXPECT_EQ(loop.to_string(loop.multiply(loop_path(loop, 1), loop_path(loop, 2))), "3 X^3");
  HopfAlgebra s3 = s3_algebra(false);
  Arrow a = s3.quiver().arrows_from(s3.group().identity())[0];
  EXPECT_EQ(s3.path_name(s3.path({a})), s3.quiver().arrow_name(a));
}

// ---- verifier -----------------------------------------------------------------------

TEST(VerifyBialgebra, PassesOnSmallStructures) {
  auto r = verify_graded_bialgebra(loop_algebra(), 5);
  EXPECT_TRUE(r.passed) << r.check << " " << r.witness;
  auto c = verify_graded_bialgebra(cyclic_algebra(3, Field::cyclotomic(3)), 3);
  EXPECT_TRUE(c.passed) << c.check << " " << c.witness;
  auto p = verify_graded_bialgebra(parallel_cyclic4(), 3);
  EXPECT_TRUE(p.passed) << p.check << " " << p.witness;
}

TEST(VerifyBialgebra, InfiniteCyclicWindow) {
  Group z = Group::infinite_cyclic();
  Field f = Field::rational_function();
  HopfAlgebra h(HopfBimodule::build(z, {{GroupElement{1}, RightModule::character(z.whole(), {1}, f.generator())}}, f));
  // Products of window paths may leave the window; the checks stay exact.
  auto r = verify_graded_bialgebra(h, 3, -2, 2);
  EXPECT_TRUE(r.passed) << r.check << " " << r.witness;
}

TEST(VerifyBialgebra, DroppedSummandFails) {
  HopfAlgebra h = cyclic_algebra(4, Field::cyclotomic(4));
  auto r = verify_graded_bialgebra(h.with_mutation(ProductMutation{1, 1, 0b01}), 3);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.witness.empty());
}
