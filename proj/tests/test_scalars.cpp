#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <vector>

#include "hopfquiver/scalars.hpp"

using namespace hopfquiver;

namespace {

// Integer polynomials, low degree first, for an independent cyclotomic oracle.
using IntPoly = std::vector<long long>;

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial; fails the test on a remainder.
IntPoly exact_div(IntPoly a, const IntPoly& b) {
  IntPoly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = a[k + b.size() - 1];
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  for (long long c : a) EXPECT_EQ(c, 0);
  return q;
}

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Phi_n = prod_{d | n} (q^d - 1)^{mu(n/d)}.
IntPoly mobius_cyclotomic(int n) {
  IntPoly num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    IntPoly f(static_cast<std::size_t>(d) + 1, 0);
    f[0] = -1;
    f[static_cast<std::size_t>(d)] = 1;
    int mu = mobius(n / d);
    if (mu == 1) num = mul(num, f);
    if (mu == -1) den = mul(den, f);
  }
  // den is monic up to sign (-1)^k; normalize before dividing.
  if (den.back() < 0) {
    for (auto& c : den) c = -c;
    for (auto& c : num) c = -c;
  }
  return exact_div(num, den);
}

int euler_phi(int n) {
  int count = 0;
  for (int k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
  return count;
}

Scalar random_scalar(const Field& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4), den(1, 5), deg(0, 4);
  // mpq_class(num, den) needs canonicalize() before arithmetic.
  auto random_rational = [&] {
    Rational r(coeff(rng), den(rng));
    r.canonicalize();
    return r;
  };
  auto random_poly = [&](bool nonzero) {
    while (true) {
      std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = random_rational();
      Poly p(c);
      if (!nonzero || !p.is_zero()) return p;
    }
  };
  switch (f.kind()) {
    case FieldKind::rational: return f.from_rational(random_rational());
    case FieldKind::cyclotomic: return Scalar(Cyclotomic(f.order(), random_poly(false)));
    case FieldKind::rational_function: return Scalar(RationalFunction(random_poly(false), random_poly(true)));
  }
  return f.zero();
}

const std::vector<Field> kFields = {Field::rational(), Field::cyclotomic(3), Field::cyclotomic(4),
                                    Field::cyclotomic(12), Field::rational_function()};

}  // namespace

TEST(Rational, BasicArithmetic) {
  Field q = Field::rational();
  EXPECT_EQ(q.parse("1/2") + q.parse("1/3"), q.parse("5/6"));
  EXPECT_EQ((q.parse("1/2") + q.parse("1/3")).to_string(), "5/6");
  EXPECT_EQ(q.parse("4/6").to_string(), "2/3");
  EXPECT_EQ(q.parse("3/-6").to_string(), "-1/2");
}

TEST(Cyclotomic, FourthRootSquaresToMinusOne) {
  Field f = Field::cyclotomic(4);
  Scalar q = f.generator();
  EXPECT_EQ(q * q, f.integer(-1));
  EXPECT_EQ((q * q).to_string(), "-1");
}

TEST(Cyclotomic, PolynomialMatchesMobiusProduct) {
  for (int n = 1; n <= 30; ++n) {
    IntPoly oracle = mobius_cyclotomic(n);
    const Poly& phi = cyclotomic_polynomial(n);
    ASSERT_EQ(phi.degree(), euler_phi(n)) << "n = " << n;
    ASSERT_EQ(static_cast<int>(oracle.size()) - 1, phi.degree()) << "n = " << n;
    for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_EQ(phi.coefficient(i), Rational(static_cast<long>(oracle[i]))) << "n = " << n;
  }
}

TEST(Cyclotomic, GeneratorHasExactOrder) {
  for (int n = 1; n <= 24; ++n) {
    Field f = Field::cyclotomic(n);
    Scalar q = f.generator();
    EXPECT_EQ(pow(q, n), f.one()) << n;
    for (int m = 1; m < n; ++m) EXPECT_NE(pow(q, m), f.one()) << n << " " << m;
  }
}

TEST(Cyclotomic, CoefficientVectorHasLengthPhi) {
  std::mt19937 rng(7);
  for (int n : {1, 2, 5, 6, 8, 9, 12}) {
    Field f = Field::cyclotomic(n);
    for (int t = 0; t < 20; ++t)
      EXPECT_EQ(random_scalar(f, rng).as_cyclotomic()->coefficients().size(), static_cast<std::size_t>(euler_phi(n)));
  }
}

TEST(Cyclotomic, PrimitiveRootsOfUnity) {
  Field f = Field::cyclotomic(12);
  for (int m : {1, 2, 3, 4, 6, 12}) {
    ASSERT_TRUE(f.contains_roots_of_unity(m));
    Scalar z = f.primitive_root_of_unity(m);
    EXPECT_EQ(pow(z, m), f.one());
    for (int k = 1; k < m; ++k) EXPECT_NE(pow(z, k), f.one());
  }
  EXPECT_FALSE(f.contains_roots_of_unity(5));
  EXPECT_TRUE(Field::rational().contains_roots_of_unity(2));
  EXPECT_FALSE(Field::rational().contains_roots_of_unity(3));
}

TEST(RationalFunction, CancelsCommonFactors) {
  Field f = Field::rational_function();
  Scalar r = f.parse("(1 - q^2) / (1 - q)");
  EXPECT_EQ(r, f.parse("1 + q"));
  EXPECT_EQ(r.to_string(), "1+q");
  RationalFunction rf = *f.parse("(2q+2)/(4q^2-4)").as_rational_function();
  EXPECT_EQ(rf.denominator().to_string(), "-1+q");
  EXPECT_EQ(rf.numerator().to_string(), "1/2");
}

TEST(Scalar, DivisionByZeroThrows) {
  for (const Field& f : kFields) {
    EXPECT_THROW(f.one() / f.zero(), DivisionByZero) << f.name();
    EXPECT_THROW(f.zero().inverse(), DivisionByZero) << f.name();
  }
}

TEST(Scalar, MixedFieldsThrow) {
  EXPECT_THROW(Field::rational().one() + Field::cyclotomic(4).one(), FieldMismatch);
  EXPECT_THROW(Field::cyclotomic(3).one() * Field::cyclotomic(4).one(), FieldMismatch);
  EXPECT_THROW(Field::rational_function().one() - Field::rational().one(), FieldMismatch);
}

TEST(Scalar, IntegerEmbedding) {
  for (const Field& f : kFields) {
    Scalar x = f.one() * 5 - f.integer(2);
    EXPECT_EQ(x, f.integer(3)) << f.name();
    EXPECT_EQ(f.integer(3).to_string(), "3");
  }
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  std::mt19937 rng(2024);
  for (const Field& f : kFields) {
    for (int t = 0; t < 60; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      EXPECT_EQ((a + b) + c, a + (b + c)) << f.name();
      EXPECT_EQ((a * b) * c, a * (b * c)) << f.name();
      EXPECT_EQ(a + b, b + a) << f.name();
      EXPECT_EQ(a * b, b * a) << f.name();
      EXPECT_EQ(a * (b + c), a * b + a * c) << f.name();
      EXPECT_EQ(a + f.zero(), a);
      EXPECT_EQ(a * f.one(), a);
      EXPECT_TRUE((a - a).is_zero());
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), f.one()) << f.name() << " " << a.to_string();
        EXPECT_EQ((b / a) * a, b) << f.name();
      }
    }
  }
}

TEST(Scalar, CanonicalFormDecidesEquality) {
  std::mt19937 rng(11);
  for (const Field& f : kFields) {
    for (int t = 0; t < 40; ++t) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng);
      Scalar a2 = (a + b) - b;
      EXPECT_EQ(a == a2, a.to_string() == a2.to_string());
      EXPECT_EQ(a == b, a.to_string() == b.to_string());
    }
  }
}

TEST(Scalar, TextRoundTrip) {
  std::mt19937 rng(5);
  for (const Field& f : kFields)
    for (int t = 0; t < 40; ++t) {
      Scalar a = random_scalar(f, rng);
      EXPECT_EQ(f.parse(a.to_string()), a) << f.name() << " " << a.to_string();
    }
}

TEST(Scalar, MalformedTextIsRejected) {
  EXPECT_THROW(Field::rational().parse("1/"), ParseError);
  EXPECT_THROW(Field::rational().parse("q"), Error);
  EXPECT_THROW(Field::cyclotomic(4).parse("(1+q"), ParseError);
  EXPECT_THROW(parse_field("cyclotomic:x"), ParseError);
}

TEST(Field, ParseDeclarations) {
  EXPECT_EQ(parse_field("rational"), Field::rational());
  EXPECT_EQ(parse_field("zeta6"), Field::cyclotomic(6));
  EXPECT_EQ(parse_field("cyclotomic:5"), Field::cyclotomic(5));
  EXPECT_EQ(parse_field("generic"), Field::rational_function());
}

TEST(Scalar, NegativePowersInvert) {
  Field f = Field::rational_function();
  Scalar q = f.generator();
  EXPECT_EQ(pow(q, -2) * pow(q, 2), f.one());
  Field z = Field::cyclotomic(5);
  EXPECT_EQ(pow(z.generator(), -1), pow(z.generator(), 4));
}
