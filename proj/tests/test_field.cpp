#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "treechar/field.hpp"
#include "treechar/mat2.hpp"

using namespace treechar;

TEST_CASE("prime field arithmetic reduces mod p") {
  const Fp a(7, 12), b(7, -3);
  CHECK(a.value() == 5);
  CHECK(b.value() == 4);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 6);
  CHECK((a / b * b) == a);
  CHECK(Fp(7, 3).inverse() == Fp(7, 5));
}

TEST_CASE("fields below 5 or of composite order are refused") {
  CHECK_THROWS_AS(PrimeField(3), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_NOTHROW(PrimeField(13));
}

TEST_CASE("square roots in F_5") {
  const PrimeField k(5);
  CHECK(*sqrt_in_field(k, k.of(4)) == k.of(2));
  CHECK_FALSE(sqrt_in_field(k, k.of(2)).has_value());
  CHECK(*sqrt_in_field(k, k.of(-1)) == k.of(2));
  CHECK(*imaginary_unit(k) == k.of(2));
}

TEST_CASE("squares mod p agree with brute force") {
  for (std::int64_t p : {5, 7, 11, 13, 17}) {
    const PrimeField k(p);
    std::set<std::int64_t> sq;
    for (std::int64_t x = 0; x < p; ++x) sq.insert(x * x % p);
    for (std::int64_t a = 0; a < p; ++a) {
      auto r = sqrt_in_field(k, k.of(a));
      CHECK(r.has_value() == (sq.count(a) == 1));
      if (r) CHECK(*r * *r == k.of(a));
    }
  }
}

TEST_CASE("the quadratic extension uses the least non-residue") {
  for (std::int64_t p : {5, 7, 11, 13}) {
    const Fp2Field k{PrimeField(p)};
    std::int64_t least = 0;
    for (std::int64_t n = 2; n < p && !least; ++n) {
      bool square = false;
      for (std::int64_t x = 1; x < p; ++x) square = square || (x * x % p == n);
      if (!square) least = n;
    }
    CHECK(k.nonresidue().value() == least);
    CHECK(k.gen() * k.gen() == k.of(least));
  }
}

template <class Field>
void check_field_axioms(const Field& k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 300; ++i) {
    const auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a - a == k.zero());
    if (!a.is_zero()) REQUIRE(a * a.inverse() == k.one());
  }
}

TEST_CASE("field axioms on samples") {
  check_field_axioms(PrimeField(13), 1);
  check_field_axioms(Fp2Field(PrimeField(5)), 2);
  check_field_axioms(Fp2Field(PrimeField(13)), 3);
  check_field_axioms(Fp4Field(Fp2Field(PrimeField(7))), 4);
}

TEST_CASE("every element of F_p^2 has a square root in F_p^4") {
  const Fp2Field k2{PrimeField(7)};
  const Fp4Field k4(k2);
  for (std::uint64_t i = 0; i < k2.order(); ++i) {
    auto r = sqrt_in_field(k4, k4.embed(k2.element(i)));
    REQUIRE(r.has_value());
    CHECK(*r * *r == k4.embed(k2.element(i)));
  }
}

TEST_CASE("the square root returned is the one of smaller index") {
  const Fp2Field k{PrimeField(7)};
  for (std::uint64_t i = 1; i < k.order(); ++i) {
    const auto x = k.element(i);
    auto r = sqrt_in_field(k, x * x);
    REQUIRE(r.has_value());
    CHECK(k.index(*r) == std::min(k.index(x), k.index(-x)));
  }
}

TEST_CASE("projective points and the Moebius action") {
  const PrimeField k(5);
  const Mat2<Fp> id = Mat2<Fp>::identity(k.one());
  const ProjPt<Fp> three = ProjPt<Fp>::finite(k.of(3));
  CHECK(mobius_act(id, three) == three);

  const Mat2<Fp> x{k.of(0), k.of(1), k.of(-1), k.of(-1)};
  const ProjPt<Fp> inf = ProjPt<Fp>::infinity(k.one());
  CHECK(mobius_act(x, inf) == ProjPt<Fp>::finite(k.zero()));

  CHECK(ProjPt<Fp>(k.of(2), k.of(4)) == ProjPt<Fp>::finite(k.of(3)));
  CHECK(ProjPt<Fp>(k.of(2), k.zero()) == inf);
  CHECK_THROWS(ProjPt<Fp>(k.zero(), k.zero()));
  CHECK_THROWS(mobius_act(Mat2<Fp>{k.one(), k.one(), k.one(), k.one()}, inf));
}

TEST_CASE("the Moebius action is an action") {
  const Fp2Field k{PrimeField(7)};
  std::mt19937_64 rng(5);
  auto rnd_invertible = [&] {
    while (true) {
      Mat2<Fp2> m{k.random(rng), k.random(rng), k.random(rng), k.random(rng)};
      if (!m.det().is_zero()) return m;
    }
  };
  for (int i = 0; i < 300; ++i) {
    const auto M = rnd_invertible(), N = rnd_invertible();
    const auto a = k.random(rng), b = k.random(rng);
    if (a.is_zero() && b.is_zero()) continue;
    const ProjPt<Fp2> x(a, b);
    REQUIRE(mobius_act(M * N, x) == mobius_act(M, mobius_act(N, x)));
  }
}

TEST_CASE("determinant is multiplicative and trace is cyclic") {
  const PrimeField k(11);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    Mat2<Fp> X{k.random(rng), k.random(rng), k.random(rng), k.random(rng)};
    Mat2<Fp> Y{k.random(rng), k.random(rng), k.random(rng), k.random(rng)};
    REQUIRE((X * Y).det() == X.det() * Y.det());
    REQUIRE((X * Y).trace() == (Y * X).trace());
    REQUIRE(X * X.adjugate() == X.det() * Mat2<Fp>::identity(k.one()));
  }
}
