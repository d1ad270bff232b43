#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "treechar/surface.hpp"

using namespace treechar;

namespace {

template <class Field>
Mat2<typename Field::Element> random_matrix(const Field& k, std::mt19937_64& rng) {
  return {k.random(rng), k.random(rng), k.random(rng), k.random(rng)};
}

template <class Field>
Mat2<typename Field::Element> random_sl2(const Field& k, std::mt19937_64& rng) {
  while (true) {
    const auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
    if (a.is_zero()) continue;
    return {a, b, c, (k.one() + b * c) / a};
  }
}

// the family without the trace condition, so that r is free
template <class Field>
typename Field::Element abc_trace_at(const Field& k, const typename Field::Element& q, const typename Field::Element& r,
                                     const typename Field::Element& s) {
  using E = typename Field::Element;
  const E one = k.one(), i = *imaginary_unit(k);
  const Mat2<E> A{q, r, (-one + q - q * q) / r, one - q};
  const Mat2<E> B{i, k.zero(), k.zero(), -i};
  const Mat2<E> C{s, one, -one - s * s, -s};
  return (A * B * C).trace();
}

}  // namespace

TEST_CASE("surface_eval examples") {
  const PrimeField k(101);
  CHECK(surface_eval(k.of(2), k.of(2), k.of(2)) == k.of(16));
  CHECK(surface_eval(k.of(2), k.zero(), k.zero()).is_zero());
  CHECK(surface_poly().to_string() == "u*v*w + u^2 + v^2 + w^2 - u - 2");
}

TEST_CASE("three-matrix trace identity holds for all 2x2 matrices") {
  const Mat2<Fp> id = Mat2<Fp>::identity(PrimeField(5).one());
  CHECK(verify_three_matrix_identity(id, id, id).is_zero());
  std::mt19937_64 rng(1);
  for (std::int64_t p : {5, 7, 13}) {
    const PrimeField k(p);
    for (int i = 0; i < 400; ++i) REQUIRE(verify_three_matrix_identity(random_matrix(k, rng), random_matrix(k, rng), random_matrix(k, rng)).is_zero());
    // singular first factor
    for (int i = 0; i < 100; ++i) {
      const auto a = k.random(rng), b = k.random(rng), c = k.random(rng);
      const Mat2<Fp> X{a, b, c * a, c * b};
      REQUIRE(X.det().is_zero());
      REQUIRE(verify_three_matrix_identity(X, random_matrix(k, rng), random_matrix(k, rng)).is_zero());
    }
  }
  const Fp2Field k2{PrimeField(7)};
  for (int i = 0; i < 200; ++i) REQUIRE(verify_three_matrix_identity(random_matrix(k2, rng), random_matrix(k2, rng), random_matrix(k2, rng)).is_zero());
}

TEST_CASE("SL2 trace identity on random SL2 triples") {
  std::mt19937_64 rng(2);
  const Fp2Field k{PrimeField(11)};
  for (int i = 0; i < 300; ++i) {
    const auto X = random_sl2(k, rng), Y = random_sl2(k, rng), Z = random_sl2(k, rng);
    REQUIRE(sl2_trace_identity(X.trace(), Y.trace(), Z.trace(), (Y * Z).trace(), (Z * X).trace(), (X * Y).trace(), (X * Y * Z).trace())
                .is_zero());
  }
}

TEST_CASE("specialized identity is the surface equation") {
  CHECK(specialized_sl2_identity() == surface_poly());
}

TEST_CASE("enumeration over F_5 against brute force") {
  const PrimeField k(5);
  const auto pts = enumerate_points(k);
  std::set<std::array<std::int64_t, 3>> got, want;
  for (const auto& pt : pts) {
    REQUIRE(surface_eval(pt.u, pt.v, pt.w).is_zero());
    got.insert({pt.u.value(), pt.v.value(), pt.w.value()});
  }
  for (std::int64_t u = 0; u < 5; ++u)
    for (std::int64_t v = 0; v < 5; ++v)
      for (std::int64_t w = 0; w < 5; ++w)
        if ((u * v * w + u * u + v * v + w * w - u - 2 + 100) % 5 == 0) want.insert({u, v, w});
  CHECK(got == want);
  CHECK(got.size() == pts.size());
  CHECK(got.count({2, 0, 0}) == 1);
}

TEST_CASE("point counts grow like q^2") {
  for (std::int64_t p : {5, 7, 11}) {
    const double n = static_cast<double>(enumerate_points(PrimeField(p)).size());
    const double q2 = static_cast<double>(p * p);
    CHECK(n >= q2 / 4);
    CHECK(n <= q2 * 4);
  }
  const auto f25 = enumerate_points(Fp2Field(PrimeField(5)));
  CHECK(f25.size() >= 625 / 4);
  CHECK(f25.size() <= 625 * 4);
  CHECK_THROWS_AS(enumerate_points(Fp2Field(PrimeField(17))), std::invalid_argument);
}

TEST_CASE("solve_for_r roots satisfy the trace condition") {
  const Fp2Field k{PrimeField(5)};
  const QuadField<Fp2Field> ext(k);
  std::size_t base = 0, extended = 0;
  for (std::uint64_t a = 0; a < k.order(); ++a)
    for (std::uint64_t b = 0; b < k.order(); ++b) {
      const auto q = k.element(a), s = k.element(b);
      if ((s * s + k.one()).is_zero()) {
        CHECK_THROWS_AS(solve_for_r(k, q, s), std::domain_error);
        continue;
      }
      const auto sol = solve_for_r(k, q, s);
      for (const auto& r : sol.roots) {
        ++base;
        const auto rho = make_rep(k, q, r, s);
        REQUIRE((rho.A * rho.B * rho.C).trace() == k.one());
      }
      for (const auto& r : sol.ext_roots) {
        ++extended;
        REQUIRE(abc_trace_at(ext, ext.embed(q), r, ext.embed(s)) == ext.one());
      }
      // a solution exists unless r = 0 was the only root
      if (sol.roots.empty() && sol.ext_roots.empty()) REQUIRE(sol.c.is_zero());
    }
  CHECK(base > 0);
  CHECK(extended > 0);
}

TEST_CASE("solve_for_r warns on the excluded roots of unity") {
  const Fp2Field k{PrimeField(7)};
  const auto sol = solve_for_r(k, k.of(3), k.one());
  CHECK(std::find(sol.warnings.begin(), sol.warnings.end(), "s is a 4th root of unity") != sol.warnings.end());
  const auto sol2 = solve_for_r(k, k.one(), k.of(3));
  CHECK(std::find(sol2.warnings.begin(), sol2.warnings.end(), "q is a 6th root of unity") != sol2.warnings.end());
  CHECK_THROWS_AS(solve_for_r(PrimeField(7), PrimeField(7).of(1), PrimeField(7).of(2)), std::domain_error);
}

TEST_CASE("r-coefficients agree with interpolation of tr ABC") {
  // r * tr ABC(r) is quadratic in r; three sample values of r pin it down
  const Fp2Field k{PrimeField(13)};
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 50) {
    const auto q = k.random(rng), s = k.random(rng);
    if ((s * s + k.one()).is_zero()) continue;
    const auto r1 = k.of(1), r2 = k.of(2), r3 = k.of(3);
    const auto y1 = r1 * abc_trace_at(k, q, r1, s), y2 = r2 * abc_trace_at(k, q, r2, s), y3 = r3 * abc_trace_at(k, q, r3, s);
    // Lagrange at 0 gives the constant term; divided differences give the rest
    const auto d12 = (y2 - y1) / (r2 - r1), d23 = (y3 - y2) / (r3 - r2);
    const auto a = (d23 - d12) / (r3 - r1);
    const auto b = d12 - a * (r1 + r2);
    const auto c = y1 - a * r1 * r1 - b * r1;
    const auto sol = solve_for_r(k, q, s);
    REQUIRE(sol.a == a);
    REQUIRE(sol.b == b - k.one());
    REQUIRE(sol.c == c);
    ++checked;
  }
}

TEST_CASE("phi lands on the surface") {
  const Fp2Field k{PrimeField(5)};
  std::mt19937_64 rng(4);
  const IntPoly3 t_bc = trace_poly(TildeWord::parse("B C"));
  for (int i = 0; i < 1000; ++i) {
    const auto rho = random_admissible_rep(k, rng);
    REQUIRE(rho.has_value());
    const auto pt = phi(*rho);
    REQUIRE(surface_eval(pt.u, pt.v, pt.w).is_zero());
    REQUIRE(pt.u == eval_trace_poly(t_bc, *rho));
  }
}

TEST_CASE("phi lands on the surface for every admissible parameter over F_25") {
  const Fp2Field k{PrimeField(5)};
  std::size_t n = 0;
  for (std::uint64_t a = 0; a < k.order(); ++a)
    for (std::uint64_t b = 0; b < k.order(); ++b) {
      const auto q = k.element(a), s = k.element(b);
      if ((s * s + k.one()).is_zero()) continue;
      for (const auto& r : solve_for_r(k, q, s).roots) {
        const auto pt = phi(make_rep(k, q, r, s));
        REQUIRE(surface_eval(pt.u, pt.v, pt.w).is_zero());
        ++n;
      }
    }
  CHECK(n > 0);
}

TEST_CASE("image in the (u, w) plane is two-dimensional") {
  for (std::int64_t p : {11, 13}) {
    const Fp2Field k{PrimeField(p)};
    std::set<std::pair<std::uint64_t, std::uint64_t>> image;
    for (std::uint64_t a = 0; a < k.order(); ++a)
      for (std::uint64_t b = 0; b < k.order(); ++b) {
        const auto q = k.element(a), s = k.element(b);
        if ((s * s + k.one()).is_zero()) continue;
        for (const auto& r : solve_for_r(k, q, s).roots) {
          const auto pt = phi(make_rep(k, q, r, s));
          image.insert({k.index(pt.u), k.index(pt.w)});
        }
      }
    CHECK(static_cast<double>(image.size()) >= static_cast<double>((p - 6) * (p - 6)) / 4);
  }
}
