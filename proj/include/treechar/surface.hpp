#pragma once

// The cubic surface S: uvw + u^2 + v^2 + w^2 - u - 2 = 0, and the character map onto it.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "treechar/field.hpp"
#include "treechar/generated/abc_trace_parts.hpp"
#include "treechar/intpoly3.hpp"
#include "treechar/mat2.hpp"
#include "treechar/trace.hpp"

namespace treechar {

template <class F>
F surface_eval(const F& u, const F& v, const F& w) {
  return u * v * w + u * u + v * v + w * w - u - u.of(2);
}

inline IntPoly3 surface_poly() {
  const IntPoly3 u = IntPoly3::u(), v = IntPoly3::v(), w = IntPoly3::w();
  return u * v * w + u * u + v * v + w * w - u - 2;
}

template <class F>
struct SurfacePoint {
  F u, v, w;
  friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) { return a.u == b.u && a.v == b.v && a.w == b.w; }
};

/// (tr BC, tr CA, tr AB). Landing off S means an arithmetic bug and throws std::logic_error.
template <class F>
SurfacePoint<F> phi(const RepTriple<F>& rho) {
  rho.validate();
  SurfacePoint<F> pt{rho.u(), rho.v(), rho.w()};
  if (!surface_eval(pt.u, pt.v, pt.w).is_zero()) throw std::logic_error("phi: image is not on the surface");
  return pt;
}

/// The trace identity for arbitrary 2x2 matrices; the value is always 0.
template <class F>
F verify_three_matrix_identity(const Mat2<F>& X, const Mat2<F>& Y, const Mat2<F>& Z) {
  auto tr = [](const Mat2<F>& m) { return m.trace(); };
  auto det = [](const Mat2<F>& m) { return m.det(); };
  const Mat2<F> xyz = X * Y * Z;
  const F t = tr(xyz);
  const Mat2<F>* m[3] = {&X, &Y, &Z};
  F acc = tr(X) * tr(Y) * tr(Z) * t + tr(Y * Z) * tr(Z * X) * tr(X * Y) + t * t - t.of(4) * det(xyz);
  for (int k = 0; k < 3; ++k) {
    const Mat2<F>& a = *m[k];
    const Mat2<F>& b = *m[(k + 1) % 3];
    const Mat2<F>& c = *m[(k + 2) % 3];
    const F bc = tr(b * c);
    acc += det(a) * bc * bc + tr(a) * tr(a) * det(b * c);
    acc -= det(a) * tr(b) * tr(c) * bc + tr(a) * bc * t;
  }
  return acc;
}

/// LHS - RHS of the SL_2 trace identity in the seven traces
/// x, y, z, yz, zx, xy, xyz. R is constructible from int, or a field element with of().
template <class R>
R sl2_trace_identity(const R& x, const R& y, const R& z, const R& yz, const R& zx, const R& xy, const R& xyz) {
  const R lhs = x * y * z * xyz + yz * zx * xy + xyz * xyz + (yz * yz + zx * zx + xy * xy) + (x * x + y * y + z * z);
  R four;
  if constexpr (std::is_constructible_v<R, int>)
    four = R(4);
  else
    four = x.of(4);
  const R rhs = (y * z * yz + z * x * zx + x * y * xy) + (x * yz * xyz + y * zx * xyz + z * xy * xyz) + four;
  return lhs - rhs;
}

/// The identity above with tr A = tr ABC = 1, tr B = tr C = 0, (yz, zx, xy) = (u, v, w).
inline IntPoly3 specialized_sl2_identity() {
  return sl2_trace_identity<IntPoly3>(1, 0, 0, IntPoly3::u(), IntPoly3::v(), IntPoly3::w(), 1);
}

/// Every point of S over a field of order at most 169.
template <class Field>
std::vector<SurfacePoint<typename Field::Element>> enumerate_points(const Field& k) {
  if (k.order() > 169) throw std::invalid_argument("enumerate_points: exhaustive mode needs q <= 169");
  std::vector<SurfacePoint<typename Field::Element>> out;
  for (std::uint64_t a = 0; a < k.order(); ++a)
    for (std::uint64_t b = 0; b < k.order(); ++b)
      for (std::uint64_t c = 0; c < k.order(); ++c) {
        auto u = k.element(a), v = k.element(b), w = k.element(c);
        if (surface_eval(u, v, w).is_zero()) out.push_back({u, v, w});
      }
  return out;
}

/// tr ABC of the family, split by powers of r, from the generated header.
struct AbcTraceParts {
  SymPoly r_pos, r_zero, r_neg;  // coefficients of r, 1, 1/r; each a polynomial in q, s
};

inline AbcTraceParts frozen_abc_trace_parts() {
  SymPoly all;
  for (const auto& t : generated::abc_trace_terms) all += SymPoly::monomial(GaussInt{t.re, t.im}, t.eq, t.er, t.es);
  if (all.min_r() < -1 || all.max_r() > 1) throw std::logic_error("generated tr ABC has unexpected r-degree");
  return {all.r_coefficient(1), all.r_coefficient(0), all.r_coefficient(-1)};
}

template <class Field>
struct RSolution {
  using E = typename Field::Element;
  using Ext = Quad<E>;

  E a, b, c;                  // a r^2 + b r + c = 0
  E discriminant;
  std::vector<E> roots;       // in the base field
  std::vector<Ext> ext_roots;  // only when the discriminant is a non-square
  std::vector<std::string> warnings;

  bool in_extension() const { return roots.empty() && !ext_roots.empty(); }
};

/// Solve tr ABC = 1 for r, i.e. r * (tr ABC - 1) = 0 as a quadratic. Roots r = 0 are dropped.
/// Throws std::domain_error when the r^2 coefficient i(s^2+1) vanishes or the field lacks i.
template <class Field>
RSolution<Field> solve_for_r(const Field& k, const typename Field::Element& q, const typename Field::Element& s) {
  using E = typename Field::Element;
  auto i = imaginary_unit(k);
  if (!i) throw std::domain_error("solve_for_r: field has no square root of -1");
  static const AbcTraceParts parts = frozen_abc_trace_parts();
  RSolution<Field> sol;
  sol.a = parts.r_pos.eval(q, k.one(), s, *i);
  sol.b = parts.r_zero.eval(q, k.one(), s, *i) - k.one();
  sol.c = parts.r_neg.eval(q, k.one(), s, *i);
  if (sol.a.is_zero()) throw std::domain_error("solve_for_r: leading coefficient vanishes (s^2 + 1 = 0)");
  if (pow(s, 4) == k.one()) sol.warnings.push_back("s is a 4th root of unity");
  if (pow(q, 6) == k.one()) sol.warnings.push_back("q is a 6th root of unity");
  if (sol.c.is_zero()) sol.warnings.push_back("r = 0 is a root and was dropped");

  sol.discriminant = sol.b * sol.b - k.of(4) * sol.a * sol.c;
  const E two_a = k.of(2) * sol.a;
  if (auto root = sqrt_in_field(k, sol.discriminant)) {
    for (const E& sq : {*root, -*root}) {
      E r = (-sol.b + sq) / two_a;
      if (r.is_zero()) continue;
      if (std::find(sol.roots.begin(), sol.roots.end(), r) == sol.roots.end()) sol.roots.push_back(r);
    }
  } else {
    // disc / nonresidue is a square, so sqrt(disc) = sqrt(disc / nr) * gen
    QuadField<Field> ext(k);
    auto half = sqrt_in_field(k, sol.discriminant / ext.nonresidue());
    if (!half) throw std::logic_error("solve_for_r: base element not a square in the quadratic extension");
    const auto ext_root = ext(k.zero(), *half);
    for (const auto& sq : {ext_root, -ext_root}) sol.ext_roots.push_back((ext.embed(-sol.b) + sq) / ext.embed(two_a));
    sol.warnings.push_back("discriminant is a non-square; roots lie in the quadratic extension");
  }
  return sol;
}

/// Draw (q, s) at random until solve_for_r has a root in the field itself, then build the
/// representation. Gives up after max_tries draws.
template <class Field, class Rng>
std::optional<RepTriple<typename Field::Element>> random_admissible_rep(const Field& k, Rng& rng, std::size_t max_tries = 1000) {
  const auto one = k.one();
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    const auto q = k.random(rng), s = k.random(rng);
    if ((s * s + one).is_zero()) continue;
    const RSolution<Field> sol = solve_for_r(k, q, s);
    if (sol.roots.empty()) continue;
    const auto& r = sol.roots[std::uniform_int_distribution<std::size_t>(0, sol.roots.size() - 1)(rng)];
    return make_rep(k, q, r, s);
  }
  return std::nullopt;
}

}  // namespace treechar
