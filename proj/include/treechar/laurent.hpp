#pragma once

// Laurent polynomials in (q, r, s) over a coefficient ring, used as a generic point
// for the matrix family A(q, r, s), B, C. Coefficients may be Gaussian integers,
// which keeps the derivation independent of p.

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "treechar/intpoly3.hpp"

namespace treechar {

/// a + b*i with i^2 = -1, checked against overflow.
struct GaussInt {
  std::int64_t a = 0, b = 0;

  static GaussInt i() { return {0, 1}; }
  bool is_zero() const { return a == 0 && b == 0; }
  GaussInt zero() const { return {}; }
  GaussInt one() const { return {1, 0}; }
  GaussInt of(std::int64_t k) const { return {k, 0}; }

  GaussInt operator-() const { return {-a, -b}; }
  friend GaussInt operator+(const GaussInt& x, const GaussInt& y) {
    return {detail::checked_add(x.a, y.a), detail::checked_add(x.b, y.b)};
  }
  friend GaussInt operator-(const GaussInt& x, const GaussInt& y) { return x + (-y); }
  friend GaussInt operator*(const GaussInt& x, const GaussInt& y) {
    using detail::checked_add;
    using detail::checked_mul;
    return {checked_add(checked_mul(x.a, y.a), -checked_mul(x.b, y.b)), checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a))};
  }
  GaussInt& operator+=(const GaussInt& o) { return *this = *this + o; }
  GaussInt& operator*=(const GaussInt& o) { return *this = *this * o; }
  friend bool operator==(const GaussInt& x, const GaussInt& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const GaussInt& x, const GaussInt& y) { return !(x == y); }

  /// Image in a field containing i.
  template <class E>
  E map(const E& i_in_field) const {
    return i_in_field.of(a) + i_in_field.of(b) * i_in_field;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(' << a << (b < 0 ? "-" : "+") << (b < 0 ? -b : b) << "i)";
    return os.str();
  }
};

using Exp3Laurent = std::array<int, 3>;  // exponents of q, r, s

template <class C>
class LaurentPoly3 {
 public:
  using Terms = std::map<Exp3Laurent, C>;

  LaurentPoly3() = default;
  explicit LaurentPoly3(const C& c) { add(Exp3Laurent{0, 0, 0}, c); }
  static LaurentPoly3 monomial(const C& c, int eq, int er, int es) {
    LaurentPoly3 x;
    x.add({eq, er, es}, c);
    return x;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly3 zero() const { return {}; }

  LaurentPoly3 operator-() const {
    LaurentPoly3 x = *this;
    for (auto& [e, c] : x.terms_) c = -c;
    return x;
  }
  friend LaurentPoly3 operator+(LaurentPoly3 x, const LaurentPoly3& y) {
    for (const auto& [e, c] : y.terms_) x.add(e, c);
    return x;
  }
  friend LaurentPoly3 operator-(const LaurentPoly3& x, const LaurentPoly3& y) { return x + (-y); }
  friend LaurentPoly3 operator*(const LaurentPoly3& x, const LaurentPoly3& y) {
    LaurentPoly3 z;
    for (const auto& [ex, cx] : x.terms_)
      for (const auto& [ey, cy] : y.terms_) z.add({ex[0] + ey[0], ex[1] + ey[1], ex[2] + ey[2]}, cx * cy);
    return z;
  }
  LaurentPoly3& operator+=(const LaurentPoly3& o) { return *this = *this + o; }
  LaurentPoly3& operator-=(const LaurentPoly3& o) { return *this = *this - o; }
  LaurentPoly3& operator*=(const LaurentPoly3& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly3& x, const LaurentPoly3& y) { return x.terms_ == y.terms_; }
  friend bool operator!=(const LaurentPoly3& x, const LaurentPoly3& y) { return !(x == y); }

  LaurentPoly3 of(std::int64_t k) const {
    if (terms_.empty()) throw std::logic_error("of() needs a nonzero prototype");
    return LaurentPoly3(terms_.begin()->second.of(k));
  }
  LaurentPoly3 one() const { return of(1); }

  /// Coefficient of r^k as a polynomial in q, s (kept in this type with r-exponent 0).
  LaurentPoly3 r_coefficient(int k) const {
    LaurentPoly3 out;
    for (const auto& [e, c] : terms_)
      if (e[1] == k) out.add({e[0], 0, e[2]}, c);
    return out;
  }
  int min_r() const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[1] < m) m = e[1];
      first = false;
    }
    return m;
  }
  int max_r() const {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[1] > m) m = e[1];
      first = false;
    }
    return m;
  }
  LaurentPoly3 shift_r(int k) const {
    LaurentPoly3 out;
    for (const auto& [e, c] : terms_) out.add({e[0], e[1] + k, e[2]}, c);
    return out;
  }

  /// Substitute field values for q, r, s.
  template <class E>
  E eval(const E& q, const E& r, const E& s, const E& i_in_field) const {
    E acc = q.zero();
    for (const auto& [e, c] : terms_) acc += c.map(i_in_field) * ipow(q, e[0]) * ipow(r, e[1]) * ipow(s, e[2]);
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.to_string();
      const char* names = "qrs";
      for (int k = 0; k < 3; ++k)
        if (e[k]) os << '*' << names[k] << '^' << e[k];
    }
    return os.str();
  }

 private:
  template <class E>
  static E ipow(const E& x, int e) {
    E base = e < 0 ? x.inverse() : x;
    E r = x.one();
    for (int k = 0; k < (e < 0 ? -e : e); ++k) r *= base;
    return r;
  }

  void add(const Exp3Laurent& e, const C& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

/// Pseudo-remainder of f by g as polynomials in r over the (q, s) coefficient ring.
/// Both are first shifted to have nonnegative r-exponents. f vanishes wherever g does
/// (and the leading coefficient of g is nonzero) iff the result is zero.
template <class C>
LaurentPoly3<C> pseudo_remainder_r(LaurentPoly3<C> f, LaurentPoly3<C> g) {
  if (g.is_zero()) throw std::invalid_argument("pseudo_remainder_r: zero divisor");
  if (f.is_zero()) return f;
  f = f.shift_r(-f.min_r());
  g = g.shift_r(-g.min_r());
  const int dg = g.max_r();
  const LaurentPoly3<C> lc = g.r_coefficient(dg);
  while (!f.is_zero() && f.max_r() >= dg) {
    const int df = f.max_r();
    const LaurentPoly3<C> lf = f.r_coefficient(df);
    f = lc * f - lf * g.shift_r(df - dg);
  }
  return f;
}

/// Substitute Laurent polynomials for u, v, w in an integer polynomial.
template <class C>
LaurentPoly3<C> substitute(const IntPoly3& f, const LaurentPoly3<C>& u, const LaurentPoly3<C>& v, const LaurentPoly3<C>& w,
                           const C& one) {
  LaurentPoly3<C> acc;
  for (const auto& [e, c] : f.terms()) {
    LaurentPoly3<C> term(one.of(c));
    for (int k = 0; k < e[0]; ++k) term *= u;
    for (int k = 0; k < e[1]; ++k) term *= v;
    for (int k = 0; k < e[2]; ++k) term *= w;
    acc += term;
  }
  return acc;
}

}  // namespace treechar
