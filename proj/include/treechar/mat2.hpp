#pragma once

// 2x2 matrices over a field and the projective line they act on.

#include <array>
#include <ostream>
#include <stdexcept>

namespace treechar {

template <class F>
struct Mat2 {
  F m11, m12, m21, m22;

  static Mat2 identity(const F& one) { return {one, one.zero(), one.zero(), one}; }
  static Mat2 scalar(const F& c) { return {c, c.zero(), c.zero(), c}; }

  F det() const { return m11 * m22 - m12 * m21; }
  F trace() const { return m11 + m22; }
  Mat2 adjugate() const { return {m22, -m12, -m21, m11}; }
  Mat2 inverse() const {
    F d = det();
    if (d.is_zero()) throw std::domain_error("singular matrix");
    F di = d.inverse();
    return {m22 * di, -m12 * di, -m21 * di, m11 * di};
  }
  bool is_scalar() const { return m12.is_zero() && m21.is_zero() && m11 == m22; }

  Mat2 operator-() const { return {-m11, -m12, -m21, -m22}; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
  }
  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
  }
  friend Mat2 operator*(const F& c, const Mat2& a) { return {c * a.m11, c * a.m12, c * a.m21, c * a.m22}; }
  Mat2& operator*=(const Mat2& o) { return *this = *this * o; }

  friend bool operator==(const Mat2& a, const Mat2& b) {
    return a.m11 == b.m11 && a.m12 == b.m12 && a.m21 == b.m21 && a.m22 == b.m22;
  }
  friend bool operator!=(const Mat2& a, const Mat2& b) { return !(a == b); }

  std::array<const F*, 4> entries() const { return {&m11, &m12, &m21, &m22}; }

  friend std::ostream& operator<<(std::ostream& os, const Mat2& a) {
    return os << "[[" << a.m11 << ", " << a.m12 << "], [" << a.m21 << ", " << a.m22 << "]]";
  }
};

template <class F>
Mat2<F> pow(Mat2<F> m, unsigned e) {
  Mat2<F> r = Mat2<F>::identity(m.m11.one());
  while (e) {
    if (e & 1) r = r * m;
    m = m * m;
    e >>= 1;
  }
  return r;
}

/// A point (P : Q) of P^1, stored as (x : 1) or (1 : 0).
template <class F>
class ProjPt {
 public:
  ProjPt(F p, F q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.is_zero() && q_.is_zero()) throw std::invalid_argument("(0 : 0) is not a projective point");
    if (q_.is_zero()) {
      p_ = p_.one();
    } else {
      p_ = p_ / q_;
      q_ = q_.one();
    }
  }
  static ProjPt finite(const F& x) { return {x, x.one()}; }
  static ProjPt infinity(const F& one) { return {one, one.zero()}; }

  const F& p() const { return p_; }
  const F& q() const { return q_; }
  bool is_infinity() const { return q_.is_zero(); }
  /// The affine coordinate; throws at infinity.
  const F& affine() const {
    if (is_infinity()) throw std::logic_error("point at infinity has no affine coordinate");
    return p_;
  }

  friend bool operator==(const ProjPt& a, const ProjPt& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator!=(const ProjPt& a, const ProjPt& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const ProjPt& x) {
    if (x.is_infinity()) return os << "inf";
    return os << x.p_;
  }

 private:
  F p_, q_;
};

template <class F>
ProjPt<F> mobius_act(const Mat2<F>& m, const ProjPt<F>& x) {
  if (m.det().is_zero()) throw std::domain_error("mobius_act: singular matrix");
  return {m.m11 * x.p() + m.m12 * x.q(), m.m21 * x.p() + m.m22 * x.q()};
}

}  // namespace treechar
