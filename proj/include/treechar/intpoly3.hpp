#pragma once

// Sparse integer polynomials in u, v, w.

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace treechar {

using Exp3 = std::array<int, 3>;

/// Graded lex with u > v > w: higher total degree first, then by exponent of u, v, w.
struct GradedLexGreater {
  bool operator()(const Exp3& a, const Exp3& b) const {
    const int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
  }
};

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("IntPoly3 coefficient overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("IntPoly3 coefficient overflow");
  return r;
}
}  // namespace detail

class IntPoly3 {
 public:
  using Terms = std::map<Exp3, std::int64_t, GradedLexGreater>;

  IntPoly3() = default;
  IntPoly3(std::int64_t c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_[{0, 0, 0}] = c;
  }
  static IntPoly3 monomial(std::int64_t c, int eu, int ev, int ew) {
    IntPoly3 r;
    if (c != 0) r.terms_[{eu, ev, ew}] = c;
    return r;
  }
  static IntPoly3 u() { return monomial(1, 1, 0, 0); }
  static IntPoly3 v() { return monomial(1, 0, 1, 0); }
  static IntPoly3 w() { return monomial(1, 0, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first[0] + terms_.begin()->first[1] + terms_.begin()->first[2]; }
  std::int64_t coeff(const Exp3& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  IntPoly3 operator-() const {
    IntPoly3 r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  IntPoly3& operator+=(const IntPoly3& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  IntPoly3& operator-=(const IntPoly3& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, detail::checked_mul(c, -1));
    return *this;
  }
  friend IntPoly3 operator+(IntPoly3 a, const IntPoly3& b) { return a += b; }
  friend IntPoly3 operator-(IntPoly3 a, const IntPoly3& b) { return a -= b; }
  friend IntPoly3 operator*(const IntPoly3& a, const IntPoly3& b) {
    IntPoly3 r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, detail::checked_mul(ca, cb));
    return r;
  }
  IntPoly3& operator*=(const IntPoly3& o) { return *this = *this * o; }

  friend bool operator==(const IntPoly3& a, const IntPoly3& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const IntPoly3& a, const IntPoly3& b) { return !(a == b); }

  /// Evaluate in any ring whose elements provide of(k); coefficients are mapped with of().
  template <class R>
  R eval(const R& u, const R& v, const R& w) const {
    R acc = u.zero();
    if (terms_.empty()) return acc;
    const int d = total_degree();
    std::vector<R> pu{u.one()}, pv{u.one()}, pw{u.one()};
    for (int i = 1; i <= d; ++i) {
      pu.push_back(pu.back() * u);
      pv.push_back(pv.back() * v);
      pw.push_back(pw.back() * w);
    }
    for (const auto& [e, c] : terms_) acc += u.of(c) * pu[e[0]] * pv[e[1]] * pw[e[2]];
    return acc;
  }

  /// e.g. "u*v*w + u^2 - 2"; terms in graded lex order, u > v > w.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      first = false;
      const bool constant = e[0] == 0 && e[1] == 0 && e[2] == 0;
      bool need_star = false;
      if (mag != 1 || constant) {
        os << mag;
        need_star = true;
      }
      const char* names[3] = {"u", "v", "w"};
      for (int i = 0; i < 3; ++i) {
        if (e[i] == 0) continue;
        if (need_star) os << '*';
        os << names[i];
        if (e[i] > 1) os << '^' << e[i];
        need_star = true;
      }
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const IntPoly3& f) { return os << f.to_string(); }

 private:
  void add_term(const Exp3& e, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second = detail::checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  Terms terms_;
};

}  // namespace treechar
