#pragma once

// The rational function field F_p(t), kept in lowest terms with a monic denominator.

#include <string>
#include <utility>

#include "treechar/poly.hpp"

namespace treechar {

class RatF {
 public:
  RatF() = default;
  explicit RatF(FpPoly num) : num_(std::move(num)), den_(num_.one()) {}
  RatF(FpPoly num, FpPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static RatF constant(std::int64_t p, std::int64_t c) { return RatF(FpPoly::constant(p, c)); }
  static RatF t(std::int64_t p) { return RatF(FpPoly::t(p)); }

  const FpPoly& num() const { return num_; }
  const FpPoly& den() const { return den_; }
  std::int64_t modulus() const { return num_.modulus(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatF zero() const { return RatF(num_.zero()); }
  RatF one() const { return RatF(num_.one()); }
  RatF of(std::int64_t k) const { return RatF(num_.of(k)); }

  RatF inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return RatF(den_, num_);
  }

  RatF operator-() const {
    RatF r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatF operator+(const RatF& a, const RatF& b) {
    if (a.den_ == b.den_) return RatF(a.num_ + b.num_, a.den_);
    return RatF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatF operator-(const RatF& a, const RatF& b) { return a + (-b); }
  friend RatF operator*(const RatF& a, const RatF& b) {
    if (a.is_zero() || b.is_zero()) return a.zero();
    if (a.den_.is_one() && b.den_.is_one()) return RatF(a.num_ * b.num_);
    return RatF(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatF operator/(const RatF& a, const RatF& b) { return a * b.inverse(); }
  RatF& operator+=(const RatF& o) { return *this = *this + o; }
  RatF& operator-=(const RatF& o) { return *this = *this - o; }
  RatF& operator*=(const RatF& o) { return *this = *this * o; }
  RatF& operator/=(const RatF& o) { return *this = *this / o; }

  friend bool operator==(const RatF& a, const RatF& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatF& a, const RatF& b) { return !(a == b); }
  friend bool operator<(const RatF& a, const RatF& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  /// "num/den", both in the canonical polynomial text form.
  std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }
  friend std::ostream& operator<<(std::ostream& os, const RatF& f) { return os << f.to_string(); }

  static RatF parse(std::int64_t p, const std::string& text) {
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      if (text[i] == '/' && depth == 0)
        return RatF(FpPoly::parse(p, text.substr(0, i)), FpPoly::parse(p, text.substr(i + 1)));
    }
    return RatF(FpPoly::parse(p, text));
  }

  /// t -> 1/t. Swaps the place (t) with the place at infinity.
  RatF invert_variable() const {
    if (is_zero()) return *this;
    const long dn = num_.deg(), dd = den_.deg();
    const std::size_t n = static_cast<std::size_t>(std::max(dn, dd));
    return RatF(num_.reversed(n), den_.reversed(n));
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = den_.one();
      return;
    }
    FpPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    if (!den_.is_monic()) {
      std::int64_t inv = mod_inverse(den_.lead(), den_.modulus());
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  FpPoly num_, den_;
};

}  // namespace treechar
