#pragma once

// Dense univariate polynomials over F_p and their factorization.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treechar/field.hpp"

namespace treechar {

class FpPoly {
 public:
  FpPoly() = default;
  explicit FpPoly(std::int64_t p) : p_(p) {}
  /// coeffs[k] is the coefficient of t^k.
  FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& x : c_) x = mod_reduce(x, p_);
    trim();
  }

  static FpPoly constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }
  static FpPoly t(std::int64_t p) { return FpPoly(p, {0, 1}); }
  static FpPoly monomial(std::int64_t p, std::int64_t c, std::size_t k) {
    std::vector<std::int64_t> v(k + 1, 0);
    v[k] = c;
    return FpPoly(p, std::move(v));
  }

  std::int64_t modulus() const { return p_; }
  const std::vector<std::int64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  /// Degree with the zero polynomial mapped to -1; for internal loops only.
  long deg() const { return static_cast<long>(c_.size()) - 1; }
  std::int64_t coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0; }
  std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  FpPoly zero() const { return FpPoly(p_); }
  FpPoly one() const { return constant(p_, 1); }
  FpPoly of(std::int64_t k) const { return constant(p_, k); }

  FpPoly monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inverse(lead(), p_));
  }
  FpPoly scaled(std::int64_t k) const {
    FpPoly r = *this;
    k = mod_reduce(k, p_);
    for (auto& x : r.c_) x = (x * k) % p_;
    r.trim();
    return r;
  }
  FpPoly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    FpPoly r(p_);
    r.c_.assign(k, 0);
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }
  FpPoly derivative() const {
    FpPoly r(p_);
    if (c_.size() > 1) {
      r.c_.resize(c_.size() - 1);
      for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = (c_[k] * static_cast<std::int64_t>(k % p_)) % p_;
    }
    r.trim();
    return r;
  }
  std::int64_t eval(std::int64_t x) const {
    x = mod_reduce(x, p_);
    std::int64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % p_;
    return acc;
  }
  /// Reversed coefficient list, padded to length n + 1: t^n f(1/t).
  FpPoly reversed(std::size_t n) const {
    std::vector<std::int64_t> v(n + 1, 0);
    for (std::size_t k = 0; k < c_.size(); ++k) v[n - k] = c_[k];
    return FpPoly(p_, std::move(v));
  }

  FpPoly operator-() const {
    FpPoly r = *this;
    for (auto& x : r.c_) x = x == 0 ? 0 : p_ - x;
    return r;
  }
  FpPoly& operator+=(const FpPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
      c_[k] += o.c_[k];
      if (c_[k] >= p_) c_[k] -= p_;
    }
    trim();
    return *this;
  }
  FpPoly& operator-=(const FpPoly& o) {
    check(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) {
      c_[k] -= o.c_[k];
      if (c_[k] < 0) c_[k] += p_;
    }
    trim();
    return *this;
  }
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    a.check(b);
    FpPoly r(a.p_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = (r.c_[i + j] + a.c_[i] * b.c_[j]) % a.p_;
    }
    r.trim();
    return r;
  }
  FpPoly& operator*=(const FpPoly& o) { return *this = *this * o; }
  friend FpPoly operator+(FpPoly a, const FpPoly& b) { return a += b; }
  friend FpPoly operator-(FpPoly a, const FpPoly& b) { return a -= b; }

  /// Euclidean division; throws on a zero divisor.
  friend std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
    a.check(b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    FpPoly q(a.p_), r = a;
    if (a.deg() < b.deg()) return {q, r};
    q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
    std::int64_t inv = mod_inverse(b.lead(), a.p_);
    const std::size_t db = b.c_.size() - 1;
    for (long k = r.deg(); k >= static_cast<long>(db); --k) {
      std::int64_t c = r.c_[k];
      if (c == 0) continue;
      c = (c * inv) % a.p_;
      const std::size_t s = static_cast<std::size_t>(k) - db;
      q.c_[s] = c;
      for (std::size_t j = 0; j <= db; ++j) r.c_[s + j] = mod_reduce(r.c_[s + j] - c * b.c_[j], a.p_);
    }
    q.trim();
    r.trim();
    return {q, r};
  }
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }

  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }
  /// Degree first, then coefficients from the top.
  friend bool operator<(const FpPoly& a, const FpPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

  /// Terms "c*t^k" from the top degree down, zero terms omitted, joined by " + ".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long k = deg(); k >= 0; --k) {
      if (c_[k] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << c_[k];
      if (k == 1) os << "*t";
      if (k >= 2) os << "*t^" << k;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const FpPoly& f) { return os << f.to_string(); }

  /// Accepts the canonical form and the usual shorthands: "t^2 + 4", "2t-1", "-3".
  static FpPoly parse(std::int64_t p, const std::string& text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    FpPoly acc(p);
    std::size_t i = 0;
    while (i < s.size()) {
      std::int64_t sign = 1;
      while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -sign;
        ++i;
      }
      std::int64_t coef = 1;
      bool have_coef = false;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        coef = std::stoll(s.substr(i, j - i)) % p;
        have_coef = true;
        i = j;
      }
      if (i < s.size() && s[i] == '*') ++i;
      std::size_t k = 0;
      if (i < s.size() && s[i] == 't') {
        ++i;
        k = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::size_t j = i;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
          if (j == i) throw std::invalid_argument("bad exponent in polynomial: " + text);
          k = static_cast<std::size_t>(std::stoul(s.substr(i, j - i)));
          i = j;
        }
      } else if (!have_coef) {
        throw std::invalid_argument("bad polynomial term: " + text);
      }
      acc += monomial(p, sign * coef, k);
      if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("bad polynomial: " + text);
    }
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  void check(const FpPoly& o) const {
    if (p_ != o.p_) throw std::invalid_argument("FpPoly: mixed moduli");
  }

  std::int64_t p_ = 0;
  std::vector<std::int64_t> c_;
};

/// Monic gcd (zero if both inputs are zero).
inline FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
inline std::optional<FpPoly> inverse_mod(const FpPoly& a, const FpPoly& m) {
  FpPoly r0 = m, r1 = a % m, s0 = m.zero(), s1 = m.one();
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.deg() != 0) return std::nullopt;
  return (s0.scaled(mod_inverse(r0.lead(), m.modulus()))) % m;
}

inline FpPoly pow_mod(FpPoly base, std::uint64_t e, const FpPoly& m) {
  FpPoly r = m.one() % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return r;
}

/// Multiplicity of the irreducible pi in f (f nonzero).
inline int multiplicity(FpPoly f, const FpPoly& pi) {
  int m = 0;
  while (true) {
    auto [q, r] = divmod(f, pi);
    if (!r.is_zero()) return m;
    f = std::move(q);
    ++m;
  }
}

namespace detail {

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// t^(p^k) mod f by k Frobenius steps.
inline FpPoly frobenius_power(const FpPoly& f, std::size_t k) {
  FpPoly h = FpPoly::t(f.modulus()) % f;
  for (std::size_t i = 0; i < k; ++i) h = pow_mod(h, static_cast<std::uint64_t>(f.modulus()), f);
  return h;
}

}  // namespace detail

/// Rabin's test.
inline bool is_irreducible(const FpPoly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  const std::size_t n = static_cast<std::size_t>(f.deg());
  const FpPoly g = f.monic();
  const FpPoly t = FpPoly::t(f.modulus());
  if (detail::frobenius_power(g, n) != t % g) return false;
  for (auto q : detail::prime_divisors(static_cast<std::int64_t>(n))) {
    FpPoly h = detail::frobenius_power(g, n / static_cast<std::size_t>(q)) - t;
    if (!gcd(h, g).is_one()) return false;
  }
  return true;
}

struct Factorization {
  std::int64_t unit = 0;
  /// Monic irreducible factors with multiplicity, sorted, no repeats.
  std::vector<std::pair<FpPoly, int>> factors;

  FpPoly expand(std::int64_t p) const {
    FpPoly r = FpPoly::constant(p, unit);
    for (const auto& [f, m] : factors)
      for (int i = 0; i < m; ++i) r *= f;
    return r;
  }
};

namespace detail {

/// Square-free factorization of a monic polynomial: pairs (g, m) with g square-free.
inline std::vector<std::pair<FpPoly, int>> squarefree(const FpPoly& f) {
  std::vector<std::pair<FpPoly, int>> out;
  const std::int64_t p = f.modulus();
  if (f.deg() < 1) return out;
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (!fac.is_one()) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    // c is a p-th power: take the p-th root coefficientwise.
    std::vector<std::int64_t> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += static_cast<std::size_t>(p)) root.push_back(c.coeffs()[k]);
    for (auto& [g, m] : squarefree(FpPoly(p, root).monic())) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

/// Distinct-degree factorization of a square-free monic polynomial.
inline std::vector<std::pair<FpPoly, std::size_t>> distinct_degree(FpPoly f) {
  std::vector<std::pair<FpPoly, std::size_t>> out;
  const std::int64_t p = f.modulus();
  const FpPoly t = FpPoly::t(p);
  FpPoly h = t % f;
  for (std::size_t d = 1; f.deg() >= static_cast<long>(2 * d); ++d) {
    h = pow_mod(h, static_cast<std::uint64_t>(p), f);
    FpPoly g = gcd(h - t, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.deg() >= 1) out.emplace_back(f, static_cast<std::size_t>(f.deg()));
  return out;
}

/// Cantor-Zassenhaus equal-degree splitting; f monic, square-free, all factors of degree d.
template <class Rng>
void equal_degree(const FpPoly& f, std::size_t d, Rng& rng, std::vector<FpPoly>& out) {
  if (f.deg() == static_cast<long>(d)) {
    out.push_back(f);
    return;
  }
  const std::int64_t p = f.modulus();
  std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
  while (true) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(f.deg()));
    for (auto& x : v) x = coef(rng);
    FpPoly a(p, v);
    if (a.deg() < 1) continue;
    FpPoly g = gcd(a, f);
    if (g.is_one()) {
      // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
      FpPoly acc = a % f, h = a % f;
      for (std::size_t i = 1; i < d; ++i) {
        h = pow_mod(h, static_cast<std::uint64_t>(p), f);
        acc = (acc * h) % f;
      }
      acc = pow_mod(acc, static_cast<std::uint64_t>((p - 1) / 2), f);
      g = gcd(acc - f.one(), f);
    }
    if (g.deg() >= 1 && g.deg() < f.deg()) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

/// Degree <= 3: every reducible factorization has a linear factor.
inline void split_small(FpPoly f, std::vector<FpPoly>& out) {
  const std::int64_t p = f.modulus();
  for (std::int64_t a = 0; a < p && f.deg() > 1; ++a) {
    while (f.deg() > 1 && f.eval(a) == 0) {
      FpPoly lin(p, {-a, 1});
      out.push_back(lin);
      f = f / lin;
    }
  }
  if (f.deg() >= 1) out.push_back(f.monic());
}

}  // namespace detail

/// Factor into monic irreducibles. Deterministic for a fixed seed.
inline Factorization factor(const FpPoly& f, std::uint64_t seed = 0x5eed) {
  if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  Factorization result;
  result.unit = f.lead();
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FpPoly, int>> raw;
  for (const auto& [g, m] : detail::squarefree(f.monic())) {
    std::vector<FpPoly> irreducibles;
    if (g.deg() <= 3) {
      detail::split_small(g, irreducibles);
    } else {
      for (const auto& [h, d] : detail::distinct_degree(g)) detail::equal_degree(h, d, rng, irreducibles);
    }
    for (auto& h : irreducibles) raw.emplace_back(std::move(h), m);
  }
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [g, m] : raw) {
    if (!result.factors.empty() && result.factors.back().first == g)
      result.factors.back().second += m;
    else
      result.factors.emplace_back(std::move(g), m);
  }
  return result;
}

/// All monic irreducibles of degree d (exhaustive; small p^d only).
inline std::vector<FpPoly> monic_irreducibles(std::int64_t p, std::size_t d) {
  std::vector<FpPoly> out;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::int64_t> c(d + 1, 0);
    std::uint64_t x = idx;
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = static_cast<std::int64_t>(x % static_cast<std::uint64_t>(p));
      x /= static_cast<std::uint64_t>(p);
    }
    c[d] = 1;
    FpPoly f(p, c);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace treechar
