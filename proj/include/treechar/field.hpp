#pragma once

// Finite fields: the prime field F_p and iterated quadratic extensions.
//
// Elements carry their own modulus (and, for extensions, the non-residue that
// defines them), so generic code can build constants with x.zero(), x.one()
// and x.of(k) without a separate context. Field *contexts* (PrimeField,
// QuadField) exist for what needs the whole field: enumeration, order,
// random sampling, square roots.

#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace treechar {

constexpr bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = p, r1 = mod_reduce(a, p), s0 = 0, s1 = 1;
  if (r1 == 0) throw std::domain_error("inverse of zero");
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return mod_reduce(s0, p);
}

class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t p, std::int64_t v) : p_(p), v_(mod_reduce(v, p)) {}

  std::int64_t modulus() const { return p_; }
  std::int64_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fp zero() const { return {p_, 0}; }
  Fp one() const { return {p_, 1}; }
  Fp of(std::int64_t k) const { return {p_, k}; }

  Fp inverse() const { return {p_, mod_inverse(v_, p_)}; }

  Fp operator-() const { return {p_, v_ == 0 ? 0 : p_ - v_}; }
  Fp& operator+=(const Fp& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    v_ -= o.v_;
    if (v_ < 0) v_ += p_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    v_ = (v_ * o.v_) % p_;
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.v_; }

 private:
  void check(const Fp& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Fp: mixed moduli");
  }

  std::int64_t p_ = 0;
  std::int64_t v_ = 0;
};

/// a + b*g with g^2 = nr, nr a non-square of the base field.
template <class Base>
class Quad {
 public:
  Quad() = default;
  Quad(Base a, Base b, Base nr) : a_(std::move(a)), b_(std::move(b)), nr_(std::move(nr)) {}

  const Base& real() const { return a_; }
  const Base& imag() const { return b_; }
  const Base& nonresidue() const { return nr_; }
  std::int64_t modulus() const { return a_.modulus(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  Quad zero() const { return {a_.zero(), a_.zero(), nr_}; }
  Quad one() const { return {a_.one(), a_.zero(), nr_}; }
  Quad of(std::int64_t k) const { return {a_.of(k), a_.zero(), nr_}; }
  Quad embed(const Base& x) const { return {x, a_.zero(), nr_}; }

  Quad conjugate() const { return {a_, -b_, nr_}; }
  Base norm() const { return a_ * a_ - nr_ * b_ * b_; }
  Quad inverse() const {
    Base n = norm();
    if (n.is_zero()) throw std::domain_error("inverse of zero");
    Base ni = n.inverse();
    return {a_ * ni, -(b_ * ni), nr_};
  }

  Quad operator-() const { return {-a_, -b_, nr_}; }
  Quad& operator+=(const Quad& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Quad& operator-=(const Quad& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Quad& operator*=(const Quad& o) {
    Base a = a_ * o.a_ + nr_ * b_ * o.b_;
    Base b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  Quad& operator/=(const Quad& o) { return *this *= o.inverse(); }

  friend Quad operator+(Quad a, const Quad& b) { return a += b; }
  friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
  friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
  friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
  friend bool operator==(const Quad& x, const Quad& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }

  friend std::ostream& operator<<(std::ostream& os, const Quad& x) {
    return os << '[' << x.a_ << ',' << x.b_ << ']';
  }

 private:
  Base a_, b_, nr_;
};

using Fp2 = Quad<Fp>;
using Fp4 = Quad<Fp2>;

template <class T>
T pow(T x, std::uint64_t e) {
  T r = x.one();
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

template <class T>
std::string to_string(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

class PrimeField {
 public:
  using Element = Fp;

  explicit PrimeField(std::int64_t p) : p_(p) {
    if (!is_prime(p) || p < 5) throw std::invalid_argument("field characteristic must be a prime >= 5");
  }

  std::int64_t characteristic() const { return p_; }
  std::uint64_t order() const { return static_cast<std::uint64_t>(p_); }

  Fp zero() const { return {p_, 0}; }
  Fp one() const { return {p_, 1}; }
  Fp of(std::int64_t k) const { return {p_, k}; }
  Fp operator()(std::int64_t k) const { return of(k); }

  Fp element(std::uint64_t idx) const { return {p_, static_cast<std::int64_t>(idx)}; }
  std::uint64_t index(const Fp& x) const { return static_cast<std::uint64_t>(x.value()); }

  template <class Rng>
  Fp random(Rng& rng) const {
    return element(std::uniform_int_distribution<std::uint64_t>(0, order() - 1)(rng));
  }

 private:
  std::int64_t p_;
};

template <class Field>
bool is_square(const Field& k, const typename Field::Element& x) {
  if (x.is_zero()) return true;
  return pow(x, (k.order() - 1) / 2) == k.one();
}

/// Smallest-index non-square of a finite field of odd order.
template <class Field>
typename Field::Element first_non_square(const Field& k) {
  for (std::uint64_t i = 1; i < k.order(); ++i) {
    auto x = k.element(i);
    if (!is_square(k, x)) return x;
  }
  throw std::logic_error("no non-square found");
}

template <class BaseField>
class QuadField {
 public:
  using BaseElement = typename BaseField::Element;
  using Element = Quad<BaseElement>;

  explicit QuadField(BaseField base) : base_(std::move(base)), nr_(first_non_square(base_)) {}

  const BaseField& base() const { return base_; }
  const BaseElement& nonresidue() const { return nr_; }
  std::int64_t characteristic() const { return base_.characteristic(); }
  std::uint64_t order() const { return base_.order() * base_.order(); }

  Element zero() const { return embed(base_.zero()); }
  Element one() const { return embed(base_.one()); }
  Element of(std::int64_t k) const { return embed(base_.of(k)); }
  Element embed(const BaseElement& x) const { return {x, base_.zero(), nr_}; }
  Element operator()(const BaseElement& a, const BaseElement& b) const { return {a, b, nr_}; }
  /// The adjoined square root of the non-residue.
  Element gen() const { return {base_.zero(), base_.one(), nr_}; }

  Element element(std::uint64_t idx) const {
    return {base_.element(idx % base_.order()), base_.element(idx / base_.order()), nr_};
  }
  std::uint64_t index(const Element& x) const {
    return base_.index(x.real()) + base_.order() * base_.index(x.imag());
  }

  template <class Rng>
  Element random(Rng& rng) const {
    return element(std::uniform_int_distribution<std::uint64_t>(0, order() - 1)(rng));
  }

 private:
  BaseField base_;
  BaseElement nr_;
};

using Fp2Field = QuadField<PrimeField>;
using Fp4Field = QuadField<Fp2Field>;

/// Tonelli-Shanks. Of the two roots, the one with the smaller enumeration
/// index is returned, so the answer is deterministic.
template <class Field>
std::optional<typename Field::Element> sqrt_in_field(const Field& k, const typename Field::Element& a) {
  using E = typename Field::Element;
  if (a.is_zero()) return a;
  if (!is_square(k, a)) return std::nullopt;
  std::uint64_t q = k.order() - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  E z = first_non_square(k);
  E c = pow(z, q);
  E x = pow(a, (q + 1) / 2);
  E t = pow(a, q);
  unsigned m = s;
  while (t != k.one()) {
    unsigned i = 0;
    E t2 = t;
    while (t2 != k.one()) {
      t2 *= t2;
      ++i;
    }
    E b = c;
    for (unsigned j = 0; j + 1 < m - i; ++j) b *= b;
    x *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  E y = -x;
  return k.index(y) < k.index(x) ? y : x;
}

/// A square root of -1, when the field has one.
template <class Field>
std::optional<typename Field::Element> imaginary_unit(const Field& k) {
  return sqrt_in_field(k, -k.one());
}

}  // namespace treechar
