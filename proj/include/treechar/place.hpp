#pragma once

// Places of F_p(t) and their discrete valuations.
//
// Normalization: v_pi(f) is the multiplicity of pi in the numerator minus that
// in the denominator; v_inf(f) = deg(den) - deg(num). With these, the product
// formula reads sum_v deg(v) * v(f) = 0.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treechar/ratfunc.hpp"

namespace treechar {

/// An integer or +infinity; v(0) = +inf.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr Valuation(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr Valuation infinity() {
    Valuation x;
    x.inf_ = true;
    return x;
  }

  constexpr bool is_infinite() const { return inf_; }
  std::int64_t value() const {
    if (inf_) throw std::logic_error("valuation is +infinity");
    return v_;
  }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.inf_ || b.inf_) return infinity();
    return Valuation(a.v_ + b.v_);
  }
  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.v_ <=> b.v_;
  }
  friend constexpr Valuation min(Valuation a, Valuation b) { return a <= b ? a : b; }

  std::string to_string() const { return inf_ ? "+inf" : std::to_string(v_); }

 private:
  bool inf_ = false;
  std::int64_t v_ = 0;
};

class Place {
 public:
  /// Throws unless pi is monic and irreducible.
  static Place finite(FpPoly pi) {
    if (!pi.is_monic() || !is_irreducible(pi)) throw std::invalid_argument("place must be a monic irreducible: " + pi.to_string());
    Place pl(pi.modulus());
    pl.pi_ = std::move(pi);
    return pl;
  }
  static Place infinity(std::int64_t p) { return Place(p); }

  bool is_infinite() const { return !pi_.has_value(); }
  const FpPoly& uniformizer_poly() const {
    if (!pi_) throw std::logic_error("infinite place has no polynomial uniformizer");
    return *pi_;
  }
  std::int64_t modulus() const { return p_; }
  std::size_t degree() const { return pi_ ? static_cast<std::size_t>(pi_->deg()) : 1; }
  /// Size of the residue field.
  std::uint64_t residue_size() const {
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < degree(); ++i) q *= static_cast<std::uint64_t>(p_);
    return q;
  }

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_ && a.pi_ == b.pi_; }
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
    if (a.is_infinite()) return false;
    return *a.pi_ < *b.pi_;
  }

  /// "inf" or the canonical polynomial text of the uniformizer.
  std::string to_string() const { return pi_ ? pi_->to_string() : "inf"; }

  static Place parse(std::int64_t p, const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity(p);
    return finite(FpPoly::parse(p, text));
  }

 private:
  explicit Place(std::int64_t p) : p_(p) {}

  std::int64_t p_;
  std::optional<FpPoly> pi_;
};

inline Valuation valuation(const FpPoly& f, const Place& nu) {
  if (f.is_zero()) return Valuation::infinity();
  if (nu.is_infinite()) return Valuation(-static_cast<std::int64_t>(f.deg()));
  return Valuation(multiplicity(f, nu.uniformizer_poly()));
}

inline Valuation valuation(const RatF& f, const Place& nu) {
  if (f.is_zero()) return Valuation::infinity();
  if (nu.is_infinite()) return Valuation(static_cast<std::int64_t>(f.den().deg() - f.num().deg()));
  const FpPoly& pi = nu.uniformizer_poly();
  return Valuation(multiplicity(f.num(), pi) - multiplicity(f.den(), pi));
}

/// Finite places where f has a zero or pole, plus infinity; the support of the product formula.
inline std::vector<Place> support(const RatF& f) {
  std::vector<Place> out;
  for (const auto* g : {&f.num(), &f.den()}) {
    if (g->deg() < 1) continue;
    for (const auto& [pi, m] : factor(*g).factors) out.push_back(Place::finite(pi));
  }
  out.push_back(Place::infinity(f.modulus()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace treechar
