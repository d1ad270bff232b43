#pragma once

// Trace polynomials of words in A, B, C and the representations they describe.
//
// For rho with tr A = 1, tr B = tr C = 0 and tr ABC = 1 in SL_2, the trace of any
// word is an integer polynomial in u = tr BC, v = tr CA, w = tr AB. It is computed
// by induction on length with tr(xy) = tr(x) tr(y) - tr(x^-1 y).

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treechar/field.hpp"
#include "treechar/intpoly3.hpp"
#include "treechar/laurent.hpp"
#include "treechar/mat2.hpp"
#include "treechar/tilde_word.hpp"

namespace treechar {

/// Not thread-safe: give each thread its own engine.
class TraceEngine {
 public:
  explicit TraceEngine(bool memoize = true) : memoize_(memoize) { seed_base_cases(); }

  IntPoly3 operator()(const TildeWord& w) {
    TildeWord c = cyclic_reduce(w);
    const bool neg = c.zsign;
    c.zsign = false;
    IntPoly3 t = of_key(least_rotation(c));
    return neg ? -t : t;
  }

  std::size_t memo_size() const { return memo_.size(); }

  /// The split used for a cyclically reduced word of length >= 4: rotation index and
  /// the 1-based position k of the symbol matching the first one.
  static std::pair<std::size_t, std::size_t> choose_split(const TildeWord& w) {
    const std::size_t l = w.size();
    std::size_t best_rot = 0, best_k = 0, best_cost = l + 1;
    for (std::size_t rot = 0; rot < l; ++rot) {
      const TildeWord r = rotate_left(w, rot);
      for (std::size_t k = 2; k + 1 <= l; ++k) {
        if (symbol_class(r.symbols[0]) != symbol_class(r.symbols[k - 1])) continue;
        const std::size_t cost = std::max(k - 1, l - k + 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_rot = rot;
          best_k = k;
        }
      }
    }
    if (best_k == 0) throw std::logic_error("no split for " + w.to_string());
    return {best_rot, best_k};
  }

 private:
  IntPoly3 of_key(const TildeWord& key) {
    if (auto it = base_.find(key); it != base_.end()) return it->second;
    if (key.size() <= 3) throw std::logic_error("missing base case " + key.to_string());
    if (memoize_)
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto [rot, k] = choose_split(key);
    const TildeWord r = rotate_left(key, rot);
    TildeWord x, y;
    x.symbols.assign(r.symbols.begin(), r.symbols.begin() + static_cast<std::ptrdiff_t>(k - 1));
    y.symbols.assign(r.symbols.begin() + static_cast<std::ptrdiff_t>(k - 1), r.symbols.end());
    IntPoly3 t = (*this)(x) * (*this)(y) - (*this)(concat(invert_tilde(x), y));
    if (memoize_) memo_.emplace(key, t);
    return t;
  }

  void seed_base_cases() {
    const IntPoly3 u = IntPoly3::u(), v = IntPoly3::v(), w = IntPoly3::w();
    const std::pair<const char*, IntPoly3> table[] = {
        {"1", 2},        {"A", 1},         {"A'", 1},        {"B", 0},      {"C", 0},
        {"BC", u},       {"CA", v},        {"AB", w},        {"A'B", -w},   {"A'C", -v},
        {"ABC", 1},      {"ACB", u - 1},   {"A'BC", u - 1},  {"A'CB", 1},
    };
    for (const auto& [text, poly] : table) base_.emplace(least_rotation(TildeWord::parse(text)), poly);
  }

  bool memoize_;
  std::unordered_map<TildeWord, IntPoly3, TildeWordHash> base_;
  std::unordered_map<TildeWord, IntPoly3, TildeWordHash> memo_;
};

inline IntPoly3 trace_poly(const TildeWord& w) {
  thread_local TraceEngine engine;
  return engine(w);
}

template <class F>
struct RepTriple {
  Mat2<F> A, B, C;

  /// Throws std::invalid_argument unless det = 1, tr A = tr ABC = 1 and tr B = tr C = 0.
  void validate() const {
    const F one = A.m11.one();
    for (const auto* m : {&A, &B, &C})
      if (m->det() != one) throw std::invalid_argument("representation matrices must have determinant 1");
    if (A.trace() != one) throw std::invalid_argument("tr A must be 1");
    if (!B.trace().is_zero() || !C.trace().is_zero()) throw std::invalid_argument("tr B and tr C must be 0");
    if ((A * B * C).trace() != one) throw std::invalid_argument("tr ABC must be 1");
  }

  F u() const { return (B * C).trace(); }
  F v() const { return (C * A).trace(); }
  F w() const { return (A * B).trace(); }
};

/// Product of the word's matrices, with Z acting as -I.
template <class F>
Mat2<F> word_matrix(const TildeWord& w, const RepTriple<F>& rho) {
  Mat2<F> m = Mat2<F>::identity(rho.A.m11.one());
  const Mat2<F> ainv = rho.A.adjugate();
  for (TSym s : w.symbols) {
    switch (s) {
      case TSym::A:
        m = m * rho.A;
        break;
      case TSym::Ainv:
        m = m * ainv;
        break;
      case TSym::B:
        m = m * rho.B;
        break;
      case TSym::C:
        m = m * rho.C;
        break;
    }
  }
  return w.zsign ? -m : m;
}

/// Direct matrix trace. The representation is validated first.
template <class F>
F eval_trace(const TildeWord& w, const RepTriple<F>& rho) {
  rho.validate();
  return word_matrix(w, rho).trace();
}

/// The trace polynomial evaluated at (tr BC, tr CA, tr AB) of rho.
template <class F>
F eval_trace_poly(const IntPoly3& t, const RepTriple<F>& rho) {
  return t.eval(rho.u(), rho.v(), rho.w());
}

/// A = [[q, r], [(-1+q-q^2)/r, 1-q]], B = diag(i, -i), C = [[s, 1], [-1-s^2, -s]].
/// Throws std::invalid_argument if r = 0, the field has no i, or tr ABC != 1.
template <class Field>
RepTriple<typename Field::Element> make_rep(const Field& k, const typename Field::Element& q, const typename Field::Element& r,
                                            const typename Field::Element& s) {
  using E = typename Field::Element;
  if (r.is_zero()) throw std::invalid_argument("make_rep: r must be nonzero");
  auto i = imaginary_unit(k);
  if (!i) throw std::invalid_argument("make_rep: field has no square root of -1");
  const E one = k.one();
  RepTriple<E> rho{{q, r, (-one + q - q * q) / r, one - q}, {*i, k.zero(), k.zero(), -*i}, {s, one, -one - s * s, -s}};
  if ((rho.A * rho.B * rho.C).trace() != one) throw std::invalid_argument("make_rep: tr ABC != 1 for these parameters");
  return rho;
}

using SymPoly = LaurentPoly3<GaussInt>;

/// The matrix family at the generic point (q, r, s), entries in Z[i][q, s, r, 1/r].
/// tr ABC = 1 is not imposed.
inline std::array<Mat2<SymPoly>, 3> symbolic_family() {
  const GaussInt one{1, 0};
  const SymPoly q = SymPoly::monomial(one, 1, 0, 0), r = SymPoly::monomial(one, 0, 1, 0), s = SymPoly::monomial(one, 0, 0, 1);
  const SymPoly rinv = SymPoly::monomial(one, 0, -1, 0);
  const SymPoly c1(one), i(GaussInt::i()), zero;
  return {Mat2<SymPoly>{q, r, (-c1 + q - q * q) * rinv, c1 - q}, Mat2<SymPoly>{i, zero, zero, -i},
          Mat2<SymPoly>{s, c1, -c1 - s * s, -s}};
}

/// Symbolic word matrix over the generic family (A^-1 via the adjugate, det A = 1).
inline Mat2<SymPoly> symbolic_word_matrix(const TildeWord& w) {
  const auto fam = symbolic_family();
  const SymPoly c1(GaussInt{1, 0}), zero;
  Mat2<SymPoly> m{c1, zero, zero, c1};
  for (TSym s : w.symbols) {
    switch (s) {
      case TSym::A:
        m = m * fam[0];
        break;
      case TSym::Ainv:
        m = m * fam[0].adjugate();
        break;
      case TSym::B:
        m = m * fam[1];
        break;
      case TSym::C:
        m = m * fam[2];
        break;
    }
  }
  return w.zsign ? -m : m;
}

/// r * (tr ABC - 1): its vanishing is the constraint defining valid parameters.
inline SymPoly abc_constraint() {
  const SymPoly t = symbolic_word_matrix(TildeWord::parse("ABC")).trace() - SymPoly(GaussInt{1, 0});
  return t.shift_r(1);
}

/// C++ source for the generated header freezing tr ABC at the generic point.
inline std::string abc_trace_header_source() {
  const SymPoly t = symbolic_word_matrix(TildeWord::parse("ABC")).trace();
  std::ostringstream os;
  os << "#pragma once\n\n"
     << "// Generated by `treechar derive-r`. Do not edit.\n"
     << "// tr(ABC) for A = [[q, r], [(-1+q-q^2)/r, 1-q]], B = diag(i, -i), C = [[s, 1], [-1-s^2, -s]],\n"
     << "// as terms re + im*i times q^eq r^er s^es.\n\n"
     << "#include <cstdint>\n\n"
     << "namespace treechar::generated {\n\n"
     << "struct AbcTraceTerm {\n  int eq, er, es;\n  std::int64_t re, im;\n};\n\n"
     << "inline constexpr AbcTraceTerm abc_trace_terms[] = {\n";
  for (const auto& [e, c] : t.terms()) os << "    {" << e[0] << ", " << e[1] << ", " << e[2] << ", " << c.a << ", " << c.b << "},\n";
  os << "};\n\n}  // namespace treechar::generated\n";
  return os.str();
}

/// Adjoint action X -> M X M^-1 on trace-zero matrices, basis E = [[0,1],[0,0]],
/// H = [[1,0],[0,-1]], F = [[0,0],[1,0]], coordinates (e, h, f).
template <class F>
struct Mat3 {
  std::array<std::array<F, 3>, 3> a;

  static Mat3 identity(const F& one) {
    Mat3 m{{{{one, one.zero(), one.zero()}, {one.zero(), one, one.zero()}, {one.zero(), one.zero(), one}}}};
    return m;
  }
  friend Mat3 operator*(const Mat3& x, const Mat3& y) {
    Mat3 z = x;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        F acc = x.a[0][0].zero();
        for (int k = 0; k < 3; ++k) acc += x.a[i][k] * y.a[k][j];
        z.a[i][j] = acc;
      }
    return z;
  }
  friend bool operator==(const Mat3& x, const Mat3& y) { return x.a == y.a; }
  friend bool operator!=(const Mat3& x, const Mat3& y) { return !(x == y); }
  bool is_identity() const { return *this == identity(a[0][0].one()); }
};

template <class F>
Mat3<F> adjoint_embed(const Mat2<F>& m) {
  const F one = m.m11.one(), zero = m.m11.zero();
  if (m.det().is_zero()) throw std::domain_error("adjoint_embed: singular matrix");
  const Mat2<F> minv = m.inverse();
  const Mat2<F> basis[3] = {{zero, one, zero, zero}, {one, zero, zero, -one}, {zero, zero, one, zero}};
  Mat3<F> out = Mat3<F>::identity(one);
  for (int j = 0; j < 3; ++j) {
    const Mat2<F> x = m * basis[j] * minv;
    out.a[0][j] = x.m12;
    out.a[1][j] = x.m11;
    out.a[2][j] = x.m21;
  }
  return out;
}

/// Whether the image in PGL_2 has order p^t, t >= 0: scalar, or a single eigenvalue
/// without being scalar (unipotent up to scaling). Semisimple non-scalar elements never
/// qualify because x -> x^p is injective in characteristic p.
template <class F>
bool is_p_power_order(const Mat2<F>& m) {
  const F d = m.det();
  if (d.is_zero()) throw std::domain_error("is_p_power_order: singular matrix");
  if (m.is_scalar()) return true;
  const F t = m.trace();
  return t * t == d.of(4) * d;
}

}  // namespace treechar
