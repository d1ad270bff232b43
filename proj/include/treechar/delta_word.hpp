#pragma once

// Words in Delta = <a, b, c, d | a^3, b^2, c^2, d^3, abcd>.
//
// Delta is the amalgam <a,b> *_H <c,d> over H = <ab> = <(cd)^-1>. Normal forms
// alpha_0 gamma_1 alpha_1 ... gamma_k alpha_k have each alpha a reduced word in
// <a,b> = Z/3 * Z/2 and each gamma a nonempty reduced word in <c,d> that neither
// begins nor ends with cd or d'c (the two shortest nontrivial elements of H).
// Interior alphas are additionally kept out of H, which makes the empty normal
// form occur exactly for the identity.

#include <array>
#include <boost/rational.hpp>
#include <cctype>
#include <cstdint>
#include <functional>
#include <algorithm>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "treechar/tilde_word.hpp"

namespace treechar {

enum class DSym : std::uint8_t { a, ainv, b, c, d, dinv };

inline bool in_ab_factor(DSym s) { return s == DSym::a || s == DSym::ainv || s == DSym::b; }

inline DSym inverse_symbol(DSym s) {
  switch (s) {
    case DSym::a:
      return DSym::ainv;
    case DSym::ainv:
      return DSym::a;
    case DSym::d:
      return DSym::dinv;
    case DSym::dinv:
      return DSym::d;
    default:
      return s;
  }
}

struct DeltaWord {
  std::vector<DSym> symbols;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }

  friend bool operator==(const DeltaWord& x, const DeltaWord& y) { return x.symbols == y.symbols; }
  friend bool operator!=(const DeltaWord& x, const DeltaWord& y) { return !(x == y); }
  friend bool operator<(const DeltaWord& x, const DeltaWord& y) { return x.symbols < y.symbols; }

  std::string to_string() const {
    if (symbols.empty()) return "1";
    static const char* names[] = {"a", "a'", "b", "c", "d", "d'"};
    std::string s;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i) s += ' ';
      s += names[static_cast<int>(symbols[i])];
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const DeltaWord& w) { return os << w.to_string(); }

  /// "a a' b c d d'", whitespace-insensitive; b' and c' are accepted as b and c.
  static DeltaWord parse(const std::string& text) {
    DeltaWord w;
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const bool inv = i + 1 < s.size() && s[i + 1] == '\'';
      switch (s[i]) {
        case 'a':
          w.symbols.push_back(inv ? DSym::ainv : DSym::a);
          break;
        case 'b':
          w.symbols.push_back(DSym::b);
          break;
        case 'c':
          w.symbols.push_back(DSym::c);
          break;
        case 'd':
          w.symbols.push_back(inv ? DSym::dinv : DSym::d);
          break;
        case '1':
          break;
        default:
          throw std::invalid_argument(std::string("bad symbol in Delta word: ") + s[i]);
      }
      if (inv) ++i;
    }
    return w;
  }
};

inline DeltaWord operator*(const DeltaWord& x, const DeltaWord& y) {
  DeltaWord r = x;
  r.symbols.insert(r.symbols.end(), y.symbols.begin(), y.symbols.end());
  return r;
}

inline DeltaWord inverse(const DeltaWord& w) {
  DeltaWord r;
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) r.symbols.push_back(inverse_symbol(*it));
  return r;
}

namespace detail {

// Generator family and exponent of a letter: a^{1,2}, b^1, c^1, d^{1,2}.
inline int family(DSym s) {
  switch (s) {
    case DSym::a:
    case DSym::ainv:
      return 0;
    case DSym::b:
      return 1;
    case DSym::c:
      return 2;
    default:
      return 3;
  }
}
inline int exponent(DSym s) { return (s == DSym::ainv || s == DSym::dinv) ? 2 : 1; }
inline int order(int fam) { return (fam == 0 || fam == 3) ? 3 : 2; }
inline std::optional<DSym> letter(int fam, int e) {
  e %= order(fam);
  if (e == 0) return std::nullopt;
  switch (fam) {
    case 0:
      return e == 1 ? DSym::a : DSym::ainv;
    case 1:
      return DSym::b;
    case 2:
      return DSym::c;
    default:
      return e == 1 ? DSym::d : DSym::dinv;
  }
}

}  // namespace detail

/// Reduce in the free product of the four cyclic groups: merge equal-family neighbours.
inline DeltaWord reduce_powers(const DeltaWord& w) {
  DeltaWord r;
  for (DSym s : w.symbols) {
    if (!r.symbols.empty() && detail::family(r.symbols.back()) == detail::family(s)) {
      const int fam = detail::family(s);
      const int e = detail::exponent(r.symbols.back()) + detail::exponent(s);
      r.symbols.pop_back();
      if (auto l = detail::letter(fam, e)) r.symbols.push_back(*l);
    } else {
      r.symbols.push_back(s);
    }
  }
  return r;
}

struct DeltaNormalForm {
  std::vector<DeltaWord> alphas;  // k + 1 blocks in <a, b>
  std::vector<DeltaWord> gammas;  // k blocks in <c, d>

  std::size_t k() const { return gammas.size(); }
  bool is_identity() const { return gammas.empty() && alphas.size() == 1 && alphas[0].empty(); }
  std::size_t max_alpha_length() const {
    std::size_t m = 0;
    for (const auto& a : alphas) m = std::max(m, a.size());
    return m;
  }

  DeltaWord recompose() const {
    DeltaWord w = alphas.at(0);
    for (std::size_t i = 0; i < gammas.size(); ++i) w = w * gammas[i] * alphas.at(i + 1);
    return w;
  }

  friend bool operator==(const DeltaNormalForm& x, const DeltaNormalForm& y) {
    return x.alphas == y.alphas && x.gammas == y.gammas;
  }
};

namespace detail {

inline bool starts_with(const std::vector<DSym>& s, std::initializer_list<DSym> pre) {
  return s.size() >= pre.size() && std::equal(pre.begin(), pre.end(), s.begin());
}
inline bool ends_with(const std::vector<DSym>& s, std::initializer_list<DSym> suf) {
  return s.size() >= suf.size() && std::equal(suf.begin(), suf.end(), s.end() - static_cast<std::ptrdiff_t>(suf.size()));
}

/// If alpha (reduced) is (ab)^m, m != 0, return the same element of H written as a <c,d> word.
inline std::optional<DeltaWord> ab_power_as_cd(const DeltaWord& alpha) {
  const auto& s = alpha.symbols;
  if (s.empty() || s.size() % 2) return std::nullopt;
  const bool pos = s[0] == DSym::a;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    if (pos && !(s[i] == DSym::a && s[i + 1] == DSym::b)) return std::nullopt;
    if (!pos && !(s[i] == DSym::b && s[i + 1] == DSym::ainv)) return std::nullopt;
  }
  // ab = d'c and (ab)^-1 = ba' = cd.
  DeltaWord out;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    if (pos)
      out.symbols.insert(out.symbols.end(), {DSym::dinv, DSym::c});
    else
      out.symbols.insert(out.symbols.end(), {DSym::c, DSym::d});
  }
  return out;
}

}  // namespace detail

/// The amalgam normal form described at the top of this header.
inline DeltaNormalForm delta_normal_form(const DeltaWord& input) {
  using detail::ends_with;
  using detail::starts_with;
  const DeltaWord cd_as_ab{{DSym::b, DSym::ainv}};  // cd = (ab)^-1
  const DeltaWord dc_as_ab{{DSym::a, DSym::b}};     // d'c = ab

  DeltaNormalForm nf;
  nf.alphas.emplace_back();
  bool in_gamma = false;
  for (DSym s : reduce_powers(input).symbols) {
    if (in_ab_factor(s)) {
      if (in_gamma) {
        nf.alphas.emplace_back();
        in_gamma = false;
      }
      nf.alphas.back().symbols.push_back(s);
    } else {
      if (!in_gamma) {
        nf.gammas.emplace_back();
        in_gamma = true;
      }
      nf.gammas.back().symbols.push_back(s);
    }
  }
  if (in_gamma) nf.alphas.emplace_back();

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < nf.gammas.size() && !changed; ++i) {
      auto& g = nf.gammas[i].symbols;
      auto& left = nf.alphas[i];
      auto& right = nf.alphas[i + 1];
      if (starts_with(g, {DSym::c, DSym::d}) || starts_with(g, {DSym::dinv, DSym::c})) {
        const bool cd = g[0] == DSym::c;
        g.erase(g.begin(), g.begin() + 2);
        left = reduce_powers(left * (cd ? cd_as_ab : dc_as_ab));
        changed = true;
      } else if (ends_with(g, {DSym::c, DSym::d}) || ends_with(g, {DSym::dinv, DSym::c})) {
        const bool cd = g[g.size() - 2] == DSym::c;
        g.erase(g.end() - 2, g.end());
        right = reduce_powers((cd ? cd_as_ab : dc_as_ab) * right);
        changed = true;
      }
      if (g.empty()) {
        nf.alphas[i] = reduce_powers(nf.alphas[i] * nf.alphas[i + 1]);
        nf.alphas.erase(nf.alphas.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        nf.gammas.erase(nf.gammas.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      }
    }
    for (std::size_t i = 1; i + 1 < nf.alphas.size() && !changed; ++i) {
      std::optional<DeltaWord> h = nf.alphas[i].empty() ? DeltaWord{} : detail::ab_power_as_cd(nf.alphas[i]);
      if (!h) continue;
      nf.gammas[i - 1] = reduce_powers(nf.gammas[i - 1] * *h * nf.gammas[i]);
      nf.gammas.erase(nf.gammas.begin() + static_cast<std::ptrdiff_t>(i));
      nf.alphas.erase(nf.alphas.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
    }
  }
  return nf;
}

/// Alternation constraints of the normal form: alphas alternate a^{+-1} / b,
/// gammas are nonempty, alternate c / d^{+-1} and avoid cd, d'c at both ends.
inline bool satisfies_normal_form_constraints(const DeltaNormalForm& nf) {
  using detail::ends_with;
  using detail::starts_with;
  if (nf.alphas.size() != nf.gammas.size() + 1) return false;
  for (const auto& a : nf.alphas) {
    if (reduce_powers(a) != a) return false;
    for (DSym s : a.symbols)
      if (!in_ab_factor(s)) return false;
  }
  for (const auto& g : nf.gammas) {
    if (g.empty() || reduce_powers(g) != g) return false;
    for (DSym s : g.symbols)
      if (in_ab_factor(s)) return false;
    for (auto pre : {std::initializer_list<DSym>{DSym::c, DSym::d}, std::initializer_list<DSym>{DSym::dinv, DSym::c}})
      if (starts_with(g.symbols, pre) || ends_with(g.symbols, pre)) return false;
  }
  return true;
}

/// A word in the central extension mapping to w: d = (abc)^-1 lifts to C B A^-1.
inline TildeWord lift(const DeltaWord& w) {
  TildeWord out;
  for (DSym s : w.symbols) {
    switch (s) {
      case DSym::a:
        out.symbols.push_back(TSym::A);
        break;
      case DSym::ainv:
        out.symbols.push_back(TSym::Ainv);
        break;
      case DSym::b:
        out.symbols.push_back(TSym::B);
        break;
      case DSym::c:
        out.symbols.push_back(TSym::C);
        break;
      case DSym::d:
        out.symbols.insert(out.symbols.end(), {TSym::C, TSym::B, TSym::Ainv});
        break;
      case DSym::dinv:
        out.symbols.insert(out.symbols.end(), {TSym::A, TSym::B, TSym::C});
        break;
    }
  }
  return out;
}

inline bool is_trivial_in_delta(const DeltaWord& w) { return delta_normal_form(w).is_identity(); }
inline bool equal_in_delta(const DeltaWord& x, const DeltaWord& y) { return is_trivial_in_delta(x * inverse(y)); }

/// Permutation of {1,2,3}, stored 0-based: img[i] is the image of i.
struct Perm3 {
  std::array<std::uint8_t, 3> img{0, 1, 2};

  static Perm3 identity() { return {}; }
  bool is_identity() const { return img[0] == 0 && img[1] == 1 && img[2] == 2; }

  /// Function composition: (f * g)(i) = f(g(i)).
  friend Perm3 operator*(const Perm3& f, const Perm3& g) {
    Perm3 r;
    for (int i = 0; i < 3; ++i) r.img[i] = f.img[g.img[i]];
    return r;
  }
  Perm3 inverse() const {
    Perm3 r;
    for (std::uint8_t i = 0; i < 3; ++i) r.img[img[i]] = i;
    return r;
  }
  friend bool operator==(const Perm3& f, const Perm3& g) { return f.img == g.img; }
  friend bool operator!=(const Perm3& f, const Perm3& g) { return !(f == g); }
  friend bool operator<(const Perm3& f, const Perm3& g) { return f.img < g.img; }

  /// Cycle notation, 1-based, "()" for the identity.
  std::string to_string() const {
    std::string s;
    std::array<bool, 3> seen{};
    for (int i = 0; i < 3; ++i) {
      if (seen[i] || img[i] == i) continue;
      s += '(';
      for (int j = i; !seen[j]; j = img[j]) {
        seen[j] = true;
        s += static_cast<char>('1' + j);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }
};

/// a, d -> (123), b -> (12), c -> (23).
inline Perm3 s3_generator_image(DSym s) {
  const Perm3 cyc{{1, 2, 0}};
  switch (s) {
    case DSym::a:
    case DSym::d:
      return cyc;
    case DSym::ainv:
    case DSym::dinv:
      return cyc.inverse();
    case DSym::b:
      return Perm3{{1, 0, 2}};
    default:
      return Perm3{{0, 2, 1}};
  }
}

/// Image of the word, letters composed right to left as functions.
inline Perm3 s3_image(const DeltaWord& w) {
  Perm3 r;
  for (DSym s : w.symbols) r = r * s3_generator_image(s);
  return r;
}

inline bool kernel_member(const DeltaWord& w) { return s3_image(w).is_identity(); }

/// Right cosets of the kernel, i.e. the 6-point action of Delta on S_3 by right multiplication.
struct CosetTable {
  std::vector<Perm3> cosets;                      // coset i is labelled by its S_3 image
  std::vector<DeltaWord> transversal;             // Schreier transversal: word reaching coset i
  std::vector<std::array<std::size_t, 4>> action;  // action[i][g] for g in a, b, c, d

  std::size_t size() const { return cosets.size(); }
  std::size_t index_of(const Perm3& p) const {
    for (std::size_t i = 0; i < cosets.size(); ++i)
      if (cosets[i] == p) return i;
    throw std::logic_error("coset not found");
  }
};

inline const std::array<DSym, 4>& delta_generators() {
  static const std::array<DSym, 4> g{DSym::a, DSym::b, DSym::c, DSym::d};
  return g;
}

/// Breadth-first enumeration of the cosets from the trivial coset.
inline CosetTable enumerate_cosets() {
  CosetTable t;
  t.cosets.push_back(Perm3::identity());
  t.transversal.emplace_back();
  std::queue<std::size_t> todo;
  todo.push(0);
  while (!todo.empty()) {
    const std::size_t i = todo.front();
    todo.pop();
    for (DSym g : delta_generators()) {
      const Perm3 next = t.cosets[i] * s3_generator_image(g);
      bool known = false;
      for (const auto& c : t.cosets) known = known || c == next;
      if (!known) {
        t.cosets.push_back(next);
        t.transversal.push_back(t.transversal[i] * DeltaWord{{g}});
        todo.push(t.cosets.size() - 1);
      }
    }
  }
  t.action.resize(t.cosets.size());
  for (std::size_t i = 0; i < t.cosets.size(); ++i)
    for (std::size_t g = 0; g < 4; ++g) t.action[i][g] = t.index_of(t.cosets[i] * s3_generator_image(delta_generators()[g]));
  return t;
}

struct SchreierGenerator {
  std::size_t coset;
  std::size_t generator;  // index into delta_generators()
  DeltaWord word;         // t_coset * g * t_{coset.g}^-1, power-reduced
};

/// Nontrivial Schreier generators of the kernel.
inline std::vector<SchreierGenerator> schreier_generators(const CosetTable& t) {
  std::vector<SchreierGenerator> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t g = 0; g < 4; ++g) {
      DeltaWord w = reduce_powers(t.transversal[i] * DeltaWord{{delta_generators()[g]}} * inverse(t.transversal[t.action[i][g]]));
      if (is_trivial_in_delta(w)) continue;
      out.push_back({i, g, w});
    }
  }
  return out;
}

inline std::vector<DeltaWord> schreier_generators() {
  std::vector<DeltaWord> out;
  for (auto& s : schreier_generators(enumerate_cosets())) out.push_back(s.word);
  return out;
}

/// Reidemeister-Schreier rewrite of a kernel word as a product of t_i g t_{ig}^-1 factors
/// (inverse letters contribute inverted factors). Recomposing the factors gives back w.
inline std::vector<DeltaWord> rewrite_in_schreier_generators(const CosetTable& t, const DeltaWord& w) {
  std::vector<DeltaWord> factors;
  std::size_t cur = 0;
  for (DSym s : w.symbols) {
    std::size_t g = static_cast<std::size_t>(detail::family(s));
    const int reps = detail::exponent(s);  // a' = a a, d' = d d
    for (int r = 0; r < reps; ++r) {
      const std::size_t next = t.action[cur][g];
      DeltaWord f = reduce_powers(t.transversal[cur] * DeltaWord{{delta_generators()[g]}} * inverse(t.transversal[next]));
      if (!is_trivial_in_delta(f)) factors.push_back(f);
      cur = next;
    }
  }
  if (cur != 0) throw std::invalid_argument("word is not in the kernel");
  return factors;
}

/// Orbifold Euler characteristic of a sphere with cone points of the given orders.
inline boost::rational<std::int64_t> orbifold_euler_characteristic(const std::vector<std::int64_t>& cone_orders) {
  boost::rational<std::int64_t> chi(2);
  for (auto m : cone_orders) chi -= boost::rational<std::int64_t>(m - 1, m);
  return chi;
}

/// Every word of exactly the given length that is a fixed point of delta_normal_form.
inline void for_each_delta_normal_form(std::size_t length, const std::function<void(const DeltaWord&)>& fn) {
  DeltaWord w;
  std::function<void()> rec = [&]() {
    if (w.size() == length) {
      if (delta_normal_form(w).recompose() == w) fn(w);
      return;
    }
    for (DSym s : {DSym::a, DSym::ainv, DSym::b, DSym::c, DSym::d, DSym::dinv}) {
      if (!w.empty() && detail::family(w.symbols.back()) == detail::family(s)) continue;
      w.symbols.push_back(s);
      rec();
      w.symbols.pop_back();
    }
  };
  rec();
}

}  // namespace treechar
