#pragma once

// Words in the central extension
//   <A, B, C, D, Z | A^3 = B^2 = C^2 = D^3 = Z, Z^2 = ABCD = 1>,
// written as Z^i times a word in A, A^-1, B, C.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace treechar {

enum class TSym : std::uint8_t { A, Ainv, B, C };

inline TSym inverse_symbol(TSym s) {
  switch (s) {
    case TSym::A:
      return TSym::Ainv;
    case TSym::Ainv:
      return TSym::A;
    default:
      return s;
  }
}

/// Same letter up to inversion: A and A^-1 share a class.
inline int symbol_class(TSym s) {
  switch (s) {
    case TSym::A:
    case TSym::Ainv:
      return 0;
    case TSym::B:
      return 1;
    default:
      return 2;
  }
}

struct TildeWord {
  std::vector<TSym> symbols;
  bool zsign = false;

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
  std::size_t count(TSym s) const { return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), s)); }

  friend bool operator==(const TildeWord& a, const TildeWord& b) { return a.symbols == b.symbols && a.zsign == b.zsign; }
  friend bool operator!=(const TildeWord& a, const TildeWord& b) { return !(a == b); }
  friend bool operator<(const TildeWord& a, const TildeWord& b) {
    if (a.symbols != b.symbols) return a.symbols < b.symbols;
    return a.zsign < b.zsign;
  }

  /// "Z*" prefix when the sign is set, A^-1 written A'.
  std::string to_string() const {
    std::string s = zsign ? "Z*" : "";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i) s += ' ';
      switch (symbols[i]) {
        case TSym::A:
          s += "A";
          break;
        case TSym::Ainv:
          s += "A'";
          break;
        case TSym::B:
          s += "B";
          break;
        case TSym::C:
          s += "C";
          break;
      }
    }
    if (s.empty() || s == "Z*") s += "1";
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const TildeWord& w) { return os << w.to_string(); }

  /// Whitespace-insensitive: "A A' B C", "Z*ACB", "D" (expanded to C B A'), "1" for the empty word.
  static TildeWord parse(const std::string& text) {
    TildeWord w;
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    std::size_t i = 0;
    if (s.rfind("Z*", 0) == 0) {
      w.zsign = true;
      i = 2;
    } else if (s.rfind('Z', 0) == 0) {
      w.zsign = true;
      i = 1;
    }
    for (; i < s.size(); ++i) {
      const bool inv = i + 1 < s.size() && s[i + 1] == '\'';
      switch (s[i]) {
        case 'A':
          w.symbols.push_back(inv ? TSym::Ainv : TSym::A);
          break;
        case 'B':
          w.symbols.push_back(TSym::B);
          if (inv) w.zsign = !w.zsign;  // B^-1 = Z B
          break;
        case 'C':
          w.symbols.push_back(TSym::C);
          if (inv) w.zsign = !w.zsign;
          break;
        case 'D':
          // D = (ABC)^-1 = C B A^-1; D^-1 = A B C.
          if (inv) {
            w.symbols.insert(w.symbols.end(), {TSym::A, TSym::B, TSym::C});
          } else {
            w.symbols.insert(w.symbols.end(), {TSym::C, TSym::B, TSym::Ainv});
          }
          break;
        case '1':
          break;
        default:
          throw std::invalid_argument(std::string("bad symbol in word: ") + s[i]);
      }
      if (inv) ++i;
    }
    return w;
  }
};

inline TildeWord concat(const TildeWord& a, const TildeWord& b) {
  TildeWord r = a;
  r.symbols.insert(r.symbols.end(), b.symbols.begin(), b.symbols.end());
  r.zsign = a.zsign != b.zsign;
  return r;
}

namespace detail {

/// Collapse one adjacent equal-or-inverse pair at position i. Returns false if none applies.
/// A.A = Z.A^-1, A^-1.A^-1 = Z.A, B.B = C.C = Z, A.A^-1 = A^-1.A = 1.
inline bool collapse_pair(TildeWord& w, std::size_t i) {
  const TSym x = w.symbols[i], y = w.symbols[i + 1];
  auto it = w.symbols.begin() + static_cast<std::ptrdiff_t>(i);
  if (inverse_symbol(x) == y && x != y) {
    w.symbols.erase(it, it + 2);
    return true;
  }
  if (x != y) return false;
  if (x == TSym::A || x == TSym::Ainv) {
    *it = inverse_symbol(x);
    w.symbols.erase(it + 1);
  } else {
    w.symbols.erase(it, it + 2);
  }
  w.zsign = !w.zsign;
  return true;
}

inline const std::vector<TSym>& rule1_lhs() {
  static const std::vector<TSym> v{TSym::C, TSym::A, TSym::B, TSym::C};
  return v;
}
inline const std::vector<TSym>& rule1_rhs() {
  static const std::vector<TSym> v{TSym::B, TSym::Ainv, TSym::C, TSym::B, TSym::Ainv};
  return v;
}
inline const std::vector<TSym>& rule2_lhs() {
  static const std::vector<TSym> v{TSym::C, TSym::B, TSym::Ainv, TSym::C};
  return v;
}
inline const std::vector<TSym>& rule2_rhs() {
  static const std::vector<TSym> v{TSym::A, TSym::B, TSym::C, TSym::A, TSym::B};
  return v;
}

inline std::ptrdiff_t find_rule(const std::vector<TSym>& s, const std::vector<TSym>& lhs) {
  auto it = std::search(s.begin(), s.end(), lhs.begin(), lhs.end());
  return it == s.end() ? -1 : it - s.begin();
}

}  // namespace detail

/// True if no adjacent pair collapses and neither rewriting rule applies.
inline bool is_reduced(const TildeWord& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (symbol_class(w.symbols[i]) == symbol_class(w.symbols[i + 1])) return false;
  return detail::find_rule(w.symbols, detail::rule1_lhs()) < 0 && detail::find_rule(w.symbols, detail::rule2_lhs()) < 0;
}

/// Pair collapses first, leftmost first; then the leftmost of CABC -> BA'CBA' and
/// CBA'C -> ABCAB; repeat. Each step lowers (number of C's, length) lexicographically.
inline TildeWord reduce_tilde(TildeWord w) {
  while (true) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < w.size();) {
      if (detail::collapse_pair(w, i)) {
        changed = true;
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
    const auto p1 = detail::find_rule(w.symbols, detail::rule1_lhs());
    const auto p2 = detail::find_rule(w.symbols, detail::rule2_lhs());
    if (p1 < 0 && p2 < 0) {
      if (!changed) return w;
      continue;
    }
    const bool use1 = p1 >= 0 && (p2 < 0 || p1 <= p2);
    const auto pos = use1 ? p1 : p2;
    const auto& rhs = use1 ? detail::rule1_rhs() : detail::rule2_rhs();
    auto it = w.symbols.begin() + pos;
    it = w.symbols.erase(it, it + 4);
    w.symbols.insert(it, rhs.begin(), rhs.end());
  }
}

inline TildeWord rotate_left(const TildeWord& w, std::size_t k) {
  TildeWord r = w;
  if (!r.empty()) std::rotate(r.symbols.begin(), r.symbols.begin() + static_cast<std::ptrdiff_t>(k % r.size()), r.symbols.end());
  return r;
}

inline bool is_cyclically_reduced(const TildeWord& w) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!is_reduced(rotate_left(w, k))) return false;
  return true;
}

/// Reduce, and keep reducing rotations until every rotation is reduced.
/// The result is conjugate to the input.
inline TildeWord cyclic_reduce(TildeWord w) {
  w = reduce_tilde(std::move(w));
  while (true) {
    bool changed = false;
    for (std::size_t k = 1; k < w.size(); ++k) {
      TildeWord r = rotate_left(w, k);
      if (!is_reduced(r)) {
        w = reduce_tilde(std::move(r));
        changed = true;
        break;
      }
    }
    if (!changed) return w;
  }
}

/// Reverse and swap A <-> A^-1; each B^-1 = ZB and C^-1 = ZC flips the sign.
inline TildeWord invert_tilde(const TildeWord& w) {
  TildeWord r;
  r.zsign = w.zsign;
  r.symbols.reserve(w.size());
  for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
    r.symbols.push_back(inverse_symbol(*it));
    if (*it == TSym::B || *it == TSym::C) r.zsign = !r.zsign;
  }
  return r;
}

/// Lexicographically least rotation, sign carried along.
inline TildeWord least_rotation(const TildeWord& w) {
  TildeWord best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    TildeWord r = rotate_left(w, k);
    if (r.symbols < best.symbols) best = std::move(r);
  }
  return best;
}

struct TildeWordHash {
  std::size_t operator()(const TildeWord& w) const {
    std::size_t h = w.zsign ? 0x9e3779b97f4a7c15ULL : 0;
    for (auto s : w.symbols) h = h * 5 + static_cast<std::size_t>(s) + 1;
    return h;
  }
};

/// All words of exactly the given length over {A, A', B, C} with no adjacent pair of the same class.
inline void for_each_pair_free_word(std::size_t length, const std::function<void(const TildeWord&)>& fn) {
  TildeWord w;
  std::function<void()> rec = [&]() {
    if (w.size() == length) {
      fn(w);
      return;
    }
    for (TSym s : {TSym::A, TSym::Ainv, TSym::B, TSym::C}) {
      if (!w.empty() && symbol_class(w.symbols.back()) == symbol_class(s)) continue;
      w.symbols.push_back(s);
      rec();
      w.symbols.pop_back();
    }
  };
  rec();
}

}  // namespace treechar
