#pragma once

// Normal forms in Xi = <x, y | x^3, y^2>, the free product Z/3 * Z/2.

#include <cctype>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace treechar {

enum class XSym : std::uint8_t { x, xinv, y };

/// Alternating sequence of blocks x^{+-1} and y; empty means the identity.
struct XiWord {
  std::vector<XSym> blocks;

  std::size_t size() const { return blocks.size(); }
  bool is_identity() const { return blocks.empty(); }
  std::size_t y_count() const {
    std::size_t n = 0;
    for (auto b : blocks) n += b == XSym::y;
    return n;
  }

  friend bool operator==(const XiWord& a, const XiWord& b) { return a.blocks == b.blocks; }
  friend bool operator!=(const XiWord& a, const XiWord& b) { return !(a == b); }
  friend bool operator<(const XiWord& a, const XiWord& b) { return a.blocks < b.blocks; }

  std::string to_string() const {
    if (blocks.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (i) s += ' ';
      s += blocks[i] == XSym::x ? "x" : blocks[i] == XSym::xinv ? "x'" : "y";
    }
    return s;
  }
  friend std::ostream& operator<<(std::ostream& os, const XiWord& w) { return os << w.to_string(); }
};

namespace detail {
inline int x_exponent(XSym s) { return s == XSym::x ? 1 : 2; }
}  // namespace detail

/// Stack reduction: x-powers add mod 3, y's cancel in pairs.
inline XiWord xi_reduce(const std::vector<XSym>& seq) {
  XiWord w;
  for (XSym s : seq) {
    if (w.blocks.empty()) {
      w.blocks.push_back(s);
      continue;
    }
    XSym top = w.blocks.back();
    if (s == XSym::y && top == XSym::y) {
      w.blocks.pop_back();
    } else if (s != XSym::y && top != XSym::y) {
      int e = (detail::x_exponent(s) + detail::x_exponent(top)) % 3;
      w.blocks.pop_back();
      if (e == 1) w.blocks.push_back(XSym::x);
      if (e == 2) w.blocks.push_back(XSym::xinv);
    } else {
      w.blocks.push_back(s);
    }
  }
  return w;
}

inline XiWord operator*(const XiWord& a, const XiWord& b) {
  std::vector<XSym> seq = a.blocks;
  seq.insert(seq.end(), b.blocks.begin(), b.blocks.end());
  return xi_reduce(seq);
}

inline XiWord inverse(const XiWord& w) {
  XiWord r;
  for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it)
    r.blocks.push_back(*it == XSym::x ? XSym::xinv : *it == XSym::xinv ? XSym::x : XSym::y);
  return r;
}

/// "x x' y", whitespace-insensitive; "1" is the identity.
inline std::vector<XSym> parse_xi_symbols(const std::string& text) {
  std::vector<XSym> out;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool inv = i + 1 < s.size() && s[i + 1] == '\'';
    if (s[i] == 'x') {
      out.push_back(inv ? XSym::xinv : XSym::x);
    } else if (s[i] == 'y') {
      out.push_back(XSym::y);
    } else if (s[i] != '1') {
      throw std::invalid_argument(std::string("bad symbol in Xi word: ") + s[i]);
    }
    if (inv) ++i;
  }
  return out;
}

inline XiWord parse_xi(const std::string& text) { return xi_reduce(parse_xi_symbols(text)); }

/// Every nonidentity normal form with 1..max_len blocks, shorter first.
inline void for_each_xi_normal_form(std::size_t max_len, const std::function<void(const XiWord&)>& fn) {
  for (std::size_t len = 1; len <= max_len; ++len) {
    XiWord w;
    std::function<void()> rec = [&]() {
      if (w.size() == len) {
        fn(w);
        return;
      }
      const bool last_y = !w.blocks.empty() && w.blocks.back() == XSym::y;
      const bool last_x = !w.blocks.empty() && !last_y;
      if (!last_x) {
        for (XSym s : {XSym::x, XSym::xinv}) {
          w.blocks.push_back(s);
          rec();
          w.blocks.pop_back();
        }
      }
      if (!last_y) {
        w.blocks.push_back(XSym::y);
        rec();
        w.blocks.pop_back();
      }
    };
    rec();
  }
}

}  // namespace treechar
