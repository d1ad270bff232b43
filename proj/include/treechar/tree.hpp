#pragma once

// Bruhat-Tits trees of PGL_2 at places of F_p(t).
//
// A vertex is the class of the lattice spanned by the columns of [[pi^n, b], [0, 1]].
// At the infinite place everything is transported by t -> 1/t, which carries it to
// the place (t); vertices there are stored in those transported coordinates.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "treechar/hausdorff.hpp"
#include "treechar/intpoly3.hpp"
#include "treechar/mat2.hpp"
#include "treechar/place.hpp"
#include "treechar/poly.hpp"
#include "treechar/ratfunc.hpp"
#include "treechar/tilde_word.hpp"
#include "treechar/trace.hpp"

namespace treechar {

/// Local coordinates at a place: a finite place (pi) and whether t was inverted.
class LocalFrame {
 public:
  explicit LocalFrame(Place place)
      : place_(std::move(place)), pi_(place_.is_infinite() ? FpPoly::t(place_.modulus()) : place_.uniformizer_poly()) {}

  const Place& place() const { return place_; }
  const FpPoly& pi() const { return pi_; }
  std::int64_t modulus() const { return place_.modulus(); }

  RatF to_local(const RatF& f) const { return place_.is_infinite() ? f.invert_variable() : f; }
  Mat2<RatF> to_local(const Mat2<RatF>& m) const {
    return {to_local(m.m11), to_local(m.m12), to_local(m.m21), to_local(m.m22)};
  }
  /// Valuation of a function already in local coordinates.
  Valuation val(const RatF& local) const {
    if (local.is_zero()) return Valuation::infinity();
    return Valuation(multiplicity(local.num(), pi_) - multiplicity(local.den(), pi_));
  }
  RatF pi_power(std::int64_t n) const {
    FpPoly x = pi_.one();
    for (std::int64_t k = 0; k < (n < 0 ? -n : n); ++k) x = x * pi_;
    return n < 0 ? RatF(pi_.one(), x) : RatF(x);
  }

  friend bool operator==(const LocalFrame& a, const LocalFrame& b) { return a.place_ == b.place_; }

 private:
  Place place_;
  FpPoly pi_;
};

class TreeVertex {
 public:
  /// The standard vertex, the class of O + O.
  static TreeVertex base(const Place& place) { return TreeVertex(place, 0, RatF::constant(place.modulus(), 0)); }

  /// Canonical form of [[pi^n, b], [0, 1]] with b in local coordinates.
  static TreeVertex make(const LocalFrame& fr, std::int64_t n, const RatF& b) {
    return TreeVertex(fr.place(), n, canonical_b(fr, n, b));
  }

  /// The class of the lattice spanned by the columns of L (local coordinates).
  static TreeVertex from_lattice(const LocalFrame& fr, const Mat2<RatF>& L) {
    if (L.det().is_zero()) throw std::invalid_argument("lattice basis is singular");
    RatF a = L.m11, b = L.m12, c = L.m21, d = L.m22;
    if (fr.val(c) < fr.val(d)) {
      std::swap(a, b);
      std::swap(c, d);
    }
    // now v(d) <= v(c): clear c with column 1 -= (c/d) column 2, then scale by 1/d
    const RatF ratio = c / d;
    a = a - b * ratio;
    const RatF dinv = d.inverse();
    a = a * dinv;
    b = b * dinv;
    return make(fr, fr.val(a).value(), b);
  }

  const Place& place() const { return place_; }
  std::int64_t n() const { return n_; }
  const RatF& b() const { return b_; }

  Mat2<RatF> lattice(const LocalFrame& fr) const {
    const std::int64_t p = place_.modulus();
    return {fr.pi_power(n_), b_, RatF::constant(p, 0), RatF::constant(p, 1)};
  }

  friend bool operator==(const TreeVertex& x, const TreeVertex& y) {
    return x.place_ == y.place_ && x.n_ == y.n_ && x.b_ == y.b_;
  }
  friend bool operator!=(const TreeVertex& x, const TreeVertex& y) { return !(x == y); }
  friend bool operator<(const TreeVertex& x, const TreeVertex& y) {
    if (x.n_ != y.n_) return x.n_ < y.n_;
    return x.b_ < y.b_;
  }

  std::string to_string() const { return "(" + std::to_string(n_) + ", " + b_.to_string() + ")"; }

 private:
  TreeVertex(Place place, std::int64_t n, RatF b) : place_(std::move(place)), n_(n), b_(std::move(b)) {}

  /// b mod pi^n O as h / pi^k with k = max(0, -v(b)) and deg h < (n + k) deg pi; 0 if v(b) >= n.
  static RatF canonical_b(const LocalFrame& fr, std::int64_t n, const RatF& b) {
    const Valuation vb = fr.val(b);
    if (vb >= Valuation(n)) return b.zero();
    const std::int64_t k = std::max<std::int64_t>(0, -vb.value());
    const RatF scaled = b * fr.pi_power(k);  // in the local ring
    FpPoly mod = fr.pi().one();
    for (std::int64_t j = 0; j < n + k; ++j) mod = mod * fr.pi();
    const auto dinv = inverse_mod(scaled.den(), mod);
    if (!dinv) throw std::logic_error("denominator not a unit at the place");
    const FpPoly h = (scaled.num() * *dinv) % mod;
    return RatF(h) * fr.pi_power(-k);
  }

  Place place_;
  std::int64_t n_;
  RatF b_;
};

inline Valuation min_valuation(const LocalFrame& fr, const Mat2<RatF>& m) {
  Valuation v = Valuation::infinity();
  for (const RatF* e : m.entries()) v = min(v, fr.val(*e));
  return v;
}

/// Distance between two vertices of the same tree.
inline std::int64_t vertex_distance(const TreeVertex& x, const TreeVertex& y) {
  if (x.place() != y.place()) throw std::invalid_argument("vertex_distance: vertices lie on different trees");
  const LocalFrame fr(x.place());
  const std::int64_t dn = y.n() - x.n();
  Valuation m = min(Valuation(dn), Valuation(0));
  m = min(m, fr.val(y.b() - x.b()) + Valuation(-x.n()));
  return dn - 2 * m.value();
}

/// g . v for g given in global coordinates.
inline TreeVertex act(const LocalFrame& fr, const Mat2<RatF>& g_local, const TreeVertex& v) {
  return TreeVertex::from_lattice(fr, g_local * v.lattice(fr));
}

/// The q + 1 neighbours: M [[pi, c], [0, 1]] for residues c, and M [[1, 0], [0, pi]].
inline std::vector<TreeVertex> neighbors(const TreeVertex& v) {
  const LocalFrame fr(v.place());
  const std::int64_t p = fr.modulus();
  const Mat2<RatF> M = v.lattice(fr);
  std::vector<TreeVertex> out;
  const std::size_t dpi = static_cast<std::size_t>(fr.pi().deg());
  std::uint64_t q = 1;
  for (std::size_t k = 0; k < dpi; ++k) q *= static_cast<std::uint64_t>(p);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::vector<std::int64_t> coeffs;
    for (std::uint64_t x = idx, k = 0; k < dpi; ++k, x /= static_cast<std::uint64_t>(p)) coeffs.push_back(static_cast<std::int64_t>(x % static_cast<std::uint64_t>(p)));
    const RatF c{FpPoly(p, coeffs)};
    out.push_back(TreeVertex::from_lattice(fr, M * Mat2<RatF>{RatF(fr.pi()), c, c.zero(), c.one()}));
  }
  out.push_back(TreeVertex::from_lattice(fr, M * Mat2<RatF>{RatF::constant(p, 1), RatF::constant(p, 0), RatF::constant(p, 0), RatF(fr.pi())}));
  return out;
}

/// d(v, g v) = v(det g) - 2 min v(M^-1 g M), in local coordinates.
inline std::int64_t displacement_local(const LocalFrame& fr, const Mat2<RatF>& g, const TreeVertex& v) {
  const RatF& b = v.b();
  const RatF pn = fr.pi_power(v.n()), pninv = fr.pi_power(-v.n());
  const RatF &al = g.m11, &be = g.m12, &ga = g.m21, &de = g.m22;
  Valuation m = fr.val(al - b * ga);
  m = min(m, fr.val(pninv * (al * b + be - ga * b * b - de * b)));
  m = min(m, fr.val(ga * pn));
  m = min(m, fr.val(ga * b + de));
  return fr.val(g.det()).value() - 2 * m.value();
}

inline std::int64_t displacement(const PGL2Elt& g, const TreeVertex& v) {
  const LocalFrame fr(v.place());
  return displacement_local(fr, fr.to_local(g.mat()), v);
}

inline std::int64_t base_displacement(const PGL2Elt& g, const Place& place) {
  const LocalFrame fr(place);
  const Mat2<RatF> m = fr.to_local(g.mat());
  return fr.val(m.det()).value() - 2 * min_valuation(fr, m).value();
}

/// max(0, v(det) - 2 v(tr)), independent of the representative.
inline std::int64_t translation_length(const PGL2Elt& g, const Place& place) {
  const Valuation vt = valuation(g.trace(), place);
  if (vt.is_infinite()) return 0;
  return std::max<std::int64_t>(0, valuation(g.det(), place).value() - 2 * vt.value());
}

/// Least displacement over all vertices: the translation length if positive, otherwise
/// 0 or 1 by the parity of v(det); 1 means an edge is inverted.
inline std::int64_t min_vertex_displacement(const PGL2Elt& g, const Place& place) {
  const std::int64_t l = translation_length(g, place);
  if (l > 0) return l;
  const std::int64_t vd = valuation(g.det(), place).value();
  return ((vd % 2) + 2) % 2;
}

/// Vertices within the given radius of the base vertex, with their distance, in BFS order.
inline std::vector<std::pair<TreeVertex, std::int64_t>> ball(const Place& place, std::int64_t radius) {
  std::vector<std::pair<TreeVertex, std::int64_t>> out;
  std::set<TreeVertex> seen;
  const TreeVertex o = TreeVertex::base(place);
  out.emplace_back(o, 0);
  seen.insert(o);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [v, d] = out[i];
    if (d == radius) continue;
    for (const auto& w : neighbors(v))
      if (seen.insert(w).second) out.emplace_back(w, d + 1);
  }
  return out;
}

struct BallMinimum {
  std::int64_t value = 0;
  std::int64_t argmin_radius = 0;  // smallest radius at which the minimum is attained
};

inline BallMinimum ball_min_displacement(const PGL2Elt& g, const std::vector<std::pair<TreeVertex, std::int64_t>>& ball_vertices) {
  if (ball_vertices.empty()) throw std::invalid_argument("empty ball");
  const LocalFrame fr(ball_vertices.front().first.place());
  const Mat2<RatF> m = fr.to_local(g.mat());
  BallMinimum best{displacement_local(fr, m, ball_vertices.front().first), 0};
  for (const auto& [v, r] : ball_vertices) {
    const std::int64_t d = displacement_local(fr, m, v);
    if (d < best.value) best = {d, r};
  }
  return best;
}

/// Places where some generator fails to fix the base vertex.
inline std::vector<Place> bad_places(const std::vector<PGL2Elt>& gens) {
  if (gens.empty()) throw std::invalid_argument("bad_places: no generators");
  std::set<Place> out;
  for (const auto& g : gens) {
    const Mat2<RatF>& m = g.mat();  // polynomial entries, content 1
    const FpPoly det = m.det().num();
    if (det.deg() >= 1)
      for (const auto& [pi, e] : factor(det).factors) out.insert(Place::finite(pi));
    long maxdeg = 0;
    for (const RatF* e : m.entries()) maxdeg = std::max(maxdeg, e->num().deg());
    if (2 * maxdeg - det.deg() != 0) out.insert(Place::infinity(g.modulus()));
  }
  return {out.begin(), out.end()};
}

/// A word in generators of a free product of cyclic groups: (generator, exponent) syllables.
struct GenWord {
  std::vector<std::pair<std::size_t, std::int64_t>> syllables;

  std::string to_string(const std::vector<std::string>& names, const std::vector<std::int64_t>& orders) const {
    if (syllables.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : syllables) {
      if (!s.empty()) s += ' ';
      const std::string name = g < names.size() ? names[g] : "g" + std::to_string(g);
      if (e == 1)
        s += name;
      else if (orders[g] > 2 && e == orders[g] - 1)
        s += name + "'";
      else if (e == -1)
        s += name + "'";
      else
        s += name + "^" + std::to_string(e);
    }
    return s;
  }
};

/// Order of g in PGL_2 if it is at most limit, else 0 (treated as infinite).
inline std::int64_t projective_order(const PGL2Elt& g, std::int64_t limit = 12) {
  PGL2Elt x = g;
  for (std::int64_t k = 1; k <= limit; ++k) {
    if (x.is_identity()) return k;
    x = x * g;
  }
  return 0;
}

/// Every nonempty word of at most max_len syllables, consecutive syllables from different
/// generators, with exponents 1..order-1 (or +-1 for infinite order). The callback receives
/// the word and its value.
inline void for_each_gen_word(const std::vector<PGL2Elt>& gens, std::size_t max_len,
                              const std::function<void(const GenWord&, const PGL2Elt&)>& fn) {
  std::vector<std::int64_t> orders;
  std::vector<std::vector<std::pair<std::int64_t, PGL2Elt>>> letters(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::int64_t o = projective_order(gens[i]);
    orders.push_back(o);
    if (o == 1) continue;
    if (o == 0) {
      letters[i].emplace_back(1, gens[i]);
      letters[i].emplace_back(-1, gens[i].inverse());
    } else {
      PGL2Elt x = gens[i];
      for (std::int64_t e = 1; e < o; ++e, x = x * gens[i]) letters[i].emplace_back(e, x);
    }
  }
  GenWord w;
  std::function<void(const PGL2Elt&)> rec = [&](const PGL2Elt& prefix) {
    if (!w.syllables.empty()) fn(w, prefix);
    if (w.syllables.size() == max_len) return;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (!w.syllables.empty() && w.syllables.back().first == g) continue;
      for (const auto& [e, val] : letters[g]) {
        w.syllables.emplace_back(g, e);
        rec(prefix * val);
        w.syllables.pop_back();
      }
    }
  };
  if (!gens.empty()) rec(PGL2Elt::identity(gens.front().modulus()));
}

inline std::vector<std::int64_t> generator_orders(const std::vector<PGL2Elt>& gens) {
  std::vector<std::int64_t> out;
  for (const auto& g : gens) out.push_back(projective_order(g));
  return out;
}

struct DiscretenessFailure {
  GenWord word;
  bool trivial_element;  // the word evaluates to the identity of PGL_2
};

struct DiscretenessReport {
  std::vector<Place> places;
  std::vector<TreeVertex> base_points;
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  std::vector<DiscretenessFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Every nonidentity word of at most max_len syllables must move the base point of the
/// product of trees. The base point defaults to the standard vertex in each tree.
inline DiscretenessReport discreteness_check(const std::vector<PGL2Elt>& gens, const std::vector<Place>& places, std::size_t max_len,
                                             const std::vector<TreeVertex>& base_points = {}) {
  std::vector<TreeVertex> base = base_points;
  if (base.empty())
    for (const auto& pl : places) base.push_back(TreeVertex::base(pl));
  if (base.size() != places.size()) throw std::invalid_argument("discreteness_check: one base vertex per place");
  for (std::size_t i = 0; i < places.size(); ++i)
    if (base[i].place() != places[i]) throw std::invalid_argument("discreteness_check: base vertex on the wrong tree");
  DiscretenessReport rep;
  rep.places = places;
  rep.base_points = base;
  rep.max_len = max_len;
  for_each_gen_word(gens, max_len, [&](const GenWord& w, const PGL2Elt& g) {
    ++rep.words_checked;
    std::int64_t total = 0;
    for (const auto& v : base) total += displacement(g, v);
    if (total < 1) rep.failures.push_back({w, g.is_identity()});
  });
  return rep;
}

/// First point of the product of radius-r balls (BFS order, lexicographic across trees) whose
/// stabilizer contains no nonidentity word of at most max_len syllables.
inline std::optional<std::vector<TreeVertex>> free_base_point(const std::vector<PGL2Elt>& gens, const std::vector<Place>& places,
                                                              std::size_t max_len, std::int64_t radius) {
  std::vector<std::vector<TreeVertex>> balls;
  for (const auto& pl : places) {
    balls.emplace_back();
    for (const auto& [v, d] : ball(pl, radius)) balls.back().push_back(v);
  }
  std::vector<std::size_t> idx(places.size(), 0);
  while (true) {
    std::vector<TreeVertex> pt;
    for (std::size_t i = 0; i < places.size(); ++i) pt.push_back(balls[i][idx[i]]);
    if (discreteness_check(gens, places, max_len, pt).ok()) return pt;
    std::size_t i = places.size();
    while (i > 0) {
      --i;
      if (++idx[i] < balls[i].size()) break;
      idx[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if (places.empty()) return std::nullopt;
  }
}

/// Words whose translation length at the place is 0.
inline std::vector<GenWord> elliptic_witness_search(const std::vector<PGL2Elt>& gens, const Place& place, std::size_t max_len) {
  std::vector<GenWord> out;
  for_each_gen_word(gens, max_len, [&](const GenWord& w, const PGL2Elt& g) {
    if (!g.is_identity() && translation_length(g, place) == 0) out.push_back(w);
  });
  return out;
}

struct TracePole {
  TildeWord word;
  RatF value;
  std::vector<std::pair<Place, std::int64_t>> poles;  // places with negative valuation
};

/// Trace polynomials evaluated at a point of S over F_p(t); a place where some trace has a
/// pole is one where the character goes off to an ideal point.
inline std::vector<TracePole> trace_poles(const std::vector<TildeWord>& words, const RatF& u, const RatF& v, const RatF& w) {
  std::vector<TracePole> out;
  for (const auto& word : words) {
    TracePole tp{word, trace_poly(word).eval(u, v, w), {}};
    for (const auto& pl : support(tp.value)) {
      const Valuation val = valuation(tp.value, pl);
      if (!val.is_infinite() && val.value() < 0) tp.poles.emplace_back(pl, val.value());
    }
    out.push_back(std::move(tp));
  }
  return out;
}

}  // namespace treechar
