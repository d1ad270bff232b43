#pragma once

// The embedding iota: Xi -> PGL_2(F_p(t)), x -> [[0,1],[-1,-1]], y -> [[0,1],[t,0]],
// and the ping-pong bookkeeping on P^1 under reduction t -> 0.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treechar/field.hpp"
#include "treechar/mat2.hpp"
#include "treechar/poly.hpp"
#include "treechar/ratfunc.hpp"
#include "treechar/xi_word.hpp"

namespace treechar {

/// A class in PGL_2(F_p(t)) with a canonical representative: polynomial entries with
/// content 1, and the first nonzero entry of (m11, m12, m21, m22) monic.
class PGL2Elt {
 public:
  explicit PGL2Elt(const Mat2<RatF>& m) : m_(canonical(m)) {}

  static PGL2Elt identity(std::int64_t p) { return PGL2Elt(Mat2<RatF>::identity(RatF::constant(p, 1))); }

  const Mat2<RatF>& mat() const { return m_; }
  std::int64_t modulus() const { return m_.m11.modulus(); }
  bool is_identity() const { return m_.is_scalar(); }
  RatF det() const { return m_.det(); }
  RatF trace() const { return m_.trace(); }
  /// Largest entry degree of the canonical representative.
  long max_degree() const {
    long d = -1;
    for (const RatF* e : m_.entries()) d = std::max(d, e->num().deg());
    return d;
  }

  PGL2Elt inverse() const { return PGL2Elt(m_.adjugate()); }
  friend PGL2Elt operator*(const PGL2Elt& a, const PGL2Elt& b) { return PGL2Elt(a.m_ * b.m_); }
  friend bool operator==(const PGL2Elt& a, const PGL2Elt& b) { return a.m_ == b.m_; }
  friend bool operator!=(const PGL2Elt& a, const PGL2Elt& b) { return !(a == b); }

  std::string to_string() const {
    return "[[" + m_.m11.to_string() + ", " + m_.m12.to_string() + "], [" + m_.m21.to_string() + ", " + m_.m22.to_string() + "]]";
  }

  static Mat2<RatF> canonical(const Mat2<RatF>& m) {
    if (m.det().is_zero()) throw std::invalid_argument("PGL2Elt: singular matrix");
    FpPoly l = m.m11.den();
    for (const RatF* e : m.entries()) l = l / gcd(l, e->den()) * e->den();
    std::vector<FpPoly> num;
    for (const RatF* e : m.entries()) num.push_back((*e * RatF(l)).num());
    FpPoly g = l.zero();
    for (const auto& f : num) g = gcd(g, f);
    for (auto& f : num) f = f / g;
    for (const auto& f : num) {
      if (f.is_zero()) continue;
      const std::int64_t inv = mod_inverse(f.lead(), f.modulus());
      for (auto& h : num) h = h.scaled(inv);
      break;
    }
    return {RatF(num[0]), RatF(num[1]), RatF(num[2]), RatF(num[3])};
  }

 private:
  Mat2<RatF> m_;
};

inline Mat2<RatF> iota_x_matrix(std::int64_t p) {
  return {RatF::constant(p, 0), RatF::constant(p, 1), RatF::constant(p, -1), RatF::constant(p, -1)};
}
inline Mat2<RatF> iota_y_matrix(std::int64_t p) {
  return {RatF::constant(p, 0), RatF::constant(p, 1), RatF::t(p), RatF::constant(p, 0)};
}

inline PGL2Elt iota_block(XSym s, std::int64_t p) {
  switch (s) {
    case XSym::x:
      return PGL2Elt(iota_x_matrix(p));
    case XSym::xinv:
      return PGL2Elt(iota_x_matrix(p).adjugate());
    default:
      return PGL2Elt(iota_y_matrix(p));
  }
}

// The block images have polynomial entries, so multiply over F_p[t] and normalize once.
inline PGL2Elt iota(const XiWord& w, std::int64_t p) {
  const FpPoly zero(p, {}), one(p, {1}), m1(p, {p - 1}), t(p, {0, 1});
  const Mat2<FpPoly> X{zero, one, m1, m1}, Xinv{m1, m1, one, zero}, Y{zero, one, t, zero};
  Mat2<FpPoly> m{one, zero, zero, one};
  for (XSym s : w.blocks) m = m * (s == XSym::x ? X : s == XSym::xinv ? Xinv : Y);
  return PGL2Elt(Mat2<RatF>{RatF(m.m11), RatF(m.m12), RatF(m.m21), RatF(m.m22)});
}

/// (P(t) : Q(t)) with coprime polynomials -> (P(0) : Q(0)).
inline ProjPt<Fp> reduce_to_fp(const ProjPt<RatF>& pt) {
  const std::int64_t p = pt.p().modulus();
  if (pt.is_infinity()) return ProjPt<Fp>::infinity(Fp(p, 1));
  const RatF& x = pt.affine();
  return ProjPt<Fp>(Fp(p, x.num().eval(0)), Fp(p, x.den().eval(0)));
}

struct PingPongStep {
  XSym block;
  ProjPt<RatF> before, after;
  ProjPt<Fp> reduced_before, reduced_after;
  bool certified;  // the reduction of the image is determined by the reduction of the input
};

struct PingPongResult {
  XiWord word;
  std::vector<PingPongStep> trail;
  ProjPt<RatF> image;
  ProjPt<Fp> reduced_image;
  bool moves_one = false;              // iota(w) 1 != 1 exactly
  bool membership_applies = false;     // the trail passes through infinity
  bool in_target_set = false;          // reduced image in {0, -1, inf}
  bool trail_certified = false;

  bool ok() const { return moves_one && trail_certified && (!membership_applies || in_target_set); }
};

inline bool in_pingpong_set(const ProjPt<Fp>& x) {
  if (x.is_infinity()) return true;
  return x.affine().is_zero() || x.affine() == -x.affine().one();
}

/// Apply the blocks of w to 1 = (1 : 1), rightmost first, recording exact and reduced points.
/// x-blocks lie in PGL_2(F_p), so they commute with reduction; a y-block is certified when
/// its input reduces to a finite point, which it then sends to infinity.
inline PingPongResult pingpong_check(const XiWord& w, std::int64_t p) {
  if (w.is_identity()) throw std::invalid_argument("pingpong_check: identity word");
  const RatF one = RatF::constant(p, 1);
  std::vector<PingPongStep> trail;
  ProjPt<RatF> cur = ProjPt<RatF>::finite(one);
  bool certified = true;
  for (auto it = w.blocks.rbegin(); it != w.blocks.rend(); ++it) {
    const Mat2<RatF> m = iota_block(*it, p).mat();
    const ProjPt<RatF> next = mobius_act(m, cur);
    PingPongStep step{*it, cur, next, reduce_to_fp(cur), reduce_to_fp(next), false};
    if (*it == XSym::y) {
      step.certified = !step.reduced_before.is_infinity() && step.reduced_after.is_infinity();
    } else {
      Mat2<Fp> mp{Fp(p, m.m11.num().eval(0)), Fp(p, m.m12.num().eval(0)), Fp(p, m.m21.num().eval(0)), Fp(p, m.m22.num().eval(0))};
      step.certified = mobius_act(mp, step.reduced_before) == step.reduced_after;
    }
    certified = certified && step.certified;
    trail.push_back(step);
    cur = next;
  }
  const ProjPt<Fp> reduced = reduce_to_fp(cur);
  return PingPongResult{w, std::move(trail), cur, reduced, cur != ProjPt<RatF>::finite(one), w.y_count() > 0,
                        in_pingpong_set(reduced), certified};
}

struct InjectivityReport {
  std::size_t max_len = 0;
  std::size_t words_checked = 0;
  std::vector<XiWord> scalar_failures;
  std::vector<XiWord> pingpong_failures;
  long max_entry_degree = 0;
  std::map<std::size_t, long> max_degree_by_y_count;  // observational only

  bool ok() const { return scalar_failures.empty() && pingpong_failures.empty(); }
};

/// Every nonidentity normal form with at most max_len blocks: iota(w) must not be scalar,
/// and the ping-pong trail must check out.
inline InjectivityReport injectivity_suite(std::size_t max_len, std::int64_t p) {
  InjectivityReport rep;
  rep.max_len = max_len;
  for_each_xi_normal_form(max_len, [&](const XiWord& w) {
    ++rep.words_checked;
    const PGL2Elt g = iota(w, p);
    if (g.is_identity()) rep.scalar_failures.push_back(w);
    if (!pingpong_check(w, p).ok()) rep.pingpong_failures.push_back(w);
    const long d = g.max_degree();
    rep.max_entry_degree = std::max(rep.max_entry_degree, d);
    long& slot = rep.max_degree_by_y_count[w.y_count()];
    slot = std::max(slot, d);
  });
  return rep;
}

}  // namespace treechar
