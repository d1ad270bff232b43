#pragma once

// The family psi_n: Delta -> Xi and faithfulness certificates built from it.
//   a -> x, b -> y, c -> (xy)^n y (xy)^-n, d -> (xy)^n x^-1 (xy)^-n.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treechar/delta_word.hpp"
#include "treechar/hausdorff.hpp"
#include "treechar/trace.hpp"
#include "treechar/xi_word.hpp"

namespace treechar {

/// (xy)^n, as a block sequence (n >= 0).
inline std::vector<XSym> xy_power(std::size_t n) {
  std::vector<XSym> out;
  for (std::size_t k = 0; k < n; ++k) out.insert(out.end(), {XSym::x, XSym::y});
  return out;
}

/// (xy)^-n = (y x^-1)^n.
inline std::vector<XSym> xy_power_inverse(std::size_t n) {
  std::vector<XSym> out;
  for (std::size_t k = 0; k < n; ++k) out.insert(out.end(), {XSym::y, XSym::xinv});
  return out;
}

inline XiWord psi(std::size_t n, const DeltaWord& w) {
  std::vector<XSym> seq;
  const auto pre = xy_power(n), post = xy_power_inverse(n);
  auto conj = [&](XSym s) {
    seq.insert(seq.end(), pre.begin(), pre.end());
    seq.push_back(s);
    seq.insert(seq.end(), post.begin(), post.end());
  };
  for (DSym s : w.symbols) {
    switch (s) {
      case DSym::a:
        seq.push_back(XSym::x);
        break;
      case DSym::ainv:
        seq.push_back(XSym::xinv);
        break;
      case DSym::b:
        seq.push_back(XSym::y);
        break;
      case DSym::c:
        conj(XSym::y);
        break;
      case DSym::d:
        conj(XSym::xinv);
        break;
      case DSym::dinv:
        conj(XSym::x);
        break;
    }
  }
  return xi_reduce(seq);
}

/// The block word obtained from gamma by c -> y, d -> x^-1, d^-1 -> x.
inline std::vector<XSym> gamma_bar(const DeltaWord& gamma) {
  std::vector<XSym> out;
  for (DSym s : gamma.symbols) {
    switch (s) {
      case DSym::c:
        out.push_back(XSym::y);
        break;
      case DSym::d:
        out.push_back(XSym::xinv);
        break;
      case DSym::dinv:
        out.push_back(XSym::x);
        break;
      default:
        throw std::invalid_argument("gamma_bar: symbol outside <c, d>");
    }
  }
  return out;
}

/// Number of annihilating pairs (y y, or x against x^-1) when reducing left * right.
/// Both sides are assumed reduced; x x -> x^-1 merges are not counted.
inline std::size_t junction_cancellations(const std::vector<XSym>& left, const std::vector<XSym>& right) {
  std::vector<XSym> stack = left;
  std::size_t count = 0;
  for (XSym s : right) {
    if (stack.empty()) {
      stack.push_back(s);
      continue;
    }
    const XSym top = stack.back();
    if (s == XSym::y && top == XSym::y) {
      stack.pop_back();
      ++count;
    } else if ((s == XSym::x && top == XSym::xinv) || (s == XSym::xinv && top == XSym::x)) {
      stack.pop_back();
      ++count;
    } else if (s != XSym::y && top != XSym::y) {
      stack.back() = s == XSym::x ? XSym::xinv : XSym::x;
    } else {
      stack.push_back(s);
    }
  }
  return count;
}

/// Largest alpha block of the normal form. Throws std::invalid_argument for the identity.
inline std::size_t certificate_bound(const DeltaWord& w) {
  const DeltaNormalForm nf = delta_normal_form(w);
  if (nf.is_identity()) throw std::invalid_argument("certificate_bound: word is trivial in Delta");
  return nf.max_alpha_length();
}

enum class CertificateStatus { certified, trivial, inconclusive };

inline std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::certified:
      return "certified";
    case CertificateStatus::trivial:
      return "trivial";
    default:
      return "inconclusive";
  }
}

struct ResidualCertificate {
  DeltaWord word;
  CertificateStatus status = CertificateStatus::inconclusive;
  std::size_t n = 0;
  std::size_t bound = 0;  // N
  XiWord image;
  std::optional<PGL2Elt> witness;  // iota(image)
  bool witness_scalar = true;
  bool witness_p_power_order = true;
  std::int64_t p = 0;

  bool ok() const { return status == CertificateStatus::certified && !witness_scalar && !witness_p_power_order; }
  friend bool operator==(const ResidualCertificate&, const ResidualCertificate&) = default;
};

/// Search n = N+1, ..., max_n for psi_n(w) != 1 and attach iota(psi_n(w)) over F_p(t).
/// A word with empty normal form is reported trivial; running out of n is inconclusive.
inline ResidualCertificate faithfulness_certificate(const DeltaWord& w, std::int64_t p, std::size_t max_n = 64) {
  ResidualCertificate cert;
  cert.word = w;
  cert.p = p;
  const DeltaNormalForm nf = delta_normal_form(w);
  if (nf.is_identity()) {
    cert.status = CertificateStatus::trivial;
    return cert;
  }
  cert.bound = nf.max_alpha_length();
  for (std::size_t n = cert.bound + 1; n <= max_n; ++n) {
    XiWord img = psi(n, w);
    if (img.is_identity()) continue;
    cert.status = CertificateStatus::certified;
    cert.n = n;
    cert.image = img;
    cert.witness = iota(img, p);
    cert.witness_scalar = cert.witness->is_identity();
    cert.witness_p_power_order = is_p_power_order(cert.witness->mat());
    return cert;
  }
  return cert;
}

}  // namespace treechar
