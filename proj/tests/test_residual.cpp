#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "treechar/residual.hpp"

using namespace treechar;

namespace {

DeltaWord D(const std::string& s) { return DeltaWord::parse(s); }

DeltaWord random_delta(std::mt19937_64& rng, std::size_t max_len) {
  DeltaWord w;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < n; ++i) w.symbols.push_back(static_cast<DSym>(rng() % 6));
  return w;
}

// reduced words in <c> * <d>
void for_each_cd_word(std::size_t len, const std::function<void(const DeltaWord&)>& fn) {
  DeltaWord w;
  std::function<void()> rec = [&] {
    if (w.size() == len) {
      fn(w);
      return;
    }
    for (DSym s : {DSym::c, DSym::d, DSym::dinv}) {
      if (!w.empty()) {
        const bool last_c = w.symbols.back() == DSym::c;
        if (last_c == (s == DSym::c)) continue;
      }
      w.symbols.push_back(s);
      rec();
      w.symbols.pop_back();
    }
  };
  rec();
}

bool begins_or_ends_badly(const DeltaWord& g) {
  auto at = [&](std::size_t i) { return g.symbols[i]; };
  const std::size_t n = g.size();
  if (n < 2) return false;
  auto bad = [](DSym a, DSym b) { return (a == DSym::c && b == DSym::d) || (a == DSym::dinv && b == DSym::c); };
  return bad(at(0), at(1)) || bad(at(n - 2), at(n - 1));
}

}  // namespace

TEST_CASE("psi on generators") {
  for (std::size_t n = 0; n < 6; ++n) {
    CHECK(psi(n, D("a")) == parse_xi("x"));
    CHECK(psi(n, D("b")) == parse_xi("y"));
  }
  CHECK(psi(0, D("c")) == parse_xi("y"));
  CHECK(psi(0, D("d")) == parse_xi("x'"));
  CHECK(psi(1, D("c")).to_string() == "x y x'");
}

TEST_CASE("psi of c is a conjugate of y of length 4n - 1") {
  // (xy)^n y (y x^-1)^n: one y y pair cancels, nothing else
  for (std::size_t n = 1; n <= 10; ++n) {
    const XiWord img = psi(n, D("c"));
    CHECK(img.size() == 4 * n - 1);
    CHECK_FALSE(img.is_identity());
  }
}

TEST_CASE("relators die under every psi_n") {
  for (std::size_t n = 0; n <= 5; ++n)
    for (const char* r : {"a a a", "b b", "c c", "d d d", "a b c d"}) CHECK(psi(n, D(r)).is_identity());
}

TEST_CASE("psi_n is a homomorphism") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const DeltaWord w1 = random_delta(rng, 8), w2 = random_delta(rng, 8);
    for (std::size_t n = 0; n <= 4; ++n) REQUIRE(psi(n, w1 * w2) == psi(n, w1) * psi(n, w2));
  }
}

TEST_CASE("certificate bound examples") {
  CHECK(certificate_bound(D("a")) == 1);
  CHECK(certificate_bound(D("c")) == 0);
  CHECK(certificate_bound(D("a b c d' c a")) == 3);
  CHECK_THROWS_AS(certificate_bound(D("a b c d")), std::invalid_argument);
  CHECK_THROWS_AS(certificate_bound(D("")), std::invalid_argument);
  for (std::size_t n = 4; n <= 8; ++n) CHECK_FALSE(psi(n, D("a b c d' c a")).is_identity());
  for (const char* w : {"a", "c", "a b c d' c a", "a b a' b", "c d c d"}) {
    const std::size_t N = certificate_bound(D(w));
    for (std::size_t n = N + 1; n <= N + 5; ++n) CHECK_FALSE(psi(n, D(w)).is_identity());
  }
}

TEST_CASE("cancellation at the junction with (xy)^n") {
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 6; ++len)
    for_each_cd_word(len, [&](const DeltaWord& g) {
      if (begins_or_ends_badly(g)) return;
      const auto bar = gamma_bar(g);
      for (std::size_t n = 1; n <= 8; ++n) {
        const auto left = xy_power(n), right = xy_power_inverse(n);
        REQUIRE(junction_cancellations(left, bar) <= 1);
        REQUIRE(junction_cancellations(bar, right) <= 1);
        // one pair and at most one x x merge
        std::vector<XSym> seq = left;
        seq.insert(seq.end(), bar.begin(), bar.end());
        REQUIRE(left.size() + xi_reduce(bar).size() - xi_reduce(seq).size() <= 3);
        ++checked;
      }
    });
  CHECK(checked > 100);
  // the excluded shapes do cancel twice
  CHECK(junction_cancellations(xy_power(3), gamma_bar(D("c d"))) == 2);
  CHECK(junction_cancellations(gamma_bar(D("d' c")), xy_power_inverse(3)) == 2);
}

TEST_CASE("certificate for b") {
  const auto cert = faithfulness_certificate(D("b"), 5);
  REQUIRE(cert.status == CertificateStatus::certified);
  CHECK(cert.ok());
  CHECK(cert.image == parse_xi("y"));
  CHECK(cert.n == cert.bound + 1);
  CHECK(cert.witness->mat() == PGL2Elt(iota_y_matrix(5)).mat());
  CHECK(cert.witness->mat().m11.is_zero());
  CHECK(cert.witness->mat().m21 == RatF::t(5));
  CHECK_FALSE(cert.witness_scalar);
  CHECK_FALSE(cert.witness_p_power_order);
}

TEST_CASE("certificates for a commutator and a relator") {
  const auto comm = faithfulness_certificate(D("a b a' b"), 7);
  CHECK(comm.ok());
  CHECK_FALSE(comm.image.is_identity());
  CHECK(comm.image == psi(comm.n, D("a b a' b")));

  const auto rel = faithfulness_certificate(D("a b c d"), 5);
  CHECK(rel.status == CertificateStatus::trivial);
  CHECK_FALSE(rel.ok());
  CHECK_FALSE(rel.witness.has_value());
}

TEST_CASE("certificates exhaustively for short words") {
  std::size_t certified = 0, trivial = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    DeltaWord w;
    std::function<void()> rec = [&] {
      if (w.size() == len) {
        const auto cert = faithfulness_certificate(w, 5, 16);
        if (cert.status == CertificateStatus::trivial) {
          ++trivial;
          // psi_n is a homomorphism, so trivial words must die everywhere
          for (std::size_t n = 0; n <= 6; ++n) REQUIRE(psi(n, w).is_identity());
        } else {
          ++certified;
          REQUIRE(cert.ok());
          REQUIRE(cert.n <= cert.bound + 1);
        }
        return;
      }
      for (int k = 0; k < 6; ++k) {
        const DSym s = static_cast<DSym>(k);
        if (!w.empty() && detail::family(w.symbols.back()) == detail::family(s)) continue;
        w.symbols.push_back(s);
        rec();
        w.symbols.pop_back();
      }
    };
    rec();
  }
  CHECK(certified > 1000);
  CHECK(trivial > 0);
}
