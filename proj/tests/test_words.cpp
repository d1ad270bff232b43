#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "treechar/delta_word.hpp"
#include "treechar/residual.hpp"
#include "treechar/surface.hpp"
#include "treechar/tilde_word.hpp"
#include "treechar/trace.hpp"
#include "treechar/xi_word.hpp"

using namespace treechar;

namespace {

TildeWord T(const std::string& s) { return TildeWord::parse(s); }
DeltaWord D(const std::string& s) { return DeltaWord::parse(s); }

TildeWord random_tilde(std::mt19937_64& rng, std::size_t max_len) {
  TildeWord w;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < n; ++i) w.symbols.push_back(static_cast<TSym>(rng() % 4));
  w.zsign = rng() % 2;
  return w;
}

DeltaWord random_delta(std::mt19937_64& rng, std::size_t max_len) {
  DeltaWord w;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < n; ++i) w.symbols.push_back(static_cast<DSym>(rng() % 6));
  return w;
}

std::vector<XSym> random_xi(std::mt19937_64& rng, std::size_t max_len) {
  std::vector<XSym> w;
  const std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < n; ++i) w.push_back(static_cast<XSym>(rng() % 3));
  return w;
}

std::vector<RepTriple<Fp2>> sample(std::size_t n, std::uint64_t seed) {
  const Fp2Field k{PrimeField(5)};
  std::mt19937_64 rng(seed);
  std::vector<RepTriple<Fp2>> out;
  while (out.size() < n) out.push_back(*random_admissible_rep(k, rng));
  return out;
}

bool same_element(const TildeWord& x, const TildeWord& y, const std::vector<RepTriple<Fp2>>& reps) {
  for (const auto& rho : reps)
    if (word_matrix(x, rho) != word_matrix(y, rho)) return false;
  return true;
}

// Delta elements agree when their lifts agree up to the central sign.
bool same_delta_element(const DeltaWord& x, const DeltaWord& y, const std::vector<RepTriple<Fp2>>& reps) {
  for (const auto& rho : reps) {
    const auto mx = word_matrix(lift(x), rho), my = word_matrix(lift(y), rho);
    if (mx != my && mx != -my) return false;
  }
  return true;
}

// permutations of {1,2,3} as maps, composed right to left
using Perm = std::array<int, 4>;
Perm compose(const Perm& f, const Perm& g) {
  Perm h{};
  for (int i = 1; i <= 3; ++i) h[i] = f[g[i]];
  return h;
}
Perm oracle_image(const DeltaWord& w) {
  const Perm id{0, 1, 2, 3}, cyc{0, 2, 3, 1}, t12{0, 2, 1, 3}, t23{0, 1, 3, 2};
  Perm acc = id;
  for (DSym s : w.symbols) {
    Perm g = id;
    switch (s) {
      case DSym::a:
      case DSym::d:
        g = cyc;
        break;
      case DSym::ainv:
      case DSym::dinv:
        g = compose(cyc, cyc);
        break;
      case DSym::b:
        g = t12;
        break;
      case DSym::c:
        g = t23;
        break;
    }
    acc = compose(acc, g);
  }
  return acc;
}

}  // namespace

TEST_CASE("free cancellation and squares") {
  TildeWord w = reduce_tilde(T("A A'"));
  CHECK(w.empty());
  CHECK_FALSE(w.zsign);
  w = reduce_tilde(T("B B"));
  CHECK(w.empty());
  CHECK(w.zsign);
}

TEST_CASE("rule one") {
  const TildeWord w = reduce_tilde(T("C A B C"));
  CHECK(w == T("B A' C B A'"));
  CHECK(is_reduced(w));
}

TEST_CASE("reduction keeps the element") {
  const auto reps = sample(20, 1);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const TildeWord w = random_tilde(rng, 12);
    const TildeWord r = reduce_tilde(w);
    REQUIRE(is_reduced(r));
    REQUIRE(r.size() <= w.size() + 1);
    REQUIRE(same_element(w, r, reps));
  }
}

TEST_CASE("cyclic reduction") {
  const auto reps = sample(20, 3);
  TildeWord w = cyclic_reduce(T("B A B"));
  CHECK(w == T("Z*A"));
  CHECK(cyclic_reduce(T("A B C")) == T("A B C"));
  CHECK(cyclic_reduce(TildeWord{}).empty());

  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const TildeWord x = random_tilde(rng, 10);
    const TildeWord c = cyclic_reduce(x);
    REQUIRE(is_cyclically_reduced(c));
    for (const auto& rho : reps) REQUIRE(word_matrix(x, rho).trace() == word_matrix(c, rho).trace());
  }
}

TEST_CASE("inversion tracks the central sign") {
  CHECK(invert_tilde(T("A B")) == T("Z*B A'"));
  CHECK(invert_tilde(T("A")) == T("A'"));
  CHECK(invert_tilde(T("B C")) == T("C B"));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const TildeWord w = reduce_tilde(random_tilde(rng, 10));
    const TildeWord prod = reduce_tilde(concat(w, invert_tilde(w)));
    REQUIRE(prod.empty());
    REQUIRE_FALSE(prod.zsign);
  }
}

TEST_CASE("D lifts to C B A' and its inverse to A B C") {
  CHECK(T("D") == T("C B A'"));
  CHECK(T("D'") == T("A B C"));
  CHECK(reduce_tilde(concat(T("A B C"), T("D"))).empty());
  CHECK(lift(D("d")) == T("D"));
}

TEST_CASE("delta normal form examples") {
  DeltaNormalForm nf = delta_normal_form(D("a b"));
  CHECK(nf.k() == 0);
  CHECK(nf.alphas[0] == D("a b"));

  nf = delta_normal_form(D("c"));
  REQUIRE(nf.k() == 1);
  CHECK(nf.alphas[0].empty());
  CHECK(nf.gammas[0] == D("c"));
  CHECK(nf.alphas[1].empty());

  // c d' c ends with d' c, which moves into the next alpha as a b
  nf = delta_normal_form(D("a b c d' c a"));
  REQUIRE(nf.k() == 1);
  CHECK(nf.alphas[0] == D("a b"));
  CHECK(nf.gammas[0] == D("c"));
  CHECK(nf.alphas[1] == D("a b a"));
  CHECK(satisfies_normal_form_constraints(nf));
}

TEST_CASE("normal forms recompose to the same element") {
  const auto reps = sample(6, 6);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 3000; ++i) {
    const DeltaWord w = random_delta(rng, 12);
    const DeltaNormalForm nf = delta_normal_form(w);
    REQUIRE(satisfies_normal_form_constraints(nf));
    const DeltaWord r = nf.recompose();
    REQUIRE(s3_image(r) == s3_image(w));
    for (std::size_t n : {0, 1, 2}) REQUIRE(psi(n, r) == psi(n, w));
    REQUIRE(same_delta_element(r, w, reps));
    REQUIRE(delta_normal_form(r) == nf);
  }
}

TEST_CASE("relators and their conjugates are trivial") {
  for (const char* r : {"a a a", "b b", "c c", "d d d", "a b c d", "b c d a", "d' c' b' a'"}) CHECK(is_trivial_in_delta(D(r)));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 500; ++i) {
    const DeltaWord g = random_delta(rng, 6);
    REQUIRE(is_trivial_in_delta(g * D("a b c d") * inverse(g)));
    REQUIRE(equal_in_delta(g * D("c d"), g * D("b a'")));
  }
  CHECK_FALSE(is_trivial_in_delta(D("a b c")));
  CHECK_FALSE(is_trivial_in_delta(D("c d c d")));
}

TEST_CASE("triviality agrees with representations and psi") {
  const auto reps = sample(6, 9);
  std::mt19937_64 rng(10);
  const TildeWord empty;
  for (int i = 0; i < 3000; ++i) {
    const DeltaWord w = random_delta(rng, 10);
    const bool trivial = is_trivial_in_delta(w);
    if (trivial) {
      for (std::size_t n = 0; n < 6; ++n) REQUIRE(psi(n, w).is_identity());
      REQUIRE(same_delta_element(w, DeltaWord{}, reps));
    } else {
      bool some_psi = false;
      for (std::size_t n = 0; n < 16 && !some_psi; ++n) some_psi = !psi(n, w).is_identity();
      REQUIRE(some_psi);
    }
  }
}

TEST_CASE("S3 images") {
  CHECK(s3_image(D("a b c d")).is_identity());
  for (const char* r : {"a a a", "b b", "c c", "d d d"}) CHECK(s3_image(D(r)).is_identity());
  CHECK(s3_image(D("a")).to_string() == "(123)");
  CHECK(s3_image(D("b")).to_string() == "(12)");
  CHECK(s3_image(D("c")).to_string() == "(23)");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const DeltaWord w = random_delta(rng, 10);
    const Perm o = oracle_image(w);
    const Perm3 got = s3_image(w);
    for (int x = 1; x <= 3; ++x) REQUIRE(got.img[static_cast<std::size_t>(x - 1)] + 1 == o[static_cast<std::size_t>(x)]);
    REQUIRE(kernel_member(w) == (o == Perm{0, 1, 2, 3}));
  }
  const DeltaWord comm = D("a b a' b");
  const Perm o = oracle_image(comm);
  CHECK(kernel_member(comm) == (o == Perm{0, 1, 2, 3}));
  CHECK(s3_image(comm).to_string() == "(132)");
}

TEST_CASE("six cosets and kernel generators") {
  const CosetTable t = enumerate_cosets();
  CHECK(t.size() == 6);
  std::set<std::string> distinct;
  for (const auto& c : t.cosets) distinct.insert(c.to_string());
  CHECK(distinct.size() == 6);

  const auto gens = schreier_generators();
  REQUIRE_FALSE(gens.empty());
  for (const auto& g : gens) {
    CHECK(kernel_member(g));
    CHECK_FALSE(is_trivial_in_delta(g));
  }

  // every kernel word of length <= 6 is a product of the generators and their inverses
  auto in_gens = [&](const DeltaWord& f) {
    for (const auto& g : gens)
      if (equal_in_delta(f, g) || equal_in_delta(f, inverse(g))) return true;
    return false;
  };
  std::size_t checked = 0;
  for (std::size_t len = 1; len <= 6; ++len)
    for_each_delta_normal_form(len, [&](const DeltaWord& w) {
      if (!kernel_member(w)) return;
      ++checked;
      const auto factors = rewrite_in_schreier_generators(t, w);
      DeltaWord prod;
      for (const auto& f : factors) {
        REQUIRE(in_gens(f));
        prod = prod * f;
      }
      REQUIRE(equal_in_delta(prod, w));
    });
  CHECK(checked > 100);
}

TEST_CASE("Euler characteristic of the kernel") {
  const auto chi_delta = orbifold_euler_characteristic({3, 2, 2, 3});
  CHECK(chi_delta == boost::rational<std::int64_t>(-1, 3));
  CHECK(chi_delta * 6 == boost::rational<std::int64_t>(-2));
  using Q = boost::rational<std::int64_t>;
  // index 6 times (2 - 4 + 1/3 + 1/2 + 1/2 + 1/3), summed by hand
  Q sum(-2);
  for (const Q& q : {Q(1, 3), Q(1, 2), Q(1, 2), Q(1, 3)}) sum += q;
  CHECK(Q(6) * sum == Q(-2));
}

TEST_CASE("Xi normal forms") {
  CHECK(xi_reduce({XSym::x, XSym::x}) == XiWord{{XSym::xinv}});
  CHECK(xi_reduce({XSym::y, XSym::y}).is_identity());
  CHECK(xi_reduce({XSym::x, XSym::y, XSym::y, XSym::x}) == XiWord{{XSym::xinv}});
  CHECK(parse_xi("x x x").is_identity());
  CHECK(parse_xi("x' y x").to_string() == "x' y x");
}

TEST_CASE("Xi product laws") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const XiWord a = xi_reduce(random_xi(rng, 8)), b = xi_reduce(random_xi(rng, 8)), c = xi_reduce(random_xi(rng, 8));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE((a * inverse(a)).is_identity());
    REQUIRE(xi_reduce(a.blocks) == a);
    for (std::size_t k = 1; k < a.size(); ++k) REQUIRE((a.blocks[k] == XSym::y) != (a.blocks[k - 1] == XSym::y));
  }
}

TEST_CASE("Xi normal form enumeration counts") {
  // 3 words of length 1; afterwards x-blocks have 2 choices, y-blocks 1
  std::vector<std::size_t> count(7, 0);
  for_each_xi_normal_form(6, [&](const XiWord& w) { ++count[w.size()]; });
  CHECK(count[0] == 0);
  CHECK(count[1] == 3);
  CHECK(count[2] == 4);
  CHECK(count[3] == 6);
  CHECK(count[4] == 8);
  CHECK(count[6] == 16);
}
