#pragma once

// The end-to-end run: trace suite, surface suite, residual certificates for kernel words,
// ping-pong injectivity, and the tree discreteness suite. One JSON summary.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "treechar/delta_word.hpp"
#include "treechar/hausdorff.hpp"
#include "treechar/io.hpp"
#include "treechar/residual.hpp"
#include "treechar/surface.hpp"
#include "treechar/trace.hpp"
#include "treechar/tree.hpp"

namespace treechar {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PipelineConfig {
  std::int64_t p = 5;
  std::size_t max_len = 8;     // Delta words and tree words
  std::size_t trace_len = 6;   // cyclically reduced words in the trace suite
  std::size_t xi_len = 12;     // Xi normal forms in the injectivity suite
  std::size_t reps = 20;       // representations per trace run
  std::size_t surface_samples = 200;
  std::size_t max_n = 64;
  std::uint64_t seed = 1;
  std::size_t place_degree = 2;
  unsigned jobs = 1;
  std::string output = "treechar-summary.json";

  void validate() const {
    if (p < 5 || !is_prime(p)) throw ConfigError("p must be a prime >= 5");
    if (max_len == 0 || trace_len == 0 || xi_len == 0 || reps == 0 || surface_samples == 0 || max_n == 0 || place_degree == 0 || jobs == 0)
      throw ConfigError("all bounds must be positive");
  }

  json to_json() const {
    return {{"p", p},         {"max_len", max_len}, {"trace_len", trace_len},       {"xi_len", xi_len},
            {"reps", reps},   {"surface_samples", surface_samples},                {"max_n", max_n},
            {"seed", seed},   {"place_degree", place_degree},                      {"output", output}};
  }
};

struct StageResult {
  std::string name;
  bool ok = false;
  json details;
};

/// fn(i) for i in [0, n) on up to `jobs` threads; results in index order.
template <class R>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, const std::function<R(std::size_t)>& fn) {
  std::vector<R> out(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) out[i] = fn(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

/// The empty word and every cyclically reduced pair-free word of length 1..max_len.
inline std::vector<TildeWord> cyclically_reduced_words(std::size_t max_len) {
  std::vector<TildeWord> out{TildeWord{}};
  for (std::size_t len = 1; len <= max_len; ++len)
    for_each_pair_free_word(len, [&](const TildeWord& w) {
      if (is_cyclically_reduced(w)) out.push_back(w);
    });
  return out;
}

/// Number of (word, rep) pairs where the matrix trace and the trace polynomial disagree.
template <class F>
std::size_t trace_mismatches(const std::vector<TildeWord>& words, const std::vector<IntPoly3>& polys, const std::vector<RepTriple<F>>& reps) {
  std::size_t bad = 0;
  for (const auto& rho : reps) {
    rho.validate();
    const F u = rho.u(), v = rho.v(), w = rho.w();
    for (std::size_t i = 0; i < words.size(); ++i)
      if (word_matrix(words[i], rho).trace() != polys[i].eval(u, v, w)) ++bad;
  }
  return bad;
}

template <class Field, class Rng>
std::vector<RepTriple<typename Field::Element>> sample_reps(const Field& k, std::size_t count, Rng& rng) {
  std::vector<RepTriple<typename Field::Element>> out;
  while (out.size() < count) {
    auto rho = random_admissible_rep(k, rng);
    if (!rho) throw std::runtime_error("no admissible representation found");
    out.push_back(*rho);
  }
  return out;
}

inline StageResult trace_stage(const PipelineConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto words = cyclically_reduced_words(cfg.trace_len);
  TraceEngine engine;
  std::vector<IntPoly3> polys;
  for (const auto& w : words) polys.push_back(engine(w));
  const Fp2Field k{PrimeField(cfg.p)};
  const auto reps = sample_reps(k, cfg.reps, rng);
  const std::size_t bad = trace_mismatches(words, polys, reps);
  return {"trace", bad == 0, {{"words", words.size()}, {"representations", reps.size()}, {"field_order", k.order()}, {"mismatches", bad}}};
}

inline StageResult surface_stage(const PipelineConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  const Fp2Field k{PrimeField(cfg.p)};
  std::size_t off_surface = 0;
  for (const auto& rho : sample_reps(k, cfg.surface_samples, rng)) {
    try {
      phi(rho);
    } catch (const std::logic_error&) {
      ++off_surface;
    }
  }
  const PrimeField base(cfg.p);
  const auto pts = enumerate_points(base);
  std::size_t recheck = 0;
  for (const auto& pt : pts) recheck += surface_eval(pt.u, pt.v, pt.w).is_zero() ? 0 : 1;
  const bool identity_ok = specialized_sl2_identity() == surface_poly();
  return {"surface",
          off_surface == 0 && recheck == 0 && identity_ok,
          {{"samples", cfg.surface_samples},
           {"off_surface", off_surface},
           {"points_over_prime_field", pts.size()},
           {"specialized_identity_matches", identity_ok}}};
}

inline StageResult residual_stage(const PipelineConfig& cfg) {
  std::vector<DeltaWord> words;
  for (std::size_t len = 1; len <= cfg.max_len; ++len)
    for_each_delta_normal_form(len, [&](const DeltaWord& w) {
      if (kernel_member(w)) words.push_back(w);
    });
  const auto certs = parallel_map<ResidualCertificate>(words.size(), cfg.jobs, [&](std::size_t i) {
    return faithfulness_certificate(words[i], cfg.p, cfg.max_n);
  });
  json failures = json::array();
  std::size_t worst_gap = 0;
  for (const auto& c : certs) {
    if (!c.ok() || c.n > c.bound + 1) {
      if (failures.size() < 20) failures.push_back(to_json(c));
      continue;
    }
    worst_gap = std::max(worst_gap, c.n - c.bound);
  }
  const bool ok = failures.empty();
  json details{{"kernel_words", words.size()}, {"max_n_minus_N", worst_gap}, {"failures", failures}};
  if (!certs.empty()) details["example"] = to_json(certs.front());
  return {"residual", ok, details};
}

inline StageResult hausdorff_stage(const PipelineConfig& cfg) {
  const InjectivityReport rep = injectivity_suite(cfg.xi_len, cfg.p);
  // x permutes {0, -1, inf} cyclically; y sends every finite point of P^1(F_p) to inf
  const Mat2<Fp> x{Fp(cfg.p, 0), Fp(cfg.p, 1), Fp(cfg.p, -1), Fp(cfg.p, -1)};
  const ProjPt<Fp> inf = ProjPt<Fp>::infinity(Fp(cfg.p, 1));
  const ProjPt<Fp> zero = ProjPt<Fp>::finite(Fp(cfg.p, 0)), minus_one = ProjPt<Fp>::finite(Fp(cfg.p, -1));
  const bool cycle = mobius_act(x, inf) == zero && mobius_act(x, zero) == minus_one && mobius_act(x, minus_one) == inf;
  bool y_ok = true;
  const Mat2<RatF> y = iota_y_matrix(cfg.p);
  for (std::int64_t u = 1; u < cfg.p; ++u)
    y_ok = y_ok && reduce_to_fp(mobius_act(y, ProjPt<RatF>::finite(RatF::constant(cfg.p, u)))).is_infinity();
  json details = to_json(rep);
  details["x_three_cycle"] = cycle;
  details["y_sends_finite_to_inf"] = y_ok;
  return {"hausdorff", rep.ok() && cycle && y_ok, details};
}

/// Finite places of degree <= d plus infinity.
inline std::vector<Place> small_places(std::int64_t p, std::size_t d) {
  std::vector<Place> out;
  for (std::size_t k = 1; k <= d; ++k)
    for (const auto& pi : monic_irreducibles(p, k)) out.push_back(Place::finite(pi));
  out.push_back(Place::infinity(p));
  return out;
}

inline StageResult tree_stage(const PipelineConfig& cfg) {
  const std::vector<PGL2Elt> gens{PGL2Elt(iota_x_matrix(cfg.p)), PGL2Elt(iota_y_matrix(cfg.p))};
  const std::vector<std::string> names{"x", "y"};
  const auto orders = generator_orders(gens);
  const auto S = bad_places(gens);

  std::size_t unsound = 0;
  for (const auto& pl : small_places(cfg.p, cfg.place_degree)) {
    if (std::find(S.begin(), S.end(), pl) != S.end()) continue;
    for (const auto& g : gens) unsound += base_displacement(g, pl) != 0;
  }

  // The standard vertex is fixed by iota(x) in every tree, so its stabilizer is reported;
  // it must consist of torsion elements only.
  const DiscretenessReport standard = discreteness_check(gens, S, cfg.max_len);
  std::size_t infinite_order_fixers = 0;
  for (const auto& f : standard.failures) {
    PGL2Elt g = PGL2Elt::identity(cfg.p);
    for (const auto& [i, e] : f.word.syllables)
      for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) g = g * (e < 0 ? gens[i].inverse() : gens[i]);
    infinite_order_fixers += projective_order(g) == 0;
  }

  const auto free_pt = free_base_point(gens, S, cfg.max_len, 2);
  json details{{"bad_places", places_to_json(S)},
               {"bad_place_soundness_failures", unsound},
               {"standard_vertex", to_json(standard, names, orders)},
               {"standard_stabilizer_infinite_order", infinite_order_fixers}};
  bool ok = unsound == 0 && infinite_order_fixers == 0 && free_pt.has_value();
  if (free_pt) details["free_base_point"] = to_json(discreteness_check(gens, S, cfg.max_len, *free_pt), names, orders);

  const Place t0 = Place::finite(FpPoly::t(cfg.p));
  const auto witnesses = elliptic_witness_search(gens, t0, std::min<std::size_t>(cfg.max_len, 6));
  json wl = json::array();
  for (std::size_t i = 0; i < witnesses.size() && i < 10; ++i) wl.push_back(witnesses[i].to_string(names, orders));
  details["single_tree_elliptic_witnesses"] = wl;
  details["single_tree_elliptic_count"] = witnesses.size();
  ok = ok && !witnesses.empty();
  return {"trees", ok, details};
}

struct PipelineOutcome {
  std::vector<StageResult> stages;
  bool ok() const {
    return std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.ok; });
  }
  json summary(const PipelineConfig& cfg) const {
    json st = json::array();
    for (const auto& s : stages) st.push_back({{"stage", s.name}, {"ok", s.ok}, {"details", s.details}});
    return {{"schema", kSchemaVersion},
            {"kind", "pipeline-summary"},
            {"config", cfg.to_json()},
            {"stages", st},
            {"ok", ok()},
            {"timestamp", static_cast<std::int64_t>(std::time(nullptr))}};
  }
};

/// Runs every stage in order, rewriting the summary after each one so a crash leaves the
/// finished stages on disk. An empty output path skips writing.
inline PipelineOutcome run_pipeline(const PipelineConfig& cfg, const std::function<void(const StageResult&)>& on_stage = {}) {
  cfg.validate();
  PipelineOutcome out;
  const std::vector<std::pair<std::string, std::function<StageResult(const PipelineConfig&)>>> stages{
      {"trace", trace_stage}, {"surface", surface_stage}, {"residual", residual_stage}, {"hausdorff", hausdorff_stage}, {"trees", tree_stage}};
  for (const auto& [name, stage] : stages) {
    StageResult r{name, false, {}};
    try {
      r = stage(cfg);
    } catch (const std::exception& e) {
      r.details = {{"error", e.what()}};
    }
    out.stages.push_back(r);
    if (on_stage) on_stage(out.stages.back());
    if (!cfg.output.empty()) write_json_file(cfg.output, out.summary(cfg));
  }
  return out;
}

}  // namespace treechar
