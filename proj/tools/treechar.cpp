// treechar: command line front end.
//   trace, surface, certify, pingpong, trees, pipeline, derive-r
// Exit codes: 0 pass, 1 failure, 2 bad configuration or input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treechar/io.hpp"
#include "treechar/pipeline.hpp"
#include "treechar/surface.hpp"
#include "treechar/trace.hpp"
#include "treechar/tree.hpp"

using namespace treechar;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

void require_prime(std::int64_t p) {
  if (p < 5 || !is_prime(p)) throw ConfigError("p must be a prime >= 5");
}

int cmd_trace(const std::string& word, std::int64_t p, const std::string& at) {
  const TildeWord w = TildeWord::parse(word);
  const IntPoly3 t = trace_poly(w);
  std::cout << "T(" << w.to_string() << ") = " << t.to_string() << "\n";
  if (!at.empty()) {
    require_prime(p);
    const auto vals = split(at, ',');
    if (vals.size() != 3) throw ConfigError("--at wants u,v,w");
    const Fp u(p, std::stoll(vals[0])), v(p, std::stoll(vals[1])), x(p, std::stoll(vals[2]));
    std::cout << "value at (" << u << ", " << v << ", " << x << ") over F_" << p << " = " << t.eval(u, v, x) << "\n";
  }
  return 0;
}

/// "a" or "a,b" meaning a + b*g, g the adjoined square root of the least non-square.
Fp2 parse_fp2(const Fp2Field& k, const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.empty() || parts.size() > 2) throw ConfigError("bad field element: " + s);
  const Fp a(k.characteristic(), std::stoll(parts[0]));
  const Fp b(k.characteristic(), parts.size() == 2 ? std::stoll(parts[1]) : 0);
  return k(a, b);
}

template <class Field>
void print_solution(const Field& k, const typename Field::Element& q, const typename Field::Element& s) {
  const auto sol = solve_for_r(k, q, s);
  std::cout << "a = " << sol.a << "\nb = " << sol.b << "\nc = " << sol.c << "\ndiscriminant = " << sol.discriminant << "\n";
  for (const auto& r : sol.roots) {
    const auto rho = make_rep(k, q, r, s);
    std::cout << "r = " << r << "  (tr ABC = " << (rho.A * rho.B * rho.C).trace() << ")\n";
  }
  for (const auto& r : sol.ext_roots) std::cout << "r = " << r << "  [quadratic extension]\n";
  if (sol.roots.empty() && sol.ext_roots.empty()) std::cout << "no nonzero root\n";
  for (const auto& w : sol.warnings) std::cout << "warning: " << w << "\n";
}

int cmd_surface(bool enumerate, bool solve, std::int64_t p, unsigned degree, const std::string& q, const std::string& s) {
  require_prime(p);
  if (enumerate == solve) throw ConfigError("give exactly one of --enumerate, --solve-r");
  const PrimeField base(p);
  if (enumerate) {
    std::cout << "u,v,w\n";
    if (degree == 1) {
      for (const auto& pt : enumerate_points(base)) std::cout << pt.u << ',' << pt.v << ',' << pt.w << "\n";
    } else {
      for (const auto& pt : enumerate_points(Fp2Field(base))) std::cout << pt.u << ',' << pt.v << ',' << pt.w << "\n";
    }
    return 0;
  }
  if (q.empty() || s.empty()) throw ConfigError("--solve-r needs --q and --s");
  if (degree == 1) {
    if (!imaginary_unit(base)) throw ConfigError("F_p has no square root of -1; use --degree 2");
    print_solution(base, Fp(p, std::stoll(q)), Fp(p, std::stoll(s)));
  } else {
    const Fp2Field k(base);
    print_solution(k, parse_fp2(k, q), parse_fp2(k, s));
  }
  return 0;
}

int cmd_certify(const std::string& word, std::int64_t p, std::size_t max_n, const std::string& out) {
  require_prime(p);
  const ResidualCertificate c = faithfulness_certificate(DeltaWord::parse(word), p, max_n);
  const json j = to_json(c);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out, j);
  return c.ok() ? 0 : 1;
}

int cmd_pingpong(std::size_t max_len, std::int64_t p, const std::string& word) {
  require_prime(p);
  if (!word.empty()) {
    std::cout << to_json(pingpong_check(parse_xi(word), p)).dump(2) << "\n";
    return pingpong_check(parse_xi(word), p).ok() ? 0 : 1;
  }
  std::printf("%-4s %-8s %-10s %-10s\n", "len", "words", "scalar", "pingpong");
  InjectivityReport total;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t words = 0, scalar = 0, pp = 0;
    for_each_xi_normal_form(len, [&](const XiWord& w) {
      if (w.size() != len) return;
      ++words;
      scalar += iota(w, p).is_identity();
      pp += !pingpong_check(w, p).ok();
    });
    std::printf("%-4zu %-8zu %-10s %-10s\n", len, words, scalar ? "FAIL" : "pass", pp ? "FAIL" : "pass");
  }
  total = injectivity_suite(max_len, p);
  std::cout << "words checked: " << total.words_checked << "\ndeepest entry degree: " << total.max_entry_degree << "\n"
            << (total.ok() ? "PASS" : "FAIL") << "\n";
  return total.ok() ? 0 : 1;
}

int cmd_trees(const std::string& gens_path, std::int64_t p, const std::string& places_opt, std::size_t max_len, bool ideal,
              const std::string& words, const std::string& u, const std::string& v, const std::string& w) {
  require_prime(p);
  if (ideal) {
    if (words.empty() || u.empty() || v.empty() || w.empty()) throw ConfigError("ideal-points mode needs --words, --u, --v, --w");
    std::vector<TildeWord> ws;
    for (const auto& s : split(words, ';')) ws.push_back(TildeWord::parse(s));
    const RatF ru = RatF::parse(p, u), rv = RatF::parse(p, v), rw = RatF::parse(p, w);
    json out = json::array();
    for (const auto& tp : trace_poles(ws, ru, rv, rw)) {
      json poles = json::array();
      for (const auto& [pl, k] : tp.poles) poles.push_back({{"place", pl.to_string()}, {"valuation", k}});
      out.push_back({{"word", tp.word.to_string()}, {"trace", tp.value.to_string()}, {"poles", poles}});
    }
    std::cout << json{{"schema", kSchemaVersion}, {"kind", "ideal-points"}, {"on_surface", surface_eval(ru, rv, rw).is_zero()}, {"traces", out}}.dump(2)
              << "\n";
    return 0;
  }
  if (gens_path.empty()) throw ConfigError("--gens is required");
  const GeneratorFile g = generators_from_json(read_json_file(gens_path), p);
  const auto orders = generator_orders(g.gens);
  std::vector<Place> S;
  if (places_opt == "auto") {
    S = bad_places(g.gens);
  } else {
    for (const auto& s : split(places_opt, ',')) S.push_back(Place::parse(p, s));
  }
  json lengths = json::array();
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    json per = json::object();
    for (const auto& pl : S) per[pl.to_string()] = translation_length(g.gens[i], pl);
    lengths.push_back({{"generator", g.names[i]}, {"order", orders[i]}, {"translation_length", per}});
  }
  const DiscretenessReport standard = discreteness_check(g.gens, S, max_len);
  json report{{"schema", kSchemaVersion},
              {"kind", "tree-report"},
              {"p", p},
              {"places", places_to_json(S)},
              {"generators", lengths},
              {"discreteness_standard_vertex", to_json(standard, g.names, orders)}};
  bool ok = standard.ok();
  if (!standard.ok() && !S.empty()) {
    if (auto pt = free_base_point(g.gens, S, max_len, 2)) {
      report["discreteness_free_base_point"] = to_json(discreteness_check(g.gens, S, max_len, *pt), g.names, orders);
      ok = true;
    }
  }
  std::cout << report.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_derive_r(const std::string& out) {
  const std::string src = abc_trace_header_source();
  if (out.empty()) {
    std::cout << src;
    return 0;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << src;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with trace polynomials, residual certificates and tree actions over F_p(t)"};
  app.require_subcommand(1);

  std::int64_t p = 5;
  std::string word, at;
  auto* trace = app.add_subcommand("trace", "trace polynomial of a word in A, A', B, C (optional Z* prefix)");
  trace->add_option("--word,-w", word, "word, e.g. \"A B A' C\"")->required();
  trace->add_option("-p", p, "prime for --at");
  trace->add_option("--at", at, "evaluate at u,v,w (integers mod p)");

  bool enumerate = false, solve = false;
  unsigned degree = 1;
  std::string qs, ss;
  auto* surface = app.add_subcommand("surface", "points of the cubic surface; solving tr ABC = 1 for r");
  surface->add_flag("--enumerate", enumerate, "CSV of all points over F_p (or F_p^2 with --degree 2)");
  surface->add_flag("--solve-r", solve, "solve for r given q and s");
  surface->add_option("-p", p, "prime");
  surface->add_option("--degree", degree, "1 for F_p, 2 for F_p^2")->check(CLI::IsMember({1u, 2u}));
  surface->add_option("--q", qs, "q as a or a,b (a + b g in F_p^2)");
  surface->add_option("--s", ss, "s, same format");

  std::size_t max_n = 64;
  std::string out;
  auto* certify = app.add_subcommand("certify", "faithfulness certificate for a word in a a' b c d d'");
  certify->add_option("--word,-w", word, "word")->required();
  certify->add_option("-p", p, "prime");
  certify->add_option("--max-n", max_n, "largest n tried");
  certify->add_option("--out,-o", out, "write the certificate here instead of stdout");

  std::size_t max_len = 12;
  auto* pingpong = app.add_subcommand("pingpong", "injectivity table for x -> [[0,1],[-1,-1]], y -> [[0,1],[t,0]]");
  pingpong->add_option("--max-len", max_len, "normal form length bound");
  pingpong->add_option("-p", p, "prime");
  pingpong->add_option("--word,-w", word, "trail of a single word in x x' y");

  std::string gens_path, places = "auto", words, uu, vv, ww;
  bool ideal = false;
  std::size_t tree_len = 10;
  auto* trees = app.add_subcommand("trees", "bad places, translation lengths and discreteness on a product of trees");
  trees->add_option("--gens", gens_path, "JSON generator file");
  trees->add_option("-p", p, "prime");
  trees->add_option("--places", places, "auto, or a comma list such as t,t+1,inf");
  trees->add_option("--max-len", tree_len, "word length bound");
  trees->add_flag("--ideal-points", ideal, "report poles of trace polynomials at a point of S over F_p(t)");
  trees->add_option("--words", words, "semicolon separated words in A, A', B, C");
  trees->add_option("--u", uu, "u as a rational function of t");
  trees->add_option("--v", vv, "v");
  trees->add_option("--w", ww, "w");

  PipelineConfig cfg;
  auto* pipeline = app.add_subcommand("pipeline", "every suite in order, with a JSON summary");
  pipeline->add_option("-p", cfg.p, "prime >= 5");
  pipeline->add_option("--max-len", cfg.max_len, "length bound for Delta words and tree words");
  pipeline->add_option("--trace-len", cfg.trace_len, "length bound for the trace suite");
  pipeline->add_option("--xi-len", cfg.xi_len, "length bound for the injectivity suite");
  pipeline->add_option("--reps", cfg.reps, "representations in the trace suite");
  pipeline->add_option("--max-n", cfg.max_n, "largest n in the certificate search");
  pipeline->add_option("--seed", cfg.seed, "RNG seed");
  pipeline->add_option("--place-degree", cfg.place_degree, "degree bound for places checked outside S");
  pipeline->add_option("--jobs,-j", cfg.jobs, "worker threads");
  pipeline->add_option("--out,-o", cfg.output, "summary path");

  std::string header_out;
  auto* derive = app.add_subcommand("derive-r", "expand tr ABC for the matrix family and emit the generated header");
  derive->add_option("--out,-o", header_out, "header path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*trace) return cmd_trace(word, p, at);
    if (*surface) return cmd_surface(enumerate, solve, p, degree, qs, ss);
    if (*certify) return cmd_certify(word, p, max_n, out);
    if (*pingpong) return cmd_pingpong(max_len, p, word);
    if (*trees) return cmd_trees(gens_path, p, places, tree_len, ideal, words, uu, vv, ww);
    if (*derive) return cmd_derive_r(header_out);
    if (*pipeline) {
      const PipelineOutcome o = run_pipeline(cfg, [](const StageResult& s) { std::cout << (s.ok ? "pass " : "FAIL ") << s.name << "\n"; });
      std::cout << "summary: " << cfg.output << "\n";
      return o.ok() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
