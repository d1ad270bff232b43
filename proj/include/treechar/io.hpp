#pragma once

// JSON for certificates and reports. Every document carries "schema": 1; matrices are
// 2x2 arrays of canonical rational-function strings.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "treechar/hausdorff.hpp"
#include "treechar/residual.hpp"
#include "treechar/tree.hpp"

namespace treechar {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json matrix_to_json(const Mat2<RatF>& m) {
  return json::array({json::array({m.m11.to_string(), m.m12.to_string()}), json::array({m.m21.to_string(), m.m22.to_string()})});
}

inline Mat2<RatF> matrix_from_json(std::int64_t p, const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() || j[1].size() != 2)
    throw std::invalid_argument("matrix must be a 2x2 array");
  auto e = [&](int r, int c) { return RatF::parse(p, j[r][c].get<std::string>()); };
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

inline CertificateStatus certificate_status_from_string(const std::string& s) {
  if (s == "certified") return CertificateStatus::certified;
  if (s == "trivial") return CertificateStatus::trivial;
  if (s == "inconclusive") return CertificateStatus::inconclusive;
  throw std::invalid_argument("unknown certificate status: " + s);
}

inline json to_json(const ResidualCertificate& c) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "residual-certificate";
  j["word"] = c.word.to_string();
  j["status"] = to_string(c.status);
  j["n"] = c.n;
  j["N"] = c.bound;
  j["p"] = c.p;
  j["image"] = c.image.to_string();
  j["witness"] = c.witness ? matrix_to_json(c.witness->mat()) : json(nullptr);
  j["witness_scalar"] = c.witness_scalar;
  j["p_power_order"] = c.witness_p_power_order;
  return j;
}

inline ResidualCertificate certificate_from_json(const json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schema version");
  ResidualCertificate c;
  c.word = DeltaWord::parse(j.at("word").get<std::string>());
  c.status = certificate_status_from_string(j.at("status").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.bound = j.at("N").get<std::size_t>();
  c.p = j.at("p").get<std::int64_t>();
  const std::string img = j.at("image").get<std::string>();
  c.image = img == "1" ? XiWord{} : parse_xi(img);
  if (!j.at("witness").is_null()) c.witness = PGL2Elt(matrix_from_json(c.p, j.at("witness")));
  c.witness_scalar = j.at("witness_scalar").get<bool>();
  c.witness_p_power_order = j.at("p_power_order").get<bool>();
  return c;
}

template <class F>
std::string point_string(const ProjPt<F>& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline json to_json(const PingPongResult& r) {
  json trail = json::array();
  for (const auto& s : r.trail)
    trail.push_back({{"block", XiWord{{s.block}}.to_string()},
                     {"before", point_string(s.before)},
                     {"after", point_string(s.after)},
                     {"reduced_after", point_string(s.reduced_after)},
                     {"certified", s.certified}});
  return {{"word", r.word.to_string()},       {"image", point_string(r.image)},
          {"reduced_image", point_string(r.reduced_image)}, {"moves_one", r.moves_one},
          {"membership_applies", r.membership_applies},   {"in_target_set", r.in_target_set},
          {"trail_certified", r.trail_certified},         {"ok", r.ok()},
          {"trail", trail}};
}

inline json to_json(const InjectivityReport& r) {
  json by_y = json::object();
  for (const auto& [k, d] : r.max_degree_by_y_count) by_y[std::to_string(k)] = d;
  auto words = [](const std::vector<XiWord>& ws) {
    json a = json::array();
    for (const auto& w : ws) a.push_back(w.to_string());
    return a;
  };
  return {{"max_len", r.max_len},
          {"words_checked", r.words_checked},
          {"scalar_failures", words(r.scalar_failures)},
          {"pingpong_failures", words(r.pingpong_failures)},
          {"max_entry_degree", r.max_entry_degree},
          {"max_degree_by_y_count", by_y},
          {"ok", r.ok()}};
}

inline json places_to_json(const std::vector<Place>& places) {
  json a = json::array();
  for (const auto& pl : places) a.push_back(pl.to_string());
  return a;
}

inline json to_json(const DiscretenessReport& r, const std::vector<std::string>& names, const std::vector<std::int64_t>& orders) {
  json fails = json::array();
  for (const auto& f : r.failures) fails.push_back({{"word", f.word.to_string(names, orders)}, {"trivial_element", f.trivial_element}});
  json base = json::array();
  for (const auto& v : r.base_points) base.push_back(v.to_string());
  return {{"places", places_to_json(r.places)},
          {"base_points", base},
          {"max_len", r.max_len},
          {"words_checked", r.words_checked},
          {"failures", fails},
          {"ok", r.ok()}};
}

/// {"p": 5, "generators": [[["0", "1"], ["-1", "-1"]], ...], "names": ["x", "y"]}; names optional.
struct GeneratorFile {
  std::int64_t p = 0;
  std::vector<PGL2Elt> gens;
  std::vector<std::string> names;
};

inline GeneratorFile generators_from_json(const json& j, std::int64_t p_override = 0) {
  GeneratorFile g;
  g.p = p_override ? p_override : j.at("p").get<std::int64_t>();
  if (j.contains("p") && p_override && j.at("p").get<std::int64_t>() != p_override)
    throw std::invalid_argument("generator file is over a different prime");
  for (const auto& m : j.at("generators")) g.gens.emplace_back(matrix_from_json(g.p, m));
  if (j.contains("names")) g.names = j.at("names").get<std::vector<std::string>>();
  for (std::size_t i = g.names.size(); i < g.gens.size(); ++i) g.names.push_back("g" + std::to_string(i + 1));
  if (g.names.size() != g.gens.size()) throw std::invalid_argument("names and generators differ in length");
  return g;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace treechar
