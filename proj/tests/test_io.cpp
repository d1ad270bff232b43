#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "treechar/io.hpp"
#include "treechar/pipeline.hpp"

using namespace treechar;

namespace {

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

json without_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("certificates survive a JSON round trip") {
  std::size_t n = 0;
  for (std::size_t len = 1; len <= 5; ++len)
    for_each_delta_normal_form(len, [&](const DeltaWord& w) {
      for (std::int64_t p : {5, 7}) {
        const auto cert = faithfulness_certificate(w, p);
        const json j = to_json(cert);
        REQUIRE(certificate_from_json(j) == cert);
        REQUIRE(certificate_from_json(json::parse(j.dump())) == cert);
        REQUIRE(j.at("schema") == 1);
      }
      ++n;
    });
  CHECK(n > 50);
  const auto trivial = faithfulness_certificate(DeltaWord::parse("a b c d"), 5);
  CHECK(certificate_from_json(to_json(trivial)) == trivial);
  CHECK(to_json(trivial).at("witness").is_null());
}

TEST_CASE("certificate files round trip") {
  const auto cert = faithfulness_certificate(DeltaWord::parse("a b a' b"), 5);
  const std::string path = temp_path("treechar-test-cert.json");
  write_json_file(path, to_json(cert));
  CHECK(certificate_from_json(read_json_file(path)) == cert);
  std::remove(path.c_str());
  CHECK_THROWS(read_json_file(temp_path("treechar-no-such-file.json")));
}

TEST_CASE("malformed certificates are rejected") {
  json j = to_json(faithfulness_certificate(DeltaWord::parse("b"), 5));
  json bad_schema = j;
  bad_schema["schema"] = 2;
  CHECK_THROWS_AS(certificate_from_json(bad_schema), std::invalid_argument);
  json bad_status = j;
  bad_status["status"] = "maybe";
  CHECK_THROWS_AS(certificate_from_json(bad_status), std::invalid_argument);
  json missing = j;
  missing.erase("n");
  CHECK_THROWS(certificate_from_json(missing));
}

TEST_CASE("matrices serialize as canonical rational function strings") {
  const Mat2<RatF> y = iota_y_matrix(5);
  const json j = matrix_to_json(y);
  CHECK(j.dump() == R"([["0/1","1/1"],["1*t/1","0/1"]])");
  CHECK(matrix_from_json(5, j) == y);
}

TEST_CASE("generator files") {
  const json j = json::parse(R"({"p":5,"names":["x","y"],"generators":[[["0","1"],["-1","-1"]],[["0","1"],["t","0"]]]})");
  const GeneratorFile g = generators_from_json(j);
  CHECK(g.p == 5);
  REQUIRE(g.gens.size() == 2);
  CHECK(g.gens[0] == PGL2Elt(iota_x_matrix(5)));
  CHECK(g.gens[1] == PGL2Elt(iota_y_matrix(5)));
  CHECK(generators_from_json(j, 5).p == 5);
  CHECK_THROWS_AS(generators_from_json(j, 7), std::invalid_argument);
  json unnamed = j;
  unnamed.erase("names");
  CHECK(generators_from_json(unnamed).names == std::vector<std::string>{"g1", "g2"});
}

TEST_CASE("configuration validation") {
  PipelineConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  for (std::int64_t bad : {2, 3, 4, 9, -5}) {
    cfg.p = bad;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
  cfg.p = 7;
  cfg.max_len = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.max_len = 4;
  cfg.jobs = 0;
  CHECK_THROWS_AS(run_pipeline(cfg), ConfigError);
}

TEST_CASE("pipeline passes at p = 5 and p = 7") {
  for (std::int64_t p : {5, 7}) {
    PipelineConfig cfg;
    cfg.p = p;
    cfg.output = temp_path("treechar-test-summary-" + std::to_string(p) + ".json");
    std::vector<std::string> seen;
    const auto out = run_pipeline(cfg, [&](const StageResult& s) { seen.push_back(s.name); });
    CHECK(seen == std::vector<std::string>{"trace", "surface", "residual", "hausdorff", "trees"});
    for (const auto& s : out.stages) CHECK(s.ok);
    CHECK(out.ok());
    const json written = read_json_file(cfg.output);
    CHECK(written.at("ok") == true);
    CHECK(written.at("config").at("p") == p);
    CHECK(written.at("stages").size() == 5);
    std::remove(cfg.output.c_str());
  }
}

TEST_CASE("pipeline output is deterministic apart from the timestamp") {
  PipelineConfig cfg;
  cfg.max_len = 5;
  cfg.xi_len = 8;
  cfg.trace_len = 5;
  cfg.reps = 8;
  cfg.surface_samples = 50;
  cfg.output = "";
  const json a = without_timestamp(run_pipeline(cfg).summary(cfg));
  const json b = without_timestamp(run_pipeline(cfg).summary(cfg));
  CHECK(a.dump() == b.dump());
  cfg.jobs = 3;
  const json c = without_timestamp(run_pipeline(cfg).summary(cfg));
  CHECK(a.dump() == c.dump());
  cfg.seed = 2;
  const json d = without_timestamp(run_pipeline(cfg).summary(cfg));
  CHECK(d.at("ok") == true);
}
