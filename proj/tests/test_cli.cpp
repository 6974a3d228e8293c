#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "lawkit/config.hpp"
#include "lawkit/report.hpp"

using namespace lawkit;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

/// Run the CLI binary, capturing stdout+stderr.
RunResult run_cli(const std::string& args) {
  const std::string out_path =
      std::string(LAWKIT_BINARY_DIR) + "/cli_out.tmp";
  const std::string cmd =
      std::string(LAWKIT_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(out_path.c_str());
  return RunResult{WEXITSTATUS(status), buf.str()};
}

std::string config_path(const std::string& name) {
  return std::string(LAWKIT_SOURCE_DIR) + "/configs/" + name;
}

}  // namespace

TEST_CASE("minimal one-node config parses") {
  SystemConfig cfg = parse_config(
      R"({"nodes": [{"label": "a", "blocks": [2]}]})");
  CHECK(cfg.system->node_count() == 1);
  CHECK(cfg.system->algebra(0).block_sizes == std::vector<int>{2});
  CHECK(cfg.system->validate().ok());
}

TEST_CASE("unknown fields and bad references give located diagnostics") {
  CHECK_THROWS_WITH(parse_config(R"({"nodes": [], "bogus": 1})"),
                    Catch::Matchers::ContainsSubstring("unknown field 'bogus'"));
  CHECK_THROWS_WITH(
      parse_config(
          R"({"nodes": [{"label": "a", "blocks": [2]}],
              "maps": [{"target": "a", "source": "zz", "kept_blocks": [0]}]})"),
      Catch::Matchers::ContainsSubstring("unknown node 'zz'"));
  CHECK_THROWS_WITH(
      parse_config(R"({"nodes": [{"label": "a", "blocks": [0]}]})"),
      Catch::Matchers::ContainsSubstring("nodes[0].blocks"));
  CHECK_THROWS_AS(parse_config("{not json"), config_error);
}

TEST_CASE("declared non-unitary matrices are rejected at parse time") {
  const std::string text = R"({
    "nodes": [{"label": "a", "blocks": [1]}, {"label": "b", "blocks": [1]}],
    "order": [["a", "b"]],
    "maps": [{"target": "a", "source": "b", "kept_blocks": [0],
              "unitaries": [[[2,0]]]}]})";
  CHECK_THROWS_WITH(parse_config(text),
                    Catch::Matchers::ContainsSubstring("not unitary"));
}

TEST_CASE("incoherent explicit elements are rejected with the element named") {
  const std::string text = R"({
    "nodes": [{"label": "a", "blocks": [1]}, {"label": "b", "blocks": [1]}],
    "order": [["a", "b"]],
    "maps": [{"target": "a", "source": "b", "kept_blocks": [0]}],
    "elements": {"x": {"coordinates": [[[[1,0]]], [[[2,0]]]]}}})";
  CHECK_THROWS_WITH(parse_config(text),
                    Catch::Matchers::ContainsSubstring("elements.x"));
}

TEST_CASE("canonical dump round-trips to a semantically equal config") {
  for (std::uint64_t seed : {1u, 5u, 23u, 99u}) {
    SystemPtr sys = random_system(seed);
    Rng rng(seed + 7);
    std::map<std::string, Thread> elements;
    elements.emplace("x", random_hermitian_thread(sys, rng));
    const std::string text = dump_config(sys, elements, seed);
    SystemConfig cfg = parse_config(text);
    CAPTURE(seed);
    REQUIRE(cfg.system->node_count() == sys->node_count());
    CHECK(cfg.system->validate().ok());
    for (int a = 0; a < sys->node_count(); ++a) {
      CHECK(cfg.system->algebra(a).block_sizes == sys->algebra(a).block_sizes);
      CHECK(op_norm(cfg.elements.at("x").coordinate(a) -
                    elements.at("x").coordinate(a)) < 1e-12);
    }
    // dump of the reparsed config is byte-identical (canonical form)
    CHECK(testing::bit_identical(text,
                                 dump_config(cfg.system, cfg.elements, seed)));
  }
}

TEST_CASE("random configs always validate across seeds") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    SystemPtr sys = random_system(seed);
    SystemConfig cfg = parse_config(dump_config(sys, {}, seed));
    CAPTURE(seed);
    CHECK(cfg.system->validate().ok());
  }
}

TEST_CASE("report JSON is deterministic with 17-digit floats") {
  Report r;
  r.command = "demo";
  r.config_digest = "0123456789abcdef";
  r.add({"check.one", "a property", true, "", {{"residual", 1.0 / 3.0}}});
  r.add({"check.two", "another", false, "node a1", {}});
  const std::string a = r.to_json();
  CHECK(testing::bit_identical(a, r.to_json()));
  CHECK(a.find("0.33333333333333331") != std::string::npos);
  CHECK(a.find("\"exit_status\": 1") != std::string::npos);
  CHECK(r.exit_status() == 1);
}

TEST_CASE("config digest is stable and content-sensitive") {
  SystemConfig a = parse_config(R"({"nodes": [{"label": "a", "blocks": [2]}]})");
  SystemConfig b = parse_config(R"({"nodes": [{"label": "a", "blocks": [3]}]})");
  CHECK(config_digest(a.canonical) == config_digest(a.canonical));
  CHECK(config_digest(a.canonical) != config_digest(b.canonical));
  CHECK(config_digest(a.canonical).size() == 16);
}

TEST_CASE("cli: validate the shipped three-node example") {
  RunResult r = run_cli("validate --config " + config_path("three_node.json"));
  CAPTURE(r.out);
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli: spectral bound on the diag(0,1) example") {
  RunResult r = run_cli("spectral x --mesh 0.25 --format json --config " +
                        config_path("diag01.json"));
  CAPTURE(r.out);
  CHECK(r.exit_code == 0);
  const std::size_t at = r.out.find("\"error\": ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 9)) <= 0.25);
}

TEST_CASE("cli: boundedness verdicts on the diagonal chain") {
  RunResult ok = run_cli("bounded h --horizon 20 --config " +
                         config_path("diag_chain.json"));
  CAPTURE(ok.out);
  CHECK(ok.exit_code == 0);
  RunResult bad = run_cli("bounded lin --horizon 20 --config " +
                          config_path("diag_chain.json"));
  CAPTURE(bad.out);
  CHECK(bad.exit_code == 1);  // exceeds the declared bound: failing record
}

TEST_CASE("cli: usage and config errors exit with 2") {
  CHECK(run_cli("validate").exit_code == 2);                    // no config
  CHECK(run_cli("frobnicate").exit_code != 0);                  // unknown command
  CHECK(run_cli("verify w-star --config " + config_path("three_node.json"))
            .exit_code == 2);
  RunResult missing = run_cli("masa nope --config " + config_path("diag01.json"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("no element 'nope'") != std::string::npos);
}

TEST_CASE("cli: machine-readable reports are byte-identical across runs") {
  const std::string cmd = "verify theorem1 --format json --seed 5 --config " +
                          config_path("three_node.json");
  RunResult first = run_cli(cmd);
  RunResult second = run_cli(cmd);
  CHECK(first.exit_code == 0);
  CHECK(testing::bit_identical(first.out, second.out));

  const std::string gen = "gen-random --seed 11";
  CHECK(testing::bit_identical(run_cli(gen).out, run_cli(gen).out));
}

TEST_CASE("cli: gen-random output passes validate") {
  for (int seed : {1, 2, 17}) {
    const std::string path =
        std::string(LAWKIT_BINARY_DIR) + "/gen" + std::to_string(seed) + ".json";
    RunResult gen = run_cli("gen-random --seed " + std::to_string(seed) + " > " +
                            path + " 2>/dev/null; cat " + path);
    RunResult val = run_cli("validate --config " + path);
    CAPTURE(seed, val.out);
    CHECK(val.exit_code == 0);
    std::remove(path.c_str());
  }
}

TEST_CASE("cli: subsystem commands pass on the shipped example") {
  const std::string cfg = " --config " + config_path("three_node.json");
  CHECK(run_cli("center" + cfg).exit_code == 0);
  CHECK(run_cli("masa x" + cfg).exit_code == 0);
  CHECK(run_cli("corner p" + cfg).exit_code == 0);
  CHECK(run_cli("annihilate x" + cfg).exit_code == 0);
  CHECK(run_cli("lemma1 x 0.5" + cfg).exit_code == 0);
  CHECK(run_cli("ideal-annihilator p" + cfg).exit_code == 0);
  CHECK(run_cli("verify lattice --samples 10" + cfg).exit_code == 0);
}
