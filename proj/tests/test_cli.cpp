// End-to-end checks of the installed binary: exit codes, file outputs, and
// determinism, driven through std::system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "csfm/enumerate.hpp"

using nlohmann::json;

namespace {

const std::string kCli = CSFM_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

int exit_code_of(int system_status) {
#ifdef WEXITSTATUS
  return WEXITSTATUS(system_status);
#else
  return system_status;
#endif
}

RunResult run(const std::string& args) {
  const std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                               "/csfm_cli_out.txt";
  const std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  return {exit_code_of(status), buf.str()};
}

std::string temp_path(const std::string& name) {
  return std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("gen is byte-identical per seed and verify accepts its output") {
  for (const std::string kind : {"cut+rings", "coverage+rings", "table+intersecting",
                                 "table+crossing", "cut+explicit"}) {
    const std::string a = temp_path("gen_a.json");
    const std::string b = temp_path("gen_b.json");
    CAPTURE(kind);
    CHECK(run("gen --kind " + kind + " --n 6 --k 2 --seed 5 --out " + a).exit_code == 0);
    CHECK(run("gen --kind " + kind + " --n 6 --k 2 --seed 5 --out " + b).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());

    const RunResult verify = run("verify --instance " + a);
    CAPTURE(verify.stdout_text);
    CHECK(verify.exit_code == 0);
  }
}

TEST_CASE("solve reports optimal with exit 0 and consistent engines") {
  const std::string path = temp_path("solve_me.json");
  REQUIRE(run("gen --kind cut+rings --n 7 --k 2 --seed 12 --out " + path).exit_code == 0);

  const std::string report_a = temp_path("report_a.json");
  const std::string report_b = temp_path("report_b.json");
  const RunResult wolfe = run("solve --instance " + path + " --engine wolfe --out " + report_a);
  const RunResult brute = run("solve --instance " + path + " --engine brute --out " + report_b);
  REQUIRE(wolfe.exit_code == 0);
  REQUIRE(brute.exit_code == 0);

  const json a = json::parse(slurp(report_a));
  const json b = json::parse(slurp(report_b));
  CHECK(a["status"] == "optimal");
  CHECK(a["value"] == b["value"]);
  CHECK(a["minimizer"] == b["minimizer"]);
  CHECK(a["candidates_examined"] == b["candidates_examined"]);
  CHECK(a["instance_digest"] == b["instance_digest"]);
  // Parallel scan, same answer.
  const RunResult par = run("solve --instance " + path + " --parallel 2 --out " + report_b);
  REQUIRE(par.exit_code == 0);
  const json c = json::parse(slurp(report_b));
  CHECK(c["value"] == a["value"]);
  CHECK(c["minimizer"] == a["minimizer"]);
}

TEST_CASE("triangle cut over the nonempty sets lands on the full vertex set") {
  const std::string path = temp_path("triangle.json");
  spit(path, R"({
    "schema_version": 1,
    "n": 3,
    "function": {"kind": "cut", "directed": false, "edges": [[0, 1, 1], [1, 2, 1], [0, 2, 1]]},
    "constraint": {"kind": "complement_of_rings",
                   "rings": [{"forced_in": [], "allowed": [], "implications": []}]},
    "k": 1,
    "value_bound": 3
  })");
  const RunResult r = run("solve --instance " + path);
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.stdout_text);
  CHECK(report["value"] == 0);
  CHECK(report["minimizer"] == json::array({0, 1, 2}));
  CHECK(run("verify --instance " + path).exit_code == 0);
}

TEST_CASE("infeasible instances exit 2") {
  const std::string path = temp_path("infeasible.json");
  spit(path, R"({
    "schema_version": 1,
    "n": 2,
    "function": {"kind": "cut", "directed": false, "edges": [[0, 1, 1]]},
    "constraint": {"kind": "complement_of_rings",
                   "rings": [{"forced_in": [], "allowed": [0, 1], "implications": []}]},
    "k": 1,
    "value_bound": 1
  })");
  const RunResult r = run("solve --instance " + path);
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.stdout_text)["status"] == "infeasible");
}

TEST_CASE("parse failures exit 3") {
  const std::string path = temp_path("garbage.json");
  spit(path, "this is not json");
  CHECK(run("solve --instance " + path).exit_code == 3);
  CHECK(run("solve --instance /nonexistent/nowhere.json").exit_code == 3);

  spit(path, R"({"schema_version": 1, "n": 65,
                 "function": {"kind": "table", "values": []},
                 "constraint": {"kind": "none"}, "k": 0})");
  CHECK(run("solve --instance " + path).exit_code == 3);
}

TEST_CASE("a planted structural lie exits 4") {
  const std::string path = temp_path("liar.json");
  spit(path, R"({
    "schema_version": 1,
    "n": 4,
    "function": {"kind": "cut", "directed": false, "edges": [[0, 1, 1], [2, 3, 1]]},
    "constraint": {"kind": "complement_of_intersecting", "members": [[0, 1], [1, 2]]},
    "k": 2,
    "value_bound": 2
  })");
  const RunResult r = run("verify --instance " + path);
  CAPTURE(r.stdout_text);
  CHECK(r.exit_code == 4);
}

TEST_CASE("verify rejects oversized ground sets with exit 3") {
  const std::string path = temp_path("wide.json");
  REQUIRE(run("gen --kind cut+rings --n 16 --k 1 --seed 1 --out " + path).exit_code == 0);
  CHECK(run("verify --instance " + path).exit_code == 3);
}

TEST_CASE("kth command") {
  const std::string path = temp_path("kth.json");
  REQUIRE(run("gen --kind cut+rings --n 6 --k 0 --seed 9 --out " + path).exit_code == 0);
  const RunResult r = run("kth --instance " + path + " --k 3");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.stdout_text);
  REQUIRE(doc["values"].size() == 3);
  CHECK(doc["values"][0].get<std::int64_t>() < doc["values"][1].get<std::int64_t>());
  CHECK(doc["values"][1].get<std::int64_t>() < doc["values"][2].get<std::int64_t>());

  // A constant function runs out of distinct values.
  const std::string flat = temp_path("flat.json");
  spit(flat, R"({
    "schema_version": 1,
    "n": 3,
    "function": {"kind": "table", "values": [7, 7, 7, 7, 7, 7, 7, 7]},
    "constraint": {"kind": "none"},
    "k": 0,
    "value_bound": 7
  })");
  CHECK(run("kth --instance " + flat + " --k 2").exit_code == 2);
}

TEST_CASE("bench emits one CSV row per run with the exact candidate counts") {
  const std::string csv_path = temp_path("bench.csv");
  const RunResult r = run("bench --kind cut+rings --n-min 5 --n-max 8 --k-min 1 --k-max 1 --seeds 2 --csv " +
                          csv_path);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(csv_path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "n,k,candidates,oracle_calls,wall_ms,status");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    std::stringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    const int n = std::stoi(field);
    std::getline(ss, field, ',');
    const int k = std::stoi(field);
    std::getline(ss, field, ',');
    CHECK(std::stoull(field) == csfm::st_pair_count(n, k));
  }
  CHECK(rows == 4 * 2);
}
