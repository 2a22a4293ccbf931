#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(GKM_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fixture(const std::string& name) { return std::string(GKM_FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_CASE("classify matches the published data") {
  auto r = run_cli("classify " + fixture("tolman.json"));
  CHECK(r.code == 0);
  CHECK(r.out == "[1,-1,-1] eta=1\n");
  auto f = run_cli("classify " + fixture("flag.json"));
  CHECK(f.out == "[1,-1,1] eta=1\n");
}

TEST_CASE("delta") {
  CHECK(run_cli("delta " + fixture("tolman.json")).out == "5\n");
  CHECK(run_cli("delta " + fixture("flag.json")).out == "-3\n");
  CHECK(run_cli("delta " + fixture("nonpm.json")).out == "13\n");  // (3-1-1)^2 + 4*3
}

TEST_CASE("exit codes") {
  SUBCASE("validate: clean fixture exits 0") {
    CHECK(run_cli("validate " + fixture("flag.json")).code == 0);
  }
  SUBCASE("validate: broken labels exit 2") {
    std::string path = "/tmp/gkm_cli_bad.json";
    std::ofstream(path) << R"({
  "format_version": "1",
  "mode": "signed",
  "vertices": [{"id": "a"}, {"id": "b"}, {"id": "c"}],
  "edge_pairs": [
    {"id": "e1", "src": "a", "dst": "b", "weight": [1, 0]},
    {"id": "e2", "src": "b", "dst": "c", "weight": [0, -1]},
    {"id": "e3", "src": "c", "dst": "a", "weight": [1, 1]}
  ]
})";
    CHECK(run_cli("validate " + path).code == 2);
  }
  SUBCASE("parse errors exit 4") {
    std::string path = "/tmp/gkm_cli_trunc.json";
    std::ofstream(path) << "{ \"format_version\": ";
    auto r = run_cli("validate " + path);
    CHECK(r.code == 4);
    CHECK(r.out.find("parse error at line") != std::string::npos);
  }
  SUBCASE("semantic errors exit 4") {
    std::string path = "/tmp/gkm_cli_zero.json";
    std::ofstream(path) << R"({
  "format_version": "1",
  "mode": "unsigned",
  "vertices": [{"id": "a"}, {"id": "b"}],
  "edge_pairs": [{"id": "e1", "src": "a", "dst": "b", "weight": [0, 0]},
                 {"id": "e2", "src": "b", "dst": "a", "weight": [0, 1]}]
})";
    CHECK(run_cli("validate " + path).code == 4);
  }
  SUBCASE("kaehler-check refuses an n=4 input with exit 3") {
    auto build = run_cli("build --base " + fixture("square.json") +
                         " --k 1,1,1,1 --eta 1 --out /tmp/gkm_cli_n4.json");
    REQUIRE(build.code == 0);
    auto r = run_cli("kaehler-check /tmp/gkm_cli_n4.json");
    CHECK(r.code == 3);
    CHECK(r.out.find("n = 4") != std::string::npos);
  }
  SUBCASE("wrong base for delta exits 3") {
    run_cli("build --base " + fixture("square.json") +
            " --k 1,1,1,1 --eta 0 --out /tmp/gkm_cli_sq.json");
    CHECK(run_cli("delta /tmp/gkm_cli_sq.json").code == 3);
  }
}

TEST_CASE("build round trips through classify") {
  auto build = run_cli("build --base " + fixture("cp2.json") +
                       " --k 2,-3,1 --eta 1 --out /tmp/gkm_cli_built.json");
  REQUIRE(build.code == 0);
  CHECK(run_cli("classify /tmp/gkm_cli_built.json").out == "[2,-3,1] eta=1\n");
  CHECK(run_cli("validate /tmp/gkm_cli_built.json").code == 0);
}

TEST_CASE("kaehler-check verdict on the twisted 6-vertex example") {
  auto r = run_cli("kaehler-check " + fixture("tolman.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("no invariant Kaehler structure possible") != std::string::npos);
}

TEST_CASE("signed-structures table") {
  auto r = run_cli("signed-structures " + fixture("tolman.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("2 signed structure(s)") != std::string::npos);
  CHECK(r.out.find("case I") != std::string::npos);
  CHECK(r.out.find("case III") != std::string::npos);
}

TEST_CASE("json outputs are stable across runs") {
  for (const std::string& cmd :
       {"classify --json " + fixture("tolman.json"), "kaehler-check --json " + fixture("tolman.json"),
        "cohomology --json " + fixture("flag.json"),
        "signed-structures --json " + fixture("tolman.json"),
        "enumerate --json --base " + fixture("cp2.json") + " --max-k 1"}) {
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cohomology output freezes the published values") {
  auto r = run_cli("cohomology " + fixture("flag.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("projectivization betti: 1 2 2 1") != std::string::npos);
  CHECK(r.out.find("delta (k formula): -3") != std::string::npos);
  CHECK(r.out.find("delta (cup form):  -3") != std::string::npos);
  CHECK(r.out.find("Euler characteristic: 6") != std::string::npos);
}

TEST_CASE("enumerate finds at least two distinct delta values") {
  auto r = run_cli("enumerate --base " + fixture("cp2.json") + " --max-k 2");
  CHECK(r.code == 0);
  std::set<std::string> deltas;
  size_t pos = 0;
  while ((pos = r.out.find("delta=", pos)) != std::string::npos) {
    size_t end = r.out.find(' ', pos);
    deltas.insert(r.out.substr(pos + 6, end - pos - 6));
    pos = end;
  }
  CHECK(deltas.size() >= 2);
}

TEST_CASE("render writes an svg") {
  auto r = run_cli("render " + fixture("flag.json") + " --out /tmp/gkm_cli_flag.svg");
  CHECK(r.code == 0);
  std::ifstream svg("/tmp/gkm_cli_flag.svg");
  std::string first;
  std::getline(svg, first);
  CHECK(first.find("<svg") != std::string::npos);
}
