#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#ifndef CLIFFSPO_BIN
#error "CLIFFSPO_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLIFFSPO_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("classify: documented examples and exit codes") {
  RunResult r = run_cli("classify --group spo2i1 -p 1 -q 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "Sp(2,R)\n");

  r = run_cli("classify --group spo23 -p 2 -q 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "O(2)\n");

  CHECK(run_cli("classify --group spo23 -p 0 -q 1").exit_code == 2);
  CHECK(run_cli("classify --group nope -p 1 -q 1").exit_code == 1);
  CHECK(run_cli("classify --group spo23 -p 1").exit_code == 1);  // missing -q
  CHECK(run_cli("classify --group spo23 -p 9 -q 9").exit_code == 1);  // over the desk limit
}

TEST_CASE("classify: json and csv formats") {
  RunResult r = run_cli("classify --group spo2i1 -p 1 -q 3 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["family"] == "Sp");
  CHECK(j["m"] == 2);
  CHECK(j["multiplicity"] == 1);
  CHECK(j["lie_dim"] == 10);

  r = run_cli("classify --group spo2i1 -p 1 -q 3 --format csv");
  CHECK(r.out == "group,p,q,family,m,multiplicity,lie_dim\nspo2i1,1,3,Sp,2,1,10\n");
}

TEST_CASE("table: row inventory and determinism") {
  RunResult a = run_cli("table --max-n 4 --format csv");
  CHECK(a.exit_code == 0);
  CHECK(a.out.find("spo2i1,1,3,Sp,2,1,10") != std::string::npos);

  RunResult b = run_cli("table --max-n 4 --format csv");
  CHECK(a.out == b.out);  // byte-identical across runs

  RunResult small = run_cli("table --max-n 1 --format csv");
  // only n = 1 cells: (1,0) and (0,1) where in scope
  CHECK(small.out.find("spo23,1,1") == std::string::npos);
  CHECK(small.out.find("spo12,1,1") == std::string::npos);
  CHECK(small.out.find("spo23,1,0,O,1,2,0") != std::string::npos);
  CHECK(small.out.find("spo12,1,0,GL,1,1,1") != std::string::npos);
  CHECK(small.out.find("spo23,0,1") == std::string::npos);  // out of scope

  RunResult j = run_cli("table --max-n 2 --format json");
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["rows"].is_array());
  for (const auto& row : doc["rows"]) {
    CHECK(row.contains("family"));
    CHECK(row.contains("lie_dim"));
  }
  CHECK(run_cli("table --max-n 40").exit_code == 1);  // beyond the desk limit
}

TEST_CASE("verify: pass, determinism, flag validation") {
  RunResult r = run_cli("verify --group spo2i1 -p 1 -q 3 --samples 100 --seed 42 --tol 1e-9");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("verify PASS") != std::string::npos);

  RunResult again =
      run_cli("verify --group spo2i1 -p 1 -q 3 --samples 100 --seed 42 --tol 1e-9");
  CHECK(r.out == again.out);

  RunResult exact = run_cli("verify --group spo23 -p 1 -q 1 --samples 20 --seed 3");
  CHECK(exact.exit_code == 0);
  CHECK(exact.out.find("check dimension_law residual 0 pass") != std::string::npos);

  // all in-scope groups of a signature at once
  RunResult multi = run_cli("verify -p 1 -q 1 --samples 10 --seed 5");
  CHECK(multi.exit_code == 0);
  CHECK(multi.out.find("cell spo23") != std::string::npos);
  CHECK(multi.out.find("cell spo12") != std::string::npos);
  CHECK(multi.out.find("cell spo2") != std::string::npos);

  CHECK(run_cli("verify --group spo23 -p 1 -q 1 --samples 0").exit_code == 1);
  CHECK(run_cli("verify --group spo23 -p 1 -q 1 --tol 0").exit_code == 1);
  CHECK(run_cli("verify --group spo23 -p 0 -q 1").exit_code == 2);
  CHECK(run_cli("verify -p 0 -q 4").exit_code == 2);  // no group in scope

  RunResult csv = run_cli("verify --group spo23 -p 2 -q 1 --samples 10 --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("group,p,q,check,residual,pass") != std::string::npos);
  CHECK(csv.out.find("spo23,2,1,gl_invertibility") != std::string::npos);
}

TEST_CASE("rep-dump: documented matrices and scope diagnostics") {
  RunResult r = run_cli("rep-dump -p 1 -q 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "1 1 2 1\n"
        "gamma 1\n0 1\n1 0\n"
        "gamma 2\n0 -1\n1 0\n");

  RunResult r20 = run_cli("rep-dump -p 2 -q 0");
  CHECK(r20.out ==
        "2 0 2 1\n"
        "gamma 1\n0 1\n1 0\n"
        "gamma 2\n-1 0\n0 1\n");

  CHECK(run_cli("rep-dump -p 0 -q 1").exit_code == 2);

  // normalizing the p side turns gamma^1 into the split diagonal form
  RunResult norm = run_cli("rep-dump -p 1 -q 1 --normalize p");
  CHECK(norm.exit_code == 0);
  CHECK(norm.out ==
        "1 1 2 1\n"
        "gamma 1\n1 0\n0 -1\n"
        "gamma 2\n0 1\n-1 0\n");
}

TEST_CASE("desk limit override via environment") {
  std::string cmd = std::string("CLIFFORD_MAX_N=4 ") + CLIFFSPO_BIN +
                    " classify --group spo23 -p 3 -q 2 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
