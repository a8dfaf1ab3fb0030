#include "doctest.h"

#include "conepave/instance.hpp"
#include "conepave/serialize.hpp"
#include "conepave/transport.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace conepave;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/conepave_cli_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("CONEPAVE_CLI");
  REQUIRE(bin != nullptr);
  std::string out_path = "/tmp/conepave_cli_stdout";
  std::string err_path = "/tmp/conepave_cli_stderr";
  std::string cmd =
      std::string(bin) + " " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

const char* kExample =
    R"({"labels":["-1","0","1","2"],"coords":[["-1"],["0"],["1"],["2"]],)"
    R"("cone":"martingale","mu":["0","1/2","0","1/2"],)"
    R"("nu":["1/4","0","1/4","1/2"]})";

}  // namespace

TEST_CASE("check-order emits a verifiable plan") {
  auto inst_path = write_temp("ex.json", kExample);
  auto r = run_cli("check-order " + inst_path);
  CHECK(r.exit_code == 0);
  Instance inst = load_instance(kExample);
  TransportPlan plan = parse_plan(inst, r.out);
  CHECK(verify_plan(inst, plan));
}

TEST_CASE("check-order reports a witness on an unordered instance") {
  // mean shift breaks every martingale coupling
  auto inst_path = write_temp(
      "shift.json",
      R"({"labels":["0","1"],"coords":[["0"],["1"]],"cone":"martingale",)"
      R"("mu":["1","0"],"nu":["0","1"]})");
  auto r = run_cli("check-order " + inst_path);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("gap") != std::string::npos);
}

TEST_CASE("malformed input exits 2") {
  auto bad = write_temp("bad.json", "{\"labels\": [");
  CHECK(run_cli("check-order " + bad).exit_code == 2);
  auto bad_rat = write_temp(
      "badrat.json",
      R"({"labels":["0"],"coords":[["0"]],"cone":"martingale",)"
      R"("mu":["one"],"nu":["1"]})");
  CHECK(run_cli("check-order " + bad_rat).exit_code == 2);
  CHECK(run_cli("check-order /tmp/conepave_cli_missing_file").exit_code == 2);
}

TEST_CASE("transport verifies an external plan") {
  auto inst_path = write_temp("ex.json", kExample);
  Instance inst = load_instance(kExample);
  TransportPlan good;
  good.pi.assign(4, RatVec(4, Rational(0)));
  good.pi[1][0] = Rational(1, 4);
  good.pi[1][2] = Rational(1, 4);
  good.pi[3][3] = Rational(1, 2);
  auto good_path = write_temp("plan.json", serialize_plan(inst, good));
  CHECK(run_cli("transport " + inst_path + " " + good_path).exit_code == 0);

  TransportPlan bad = good;
  bad.pi[1][0] = Rational(1, 8);
  bad.pi[1][2] = Rational(3, 8);
  auto bad_path = write_temp("plan_bad.json", serialize_plan(inst, bad));
  CHECK(run_cli("transport " + inst_path + " " + bad_path).exit_code == 1);

  // plan replayed against a different instance is an input error
  auto other = write_temp(
      "other.json",
      R"({"labels":["0","1"],"coords":[["0"],["1"]],"cone":"martingale",)"
      R"("mu":["1","0"],"nu":["1","0"]})");
  CHECK(run_cli("transport " + other + " " + good_path).exit_code == 2);
}

TEST_CASE("paving lists the two classes of the segment example") {
  auto inst_path = write_temp("ex.json", kExample);
  auto r = run_cli("paving " + inst_path + " --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sources {0} support {-1, 1}") != std::string::npos);
  CHECK(r.out.find("sources {2} support {2}") != std::string::npos);

  auto rj = run_cli("paving " + inst_path);
  CHECK(rj.exit_code == 0);
  CHECK(rj.out.find("\"components\"") != std::string::npos);
  CHECK(rj.out.find("plot_points") == std::string::npos);
}

TEST_CASE("paving --emit-plot warns outside 2-D but still emits") {
  auto inst_path = write_temp("ex.json", kExample);
  auto r = run_cli("paving " + inst_path + " --emit-plot");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.out.find("\"components\"") != std::string::npos);
}

TEST_CASE("paving on an unordered instance exits 1") {
  auto inst_path = write_temp(
      "shift.json",
      R"({"labels":["0","1"],"coords":[["0"],["1"]],"cone":"martingale",)"
      R"("mu":["1","0"],"nu":["0","1"]})");
  CHECK(run_cli("paving " + inst_path).exit_code == 1);
}

TEST_CASE("polar verdicts on the segment example") {
  auto inst_path = write_temp("ex.json", kExample);
  auto empty = write_temp("u_empty.json", R"({"pairs":[]})");
  auto r0 = run_cli("polar " + inst_path + " " + empty);
  CHECK(r0.exit_code == 0);
  CHECK(r0.out.find("\"max_mass\":\"0\"") != std::string::npos);

  auto u_polar = write_temp("u_polar.json", R"({"pairs":[["2","1"]]})");
  CHECK(run_cli("polar " + inst_path + " " + u_polar).exit_code == 0);

  auto u_charged = write_temp("u_charged.json", R"({"pairs":[["0","1"]]})");
  auto r1 = run_cli("polar " + inst_path + " " + u_charged);
  CHECK(r1.exit_code == 1);
  CHECK(r1.out.find("\"max_mass\":\"1/4\"") != std::string::npos);

  auto u_bad = write_temp("u_bad.json", R"({"pairs":[["7","1"]]})");
  CHECK(run_cli("polar " + inst_path + " " + u_bad).exit_code == 2);
}

TEST_CASE("polar --unconstrained drops the generator rows") {
  auto inst_path = write_temp("ex.json", kExample);
  auto u = write_temp("u_polar.json", R"({"pairs":[["2","1"]]})");
  auto r = run_cli("polar " + inst_path + " " + u + " --unconstrained");
  CHECK(r.exit_code == 1);  // reachable once the cone constraints go
  CHECK(r.out.find("\"max_mass\":\"1/4\"") != std::string::npos);
}

TEST_CASE("gleason groups interior points of the segment") {
  auto inst_path = write_temp("ex.json", kExample);
  auto r = run_cli("gleason " + inst_path + " --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("{0, 1}") != std::string::npos);
}

TEST_CASE("gen is deterministic and loadable") {
  auto r1 = run_cli("gen --seed 11 --n 2 --splits 2 --cone submartingale");
  auto r2 = run_cli("gen --seed 11 --n 2 --splits 2 --cone submartingale");
  CHECK(r1.exit_code == 0);
  CHECK(r1.out == r2.out);
  Instance inst = load_instance(r1.out);
  CHECK(inst.cone == ConeKind::Submartingale);
  auto inst_path = write_temp("gen.json", r1.out);
  CHECK(run_cli("check-order " + inst_path).exit_code == 0);
  CHECK(run_cli("gen --seed 11 --n 2 --splits 2 --unordered").exit_code == 0);
}

TEST_CASE("verify runs the property suite") {
  auto r = run_cli("verify --seed 42 --count 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  auto r0 = run_cli("verify --seed 42 --count 0");
  CHECK(r0.exit_code == 0);
}

TEST_CASE("--out writes the payload to a file") {
  auto inst_path = write_temp("ex.json", kExample);
  std::string out_path = "/tmp/conepave_cli_payload.json";
  std::remove(out_path.c_str());
  auto r = run_cli("check-order " + inst_path + " --out " + out_path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  Instance inst = load_instance(kExample);
  TransportPlan plan = parse_plan(inst, slurp(out_path));
  CHECK(verify_plan(inst, plan));
}
