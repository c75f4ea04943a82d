#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glide/cli.hpp"
#include "glide/document.hpp"
#include "glide/service.hpp"

using namespace glide;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = GLIDE_TEST_DATA_DIR;
const std::string kGolden = GLIDE_GOLDEN_DIR;

json normalized(json doc) {
  doc["meta"]["runtime_s"] = 0.0;
  return doc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("solve-grr writes the document") {
  const auto path = std::filesystem::temp_directory_path() / "glide_cli_u.json";
  const Run r = cli({"solve-grr", "--preset", "grrp-flat-uniform-wind", "--out", path.string()});
  CHECK(r.code == 0);
  REQUIRE(std::filesystem::exists(path));
  const ResultDocument doc = parse_document(slurp(path));
  std::filesystem::remove(path);
  CHECK(doc.meta.variant == "oum");
  CHECK(doc.field.size() == 101u * 101u);
}

TEST_CASE("solve-grr variants and stdout") {
  const Run fmm = cli({"solve-grr", "--scenario", kData + "/small_grrp.json", "--variant", "fmm"});
  REQUIRE(fmm.code == 0);
  CHECK(parse_document(fmm.out).meta.variant == "fmm");
  const Run oum = cli({"solve-grr", "--scenario", kData + "/small_grrp.json", "--variant", "oum"});
  REQUIRE(oum.code == 0);
  CHECK(parse_document(oum.out).meta.variant == "oum");
  CHECK(cli({"solve-grr", "--preset", "grrp-flat-uniform-wind", "--variant", "fmm"}).code == 2);
}

TEST_CASE("solve-mra with wind is unsupported") {
  const Run r = cli({"solve-mra", "--scenario", kData + "/wind_scenario.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unsupported_configuration") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"solve-grr", "--bogus"}).code == 2);
  CHECK(cli({"solve-grr"}).code == 2);
  CHECK(cli({"solve-grr", "--preset", "a", "--scenario", "b"}).code == 2);
  CHECK(cli({"solve-grr", "--preset", "no-such-preset"}).code == 2);
  CHECK(cli({"solve-mra", "--preset", "grrp-windless-flat"}).code == 2);
  CHECK(cli({"solve-grr", "--scenario", "/nonexistent.json"}).code == 2);
  CHECK(cli({"trace", "--preset", "staircase"}).code == 2);
  CHECK(cli({"trace", "--preset", "staircase", "--target", "1;2"}).code == 2);
  CHECK(cli({"benchmark", "--suite", "no-such-suite"}).code == 2);
  CHECK(cli({"serve", "--port", "0"}).code == 2);
  const Run help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve-grr") != std::string::npos);
}

TEST_CASE("trace outside the reachable region exits 1") {
  const Run r = cli({"trace", "--scenario", kData + "/small_grrp.json", "--target", "160,238"});
  CHECK(r.code == 1);
  CHECK(r.err.find("infeasible") != std::string::npos);
}

TEST_CASE("trace staircase matches the golden document") {
  const Run r = cli({"trace", "--preset", "staircase", "--target", "70,8"});
  REQUIRE(r.code == 0);
  const json got = normalized(json::parse(r.out));
  REQUIRE(got["trajectories"].size() == 1);
  CHECK(got["trajectories"][0]["kind"] == "mrap-feasible");
  CHECK(got["trajectories"][0]["termination"] == "reached-origin");
  const auto golden_path = std::filesystem::path(kGolden) / "trace_staircase_70_8.json";
  if (!std::filesystem::exists(golden_path)) {
    std::ofstream(golden_path) << got.dump() << '\n';
    FAIL("golden file was missing and has been written; review and rerun");
  }
  const json golden = json::parse(slurp(golden_path));
  CHECK(got["trajectories"] == golden["trajectories"]);
  CHECK(got["field"] == golden["field"]);
  CHECK(got == golden);
}

TEST_CASE("contours from a preset, a result file and explicit levels") {
  const Run a = cli({"contours", "--preset", "mrap-flat", "--levels", "10, 20,30"});
  REQUIRE(a.code == 0);
  const ResultDocument doc = parse_document(a.out);
  REQUIRE(doc.contours.size() == 3);
  CHECK(doc.contours[2].level == 30.0);
  CHECK(doc.contours[0].polylines.size() == 1);

  const auto path = std::filesystem::temp_directory_path() / "glide_cli_result.json";
  write_document(path, doc);
  const Run b = cli({"contours", "--result", path.string(), "--count", "4"});
  std::filesystem::remove(path);
  REQUIRE(b.code == 0);
  CHECK(parse_document(b.out).contours.size() == 4);
  CHECK(cli({"contours", "--preset", "mrap-flat", "--levels", "1,x"}).code == 2);
  CHECK(cli({"contours", "--result", "/nonexistent.json"}).code == 2);
}

TEST_CASE("benchmark prints one line per benchmark") {
  const Run r = cli({"benchmark", "--suite", "mrap-flat"});
  CHECK(r.code == 0);
  CHECK(r.out.find("mrap-flat") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("1 benchmarks, all passed") != std::string::npos);
}

TEST_CASE("cli and http give identical fields") {
  SolveService svc;
  for (std::string preset : {"grrp-flat-uniform-wind", "mrap-infinite-barrier", "grrp-staircase"}) {
    CAPTURE(preset);
    const Run r = cli({preset.rfind("mrap", 0) == 0 ? "solve-mra" : "solve-grr", "--preset", preset});
    REQUIRE(r.code == 0);
    const auto http = svc.handle("POST", "/api/solve", json{{"preset", preset}}.dump());
    REQUIRE(http.status == 200);
    const json a = json::parse(r.out), b = json::parse(http.body);
    CHECK(a["field"] == b["field"]);
    CHECK(a["field"].dump() == b["field"].dump());
    CHECK(a["reachable_mask"] == b["reachable_mask"]);
  }
}
