#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"
#include "fixtures.hpp"
#include "ornament/interchange.hpp"

using namespace ornament;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ornament");
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ornament_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("gen, validate and mu") {
  TempDir dir;
  const auto b = dir.file("b.json");
  REQUIRE(run({"gen", "borromean", "--k", "1", "--out", b}).status == cli::kOk);
  const auto v = run({"validate", b});
  CHECK(v.status == cli::kOk);
  CHECK(json::parse(v.out)["status"] == "valid");

  const auto mu = run({"mu", b, "--method", "both", "--seed", "3"});
  CHECK(mu.status == cli::kOk);
  const json report = json::parse(mu.out);
  CHECK(report["mu"] == 1);
  CHECK(report["agree"] == true);
  CHECK(report["degree"]["mu"] == 1);
  CHECK(report["sweep"]["mu"] == 1);

  const auto t = dir.file("t.json");
  REQUIRE(run({"gen", "trivial", "--k", "2", "--out", t}).status == cli::kOk);
  const json trivial = json::parse(run({"mu", t}).out);
  CHECK(trivial["mu"] == 0);
  CHECK(trivial["agree"] == true);
}

TEST_CASE("gen is deterministic and round-trips") {
  TempDir dir;
  const auto a = run({"gen", "random", "--k", "1", "--r", "1", "--seed", "17", "--spread", "2/3"});
  const auto b = run({"gen", "random", "--k", "1", "--r", "1", "--seed", "17", "--spread", "2/3"});
  REQUIRE(a.status == cli::kOk);
  CHECK(a.out == b.out);
  CHECK(dump(to_json(ornament_from_json(json::parse(a.out)))) == a.out);

  const auto p = run({"gen", "borromean", "--k", "1", "--eps", "1/100", "--seed", "2"});
  CHECK(p.status == cli::kOk);

  const auto custom = run({"gen", "trivial", "--k", "1", "--targets", "0,0;1/2,0;0,-3"});
  REQUIRE(custom.status == cli::kOk);
  CHECK(json::parse(custom.out)["components"][1]["vertices"][0][0] == "1/2");
}

TEST_CASE("invalid input exits with status 1") {
  TempDir dir;
  CHECK(run({"gen", "borromean", "--k", "0"}).status == cli::kInvalidInput);
  CHECK(run({"gen", "borromean", "--k", "7"}).status == cli::kInvalidInput);
  CHECK(run({"gen", "sphere"}).status == cli::kInvalidInput);
  CHECK(run({"gen", "trivial", "--targets", "0,0;0,0"}).status == cli::kInvalidInput);
  CHECK(run({"mu", dir.file("missing.json")}).status == cli::kInvalidInput);
  CHECK(run({}).status == cli::kInvalidInput);

  const auto b = dir.file("b.json");
  REQUIRE(run({"gen", "borromean", "--out", b}).status == cli::kOk);
  json doc = json::parse(slurp(b));
  doc["components"][0]["vertices"][1][0] = "3/0";
  const auto bad = dir.file("bad.json");
  write(bad, doc.dump());
  const auto r = run({"validate", bad});
  CHECK(r.status == cli::kInvalidInput);
  CHECK(r.err.find("$.components") != std::string::npos);

  // valid document, but not an ornament: reported, and mu refuses it
  const auto seg = dir.file("segments.json");
  write(seg, dump(to_json(fixture::concurrent_segments())));
  const auto vs = run({"validate", seg});
  CHECK(vs.status == cli::kOk);
  const json report = json::parse(vs.out);
  CHECK(report["status"] == "invalid");
  CHECK(report["ornament"]["witness"]["point"] == json::array({"0", "0"}));
  CHECK(run({"mu", seg}).status == cli::kInvalidInput);

  // dimension mismatch: curves in R^3 have 3d != 2m - 1
  const auto tri = dir.file("triangles.json");
  write(tri, dump(to_json(fixture::triangles_in_space())));
  CHECK(run({"mu", tri}).status == cli::kInvalidInput);
}

TEST_CASE("homotopy and sweep") {
  TempDir dir;
  const auto b = dir.file("b.json");
  const auto h = dir.file("h.json");
  const auto r = dir.file("r.json");
  REQUIRE(run({"gen", "borromean", "--out", b}).status == cli::kOk);
  REQUIRE(run({"homotopy", b, "--seed", "4", "--out", h}).status == cli::kOk);
  REQUIRE(run({"homotopy", b, "--seed", "4", "--reverse", "--out", r}).status == cli::kOk);

  const auto s = run({"sweep", h});
  CHECK(s.status == cli::kOk);
  const json fwd = json::parse(s.out);
  CHECK(fwd["sum"] == 1);
  CHECK(fwd["mu_start"] == 1);
  CHECK(fwd["mu_end"] == 0);
  CHECK(fwd["identity"] == true);
  CHECK(fwd["unpaired"].size() == 1);
  CHECK(json::parse(run({"sweep", r}).out)["sum"] == -1);

  // perturbation track: an ornament homotopy with no triple points
  const auto p = dir.file("p.json");
  const auto hp = dir.file("hp.json");
  REQUIRE(run({"gen", "borromean", "--eps", "1/100", "--seed", "6", "--out", p}).status == cli::kOk);
  REQUIRE(run({"homotopy", b, p, "--out", hp}).status == cli::kOk);
  const json pert = json::parse(run({"sweep", hp}).out);
  CHECK(pert["points"].empty());
  CHECK(pert["sum"] == 0);

  // an ornament file is not a homotopy document
  CHECK(run({"sweep", b}).status == cli::kInvalidInput);
}
