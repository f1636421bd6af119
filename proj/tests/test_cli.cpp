#include "app/cli.hpp"
#include "app/scenario.hpp"
#include "app/tasks.hpp"

#include "lcint/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lcint;
using namespace lcint::app;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lcint");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "lcint-test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path;
}

std::vector<fs::path> corpus() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(LCINT_SCENARIO_DIR))
    if (e.path().extension() == ".scn") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* probe_text = R"(task = probe
[ring]
p = 5
N = 6
M = 6
d = 1
[cycle A]
generators = x
[cycle B]
generators = x - s - pi
)";

}  // namespace

TEST_CASE("every corpus scenario survives a round trip") {
  const auto files = corpus();
  REQUIRE(files.size() >= 8);
  for (const auto& f : files) {
    const auto s = load_scenario(f.string());
    CHECK(parse_scenario(serialize(s)) == s);
    CHECK(serialize(parse_scenario(serialize(s))) == serialize(s));
    CHECK_FALSE(s.expect.empty());
  }
}

TEST_CASE("scenario parsing errors carry line numbers") {
  CHECK_THROWS_AS(parse_scenario("[ring]\np = 5\n"), PreconditionError);
  CHECK_THROWS_AS(parse_scenario("task = probe\n[ring]\np = five\n[cycle]\ngenerators = x\n"), PreconditionError);
  CHECK_THROWS_AS(parse_scenario("task = dance\n"), PreconditionError);
  CHECK_THROWS_AS(parse_scenario("task = probe\n[cycle]\ngenerators = y\n"), PreconditionError);
  CHECK_THROWS_AS(parse_scenario("task = probe\n[ring]\n[ring]\n[cycle]\ngenerators = x\n"), PreconditionError);
  try {
    parse_scenario("task = probe\n\n[ring]\nbogus = 1\n");
    FAIL("no error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  const auto s = parse_scenario(probe_text);
  CHECK(s.cycles.size() == 2);
  CHECK(s.cycles[1].label == "B");
  CHECK(s.region == std::vector<std::string>{"*"});
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  for (const auto& f : corpus()) {
    const auto s = load_scenario(f.string());
    const auto a = run_scenario(s, f.stem().string()), b = run_scenario(s, f.stem().string());
    CHECK(a.text() == b.text());
    CHECK(a.json() == b.json());
    Overrides four;
    four.workers = 4;
    CHECK(run_scenario(s, f.stem().string(), four).text() == a.text());
    CHECK(check_expectations(a).empty());
  }
}

TEST_CASE("json report carries the same results as the table") {
  const auto f = fs::path(LCINT_SCENARIO_DIR) / "lattices-rank2.scn";
  const auto r = run_scenario(load_scenario(f.string()), "lattices-rank2");
  const auto j = nlohmann::json::parse(r.json());
  CHECK(j["task"] == "lattices");
  CHECK(j["results"]["count"] == "2");
  CHECK(j["results"]["self_dual_count"] == "0");
  for (const auto& [k, v] : r.results) {
    CHECK(j["results"][k] == v);
    CHECK(r.text().find(v) != std::string::npos);
  }
}

TEST_CASE("subcommands and exit codes") {
  const auto dir = fs::path(LCINT_SCENARIO_DIR);
  const auto p = run({"probe", (dir / "probe-square-root.scn").string()});
  CHECK(p.code == 0);
  CHECK(p.out.find("piece.1") != std::string::npos);
  CHECK(p.err.empty());

  const auto mismatch = run({"intersect", (dir / "probe-square-root.scn").string()});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out.empty());
  CHECK_FALSE(mismatch.err.empty());

  CHECK(run({"probe", "/nonexistent.scn"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"probe", (dir / "probe-square-root.scn").string(), "--precision", "8"}).code == 1);
  CHECK(run({"lattices", temp_file("bad.scn", "task = lattices\n[lattice]\nn = 2\n").string()}).code == 1);

  const auto path = temp_file("budget.scn", probe_text).string();
  CHECK(run({"probe", path}).code == 0);
  const auto b = run({"probe", path, "--refine-max", "0"});
  CHECK(b.code == 2);
  CHECK(b.out.find("budget") != std::string::npos);

  const auto low = run({"intersect", (dir / "intersect-transversal.scn").string(), "--precision", "3,3"});
  CHECK(low.code == 0);
  CHECK(low.out.find("N = 3") != std::string::npos);
}

TEST_CASE("--out writes both renderings and nothing else") {
  const auto dir = fs::temp_directory_path() / "lcint-test" / "out";
  fs::remove_all(dir);
  const auto scn = fs::path(LCINT_SCENARIO_DIR) / "artin-rees-x.scn";
  const auto r = run({"artin-rees", scn.string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "artin-rees-x.txt") == r.out);
  CHECK(nlohmann::json::parse(slurp(dir / "artin-rees-x.json"))["results"]["k"] == "1");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 2);
  const auto again = run({"artin-rees", scn.string(), "--out", dir.string()});
  CHECK(again.out == r.out);
}

TEST_CASE("selftest") {
  const auto r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.err.empty());
  const auto empty = fs::temp_directory_path() / "lcint-test" / "empty";
  fs::create_directories(empty);
  const auto bad = temp_file("broken.scn", "task = intersect\n[cycle]\ngenerators = x\n[fiber]\ns = 0\n[expect]\nchi = 7\n");
  const auto b = run({"selftest", "--corpus", bad.parent_path().string()});
  CHECK(b.code == 3);
  CHECK(b.out.find("FAIL scenario broken") != std::string::npos);
}
