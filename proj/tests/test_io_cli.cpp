#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lorcomp/cli.hpp"
#include "lorcomp/errors.hpp"
#include "lorcomp/fixtures.hpp"
#include "lorcomp/json_io.hpp"
#include "support.hpp"

using namespace lorcomp;
using lorcomp::io::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lorcomp_test_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name, std::ios::binary) << text;
    return (path / name).string();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lorcomp");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kWorkedMap = R"({
  "domain": {"atoms": [{"id": "x1", "weight": 1}, {"id": "x2", "weight": 2}, {"id": "x3", "weight": 1}]},
  "codomain": {"atoms": [{"id": "y1", "weight": 2}, {"id": "y2", "weight": 1}]},
  "assign": {"x1": "y1", "x2": "y1", "x3": "y2"}
})";

}  // namespace

TEST_CASE("json round trips") {
  const MeasurableMap m = testing::worked_map();
  const json mj = io::to_json(m);
  const MeasurableMap back = io::map_from_json(mj);
  CHECK(back.assignment() == m.assignment());
  CHECK(same_space(back.domain(), m.domain()));
  CHECK(same_space(back.codomain(), m.codomain()));

  const SimpleFunction f(m.domain(), {3, -1.5, 0});
  CHECK(io::function_from_json(io::to_json(f), m.domain()) == f);

  const StepFunction g({1, 3}, {2, 1, 0});
  CHECK(io::step_function_from_json(io::to_json(g)) == g);

  const LorentzExponents e(2.5, kInfinity);
  const LorentzExponents eb = io::exponents_from_json(io::to_json(e));
  CHECK(eb.p() == 2.5);
  CHECK(eb.q() == kInfinity);
  CHECK(io::to_json(e)["q"] == "inf");

  const MSet s = MSet::from_ids(m.codomain(), std::vector<std::string>{"y2"});
  CHECK(io::set_from_json(io::to_json(s), m.codomain()) == s);
  CHECK(io::set_from_json(json::array({"y2"}), m.codomain()) == s);
}

TEST_CASE("fixtures reserialize byte for byte") {
  for (const char* kind : {"uniform-refinement", "square-collapse", "random"}) {
    for (std::size_t n : {1, 3, 8}) {
      const std::string text = io::canonical_dump(io::to_json(fixtures::generate(kind, n, 7)));
      const std::string again = io::canonical_dump(io::to_json(io::map_from_json(json::parse(text))));
      CHECK(text == again);
      CHECK(text == io::canonical_dump(io::to_json(fixtures::generate(kind, n, 7))));
    }
  }
  CHECK_THROWS_AS(fixtures::generate("spiral", 3, 0), DomainError);
  CHECK_THROWS_AS(fixtures::generate("random", 0, 0), DomainError);
}

TEST_CASE("schema errors name the field") {
  try {
    io::map_from_json(json::parse(R"({"domain": {"atoms": [{"id": "a", "weight": 1}]}, "codomain": {"atoms": [{"id": "b", "weight": 1}]}})"));
    FAIL("expected a StructuralError");
  } catch (const StructuralError& e) {
    CHECK(std::string(e.what()).find("assign") != std::string::npos);
  }
  CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"atoms": [{"id": "a", "weight": -1}]})")),
                  StructuralError);
  CHECK_THROWS(io::space_from_json(json::parse(R"({"atoms": [{"id": "a", "weight": "heavy"}]})")));
  CHECK(io::parse_extended(json("inf"), "q") == kInfinity);
  CHECK_THROWS(io::parse_extended(json("big"), "q"));
}

TEST_CASE("cli best-constant on the worked instance") {
  TempDir dir;
  const std::string map = dir.write("map.json", kWorkedMap);
  const Run r = invoke({"best-constant", "--map", map, "--p", "2", "--q", "2", "--r", "2", "--s", "2"});
  REQUIRE(r.code == cli::kComputed);
  const json report = json::parse(r.out);
  CHECK(report["command"] == "best-constant");
  CHECK(report["result"]["value"].get<double>() == doctest::Approx(1.2247448713915890));
  CHECK(report["result"]["method"] == "exhaustive");
  CHECK(report["result"]["extremal_set"] == json::array({"y1"}));
  for (const json& c : report["checks"]) CHECK(c["passed"] == true);

  // Identical invocations give identical bytes.
  CHECK(invoke({"best-constant", "--map", map, "--p", "2", "--q", "2", "--r", "2", "--s", "2"}).out == r.out);
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  const std::string map = dir.write("map.json", kWorkedMap);
  const std::string broken = dir.write("broken.json", "{\"domain\": [");
  const Run bad = invoke({"best-constant", "--map", broken, "--p", "2", "--q", "2", "--r", "2", "--s", "2"});
  CHECK(bad.code == cli::kInputError);
  CHECK(bad.err.find("broken.json") != std::string::npos);

  CHECK(invoke({"best-constant", "--map", (dir.path / "missing.json").string(), "--p", "2", "--q", "2",
             "--r", "2", "--s", "2"})
            .code == cli::kInputError);
  CHECK(invoke({"best-constant", "--map", map, "--p", "0.5", "--q", "2", "--r", "2", "--s", "2"}).code ==
        cli::kInputError);
  CHECK(invoke({"frobnicate"}).code == cli::kInputError);
  CHECK(invoke({"check-closed-range", "--map", map, "--p", "2", "--q", "2", "--r", "2", "--s", "3"}).code ==
        cli::kRegimeError);
  CHECK(invoke({"check-isomorphism", "--map", map, "--p", "2", "--q", "2", "--r", "3", "--s", "2"}).code ==
        cli::kRegimeError);

  const std::string lossy = dir.write("lossy.json", R"({
    "domain": {"atoms": [{"id": "x1", "weight": 1}]},
    "codomain": {"atoms": [{"id": "y1", "weight": 0}]},
    "assign": {"x1": "y1"}})");
  CHECK(invoke({"rn-derivative", "--map", lossy}).code == cli::kRegimeError);
  const Run luzin = invoke({"check-n-inverse", "--map", lossy});
  CHECK(luzin.code == cli::kComputed);
  CHECK(json::parse(luzin.out)["result"]["holds"] == false);
}

TEST_CASE("cli norm of an indicator") {
  TempDir dir;
  dir.write("space.json", R"({"atoms": [{"id": "a", "weight": 1}, {"id": "b", "weight": 2}, {"id": "c", "weight": 5}]})");
  const std::string set = dir.write("set.json", R"({"members": ["a", "b"]})");
  const Run r = invoke({"norm", "--set", set, "--space", (dir.path / "space.json").string(), "--p", "2",
                     "--q", "inf"});
  REQUIRE(r.code == cli::kComputed);
  CHECK(json::parse(r.out)["result"]["norm"].get<double>() == doctest::Approx(std::sqrt(3.0)));

  const std::string fn = dir.write("fn.json", R"({"space": {"atoms": [{"id": "a", "weight": 1}]},
                                                    "values": {"a": 4}})");
  const Run f = invoke({"norm", "--fn", fn, "--p", "2", "--q", "1"});
  REQUIRE(f.code == cli::kComputed);
  CHECK(json::parse(f.out)["result"]["norm"].get<double>() == doctest::Approx(4.0));
}

TEST_CASE("cli gen-fixture and --out") {
  TempDir dir;
  const std::string out = (dir.path / "fixture.json").string();
  REQUIRE(invoke({"gen-fixture", "--kind", "square-collapse", "--n", "2", "--out", out}).code == cli::kComputed);
  std::ifstream file(out, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  CHECK(text == io::canonical_dump(io::to_json(fixtures::square_collapse(2))));
  CHECK(invoke({"gen-fixture", "--kind", "random", "--n", "5", "--seed", "3"}).out ==
        invoke({"gen-fixture", "--kind", "random", "--n", "5", "--seed", "3"}).out);
}

TEST_CASE("size limit from the environment and the flag") {
  TempDir dir;
  const std::string map =
      dir.write("map.json", io::canonical_dump(io::to_json(fixtures::uniform_refinement(6))));
  const std::vector<std::string> base = {"best-constant", "--map", map, "--p", "2", "--q", "2", "--r", "3", "--s", "2"};

  ::setenv("LORENTZ_SIZE_LIMIT", "4", 1);
  CHECK(size_limit_from_env() == 4);
  const Run env_run = invoke(base);
  REQUIRE(env_run.code == cli::kComputed);
  CHECK(json::parse(env_run.out)["result"]["method"] != "exhaustive");

  std::vector<std::string> with_flag = base;
  with_flag.insert(with_flag.end(), {"--size-limit", "10"});
  const Run flag_run = invoke(with_flag);
  REQUIRE(flag_run.code == cli::kComputed);
  CHECK(json::parse(flag_run.out)["result"]["method"] == "exhaustive");
  CHECK(json::parse(flag_run.out)["result"]["value"].get<double>() ==
        doctest::Approx(json::parse(env_run.out)["result"]["value"].get<double>()).epsilon(1e-9));

  ::setenv("LORENTZ_SIZE_LIMIT", "junk", 1);
  CHECK(size_limit_from_env() == kDefaultSizeLimit);
  ::unsetenv("LORENTZ_SIZE_LIMIT");
  CHECK(size_limit_from_env() == kDefaultSizeLimit);
}

TEST_CASE("cli reports for every command") {
  TempDir dir;
  const std::string map = dir.write("map.json", kWorkedMap);
  const std::string fn = dir.write("g.json", R"({"values": {"x1": 4, "x2": 4, "x3": -1}})");
  const std::string yfn = dir.write("f.json", R"({"values": {"y1": 3, "y2": 1}})");
  const std::string space = dir.write("x.json", R"({"atoms": [{"id": "x1", "weight": 1}, {"id": "x2", "weight": 2}, {"id": "x3", "weight": 1}]})");
  const std::string yspace = dir.write("y.json", R"({"atoms": [{"id": "y1", "weight": 2}, {"id": "y2", "weight": 1}]})");
  const std::vector<std::string> exps = {"--p", "2", "--q", "2", "--r", "2", "--s", "2"};
  auto with = [&](std::vector<std::string> a) {
    a.insert(a.end(), exps.begin(), exps.end());
    return a;
  };
  for (const auto& args : {with({"lower-constant", "--map", map}), with({"check-bounded", "--map", map}),
                           with({"check-bounded-below", "--map", map}),
                           with({"check-closed-range", "--map", map}),
                           with({"check-isomorphism", "--map", map}),
                           with({"sample-ratio", "--map", map, "--trials", "20"}),
                           std::vector<std::string>{"range-test", "--map", map, "--fn", fn},
                           std::vector<std::string>{"rn-derivative", "--map", map},
                           std::vector<std::string>{"rearrange", "--fn", yfn, "--space", yspace},
                           std::vector<std::string>{"distribution", "--fn", fn, "--space", space}}) {
    const Run r = invoke(args);
    INFO(args[0] << ": " << r.err);
    CHECK(r.code == cli::kComputed);
    const json report = json::parse(r.out);
    CHECK(report["command"] == args[0]);
    for (const json& c : report["checks"]) CHECK(c["passed"] == true);
  }
}
