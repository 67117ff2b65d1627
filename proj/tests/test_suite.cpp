#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gplab/suite.hpp"

using namespace gplab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("gplab-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_config(const TempDir& dir, const std::string& text) {
  const fs::path p = dir.path / "suite.cfg";
  std::ofstream(p) << text;
  return p;
}

std::vector<ExperimentSection> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_suite_config(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(GPLAB_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config parser accepts comments, sections and lists") {
  const auto s = parse(
      "# header\n"
      "; another comment\n"
      "\n"
      "[emin]\n"
      "p = 0.3, 0.6\n"
      "  L=40  \n"
      "[winding]\n"
      "samples = 3\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "emin");
  CHECK(s[0].values.at("p") == "0.3, 0.6");
  CHECK(s[0].values.at("L") == "40");
  CHECK(s[1].name == "winding");
  CHECK(parse("").empty());
  CHECK(parse("# only comments\n").empty());
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_AS(parse("[nope]\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin\n"), ConfigError);
  CHECK_THROWS_AS(parse("L = 40\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nbogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nL = forty\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nN = 10.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nN = 1000\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nL = -5\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\np = 0.3,,0.6\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\nL = 40\nL = 50\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\n[emin]\n"), ConfigError);
  CHECK_THROWS_AS(parse("[emin]\njust words\n"), ConfigError);
  try {
    parse("[emin]\n\nbogus = 1\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("params expose typed defaults and overrides") {
  const Params p("emin", {{"L", "30"}});
  CHECK(p.real("L") == 30.0);
  CHECK(p.count("N") == 1024);
  CHECK(p.reals("p") == std::vector<double>{0.3, 0.6, 0.9, 1.2});
  CHECK_THROWS_AS(Params("nope"), ConfigError);
  CHECK_THROWS_AS(p.real("missing"), ConfigError);
  for (const auto& name : experiment_names()) CHECK(experiment_defaults().contains(name));
  CHECK(experiment_names().size() == 8);
}

TEST_CASE("default config file lists every built-in default") {
  std::ifstream in(fs::path(GPLAB_SOURCE_DIR) / "configs" / "default.cfg");
  REQUIRE(in);
  const auto sections = parse_suite_config(in);
  CHECK(sections.size() == experiment_names().size());
  for (const auto& s : sections) {
    CHECK(s.values == experiment_defaults().at(s.name));
  }
}

TEST_CASE("suite exit codes") {
  TempDir dir("codes");
  std::ostringstream log;
  CHECK(run_suite(write_config(dir, ""), dir.path / "empty", log) == kSuitePassed);
  CHECK(nlohmann::json::parse(slurp(dir.path / "empty" / "summary.json")).empty());
  CHECK(run_suite(write_config(dir, "[nope]\n"), dir.path / "a", log) == kSuiteMalformed);
  CHECK(run_suite(write_config(dir, "[winding]\nsamples = many\n"), dir.path / "b", log) == kSuiteMalformed);
  CHECK(run_suite(dir.path / "missing.cfg", dir.path / "c", log) == kSuiteMalformed);
  // An impossible tolerance turns into a failed assertion.
  CHECK(run_suite(write_config(dir, "[winding]\nsamples = 2\nmomentum_tol = 1e-30\n"), dir.path / "d", log) ==
        kSuiteFailed);
}

TEST_CASE("suite writes a summary and deterministic outputs") {
  TempDir dir("summary");
  const auto cfg = write_config(dir, "[winding]\nsamples = 3\n[identities]\nN = 1024\n");
  std::ostringstream log;
  REQUIRE(run_suite(cfg, dir.path / "one", log) == kSuitePassed);
  REQUIRE(run_suite(cfg, dir.path / "two", log) == kSuitePassed);
  const auto summary = nlohmann::json::parse(slurp(dir.path / "one" / "summary.json"));
  REQUIRE(summary.is_array());
  REQUIRE(!summary.empty());
  for (const auto& entry : summary) {
    CHECK(entry.contains("name"));
    CHECK(entry.at("passed").get<bool>());
    CHECK(entry.contains("measured"));
    CHECK(entry.contains("threshold"));
  }
  CHECK(log.str().find("PASS winding/momentum_error") != std::string::npos);
  for (const auto& f : fs::directory_iterator(dir.path / "one")) {
    const auto name = f.path().filename();
    if (name.extension() == ".csv") CHECK(slurp(f.path()) == slurp(dir.path / "two" / name));
  }
}

TEST_CASE("run_experiment tags assertions with their criteria") {
  const Params p("emin", {{"p", "0.3"}, {"L", "20"}, {"N", "256"}, {"pinned_A", "5"}});
  const auto r = run_experiment(p);
  CHECK(r.name == "emin");
  CHECK(!r.assertions.empty());
  for (const auto& a : r.assertions) {
    CHECK(a.criterion >= 7);
    CHECK(a.criterion <= 8);
  }
}

TEST_CASE("command line exit codes") {
  TempDir dir("cli");
  CHECK(run_cli("suite " + write_config(dir, "").string() + " --out " + (dir.path / "o").string()) == 0);
  CHECK(run_cli("suite " + write_config(dir, "[bogus]\n").string() + " --out " + (dir.path / "o").string()) == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("identities --N 7") == 2);
  CHECK(run_cli("soliton --c 0.5 --out " + (dir.path / "s").string()) == 0);
  CHECK(fs::exists(dir.path / "s" / "soliton.csv"));
}
