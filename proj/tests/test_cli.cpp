#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "riskopt/cli.hpp"
#include "riskopt/io.hpp"
#include "test_util.hpp"

using namespace riskopt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("riskopt-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

constexpr const char* kTwoPointCsv = "value,probability\n0,0.5\n1,0.5\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval prints the documented values") {
    TempDir dir;
    const auto csv = dir.file("two_point.csv", kTwoPointCsv);

    auto r = run({"eval", "es@0.25", csv});
    CHECK(r.code == 0);
    CHECK(r.out == "0.6666666667\n");

    r = run({"eval", "mean", csv});
    CHECK(r.code == 0);
    CHECK(r.out == "0.5\n");

    r = run({"eval", "mix@0.5:1.5", csv});
    CHECK(r.code == 0);
    CHECK(r.out == "1.25\n");
  }

  TEST_CASE("eval json record round-trips the distribution") {
    TempDir dir;
    const auto csv = dir.file("two_point.csv", kTwoPointCsv);
    const auto r = run({"eval", "es@0.25", csv, "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["measure"] == "es@0.25");
    CHECK(j["value"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const auto reloaded = distribution_from_json(nlohmann::json{{"atoms", j["atoms"]}});
    CHECK(j["distribution_digest"] == distribution_digest(reloaded));
    const auto direct = load_distribution(csv);
    CHECK(reloaded.atoms() == direct.atoms());
  }

  TEST_CASE("exit codes follow the contract") {
    TempDir dir;
    const auto csv = dir.file("two_point.csv", kTwoPointCsv);
    const auto bad_mass = dir.file("bad.csv", "value,probability\n0,0.5\n1,0.4\n");
    const auto bad_header = dir.file("head.csv", "v,p\n0,0.5\n1,0.5\n");

    CHECK(run({"eval", "esq@0.5", csv}).code == 2);
    CHECK(run({"eval", "es@x", csv}).code == 2);
    CHECK(run({"eval", "es@0.5", bad_header}).code == 2);
    CHECK(run({"eval", "es@0.5", bad_mass}).code == 3);
    CHECK(run({"eval", "es@2.0", csv}).code == 3);
    CHECK(run({"nonsense"}).code == 2);

    const auto refused = dir.file("var_problem.json", R"({
      "distribution": {"atoms": [[0.5, 0.5], [2.0, 0.25], [3.0, 0.25]]},
      "rho": "var@0.5", "psi": "es@0.5", "family": "i1"
    })");
    CHECK(run({"solve", refused}).code == 4);

    const auto failing =
        run({"verify", "thm2-probe", "--probe", "es@0.9", "--expect", "none", "--trials",
             "60", "--seed", "7"});
    CHECK(failing.code == 1);
  }

  TEST_CASE("solve emits a parseable result with the oracle attached") {
    TempDir dir;
    const auto problem = dir.file("problem.json", R"({
      "distribution": {"atoms": [[0.5, 0.5], [2.0, 0.25], [3.0, 0.25]]},
      "rho": "es@0.5", "psi": "es@0.5", "family": "i1d:1",
      "premium": {"kind": "expected_value", "loading": 0.2},
      "solver": {"iterations": 2000}
    })");
    const auto r = run({"solve", problem, "--plot", (dir.path / "fig.svg").string()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["optimal_value"].get<double>() == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(j["oracle_value"].get<double>() == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(j["family"] == "i1d:1");
    CHECK(j["minimizer"].size() == 3);
    CHECK(fs::exists(dir.path / "fig.svg"));

    // the emitted contract reloads to the same payments
    const auto f = contract_from_json(j["contract"]);
    for (std::size_t i = 0; i < j["support"].size(); ++i) {
      CHECK(f(j["support"][i].get<double>()) ==
            doctest::Approx(j["minimizer"][i].get<double>()).epsilon(1e-12));
    }
  }

  TEST_CASE("verify reports pass and are deterministic") {
    const auto a = run({"verify", "identity", "--trials", "100", "--seed", "9"});
    CHECK(a.code == 0);
    const auto b = run({"verify", "identity", "--trials", "100", "--seed", "9"});
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["pass"].get<bool>());
  }

  TEST_CASE("plot renders deterministically and honors specs") {
    TempDir dir;
    const auto first = (dir.path / "a.svg").string();
    const auto second = (dir.path / "b.svg").string();
    CHECK(run({"plot", "ded:1.5*0.75", "--d", "1.5", "--xmax", "3.5", "-o", first}).code == 0);
    CHECK(run({"plot", "ded:1.5*0.75", "--d", "1.5", "--xmax", "3.5", "-o", second}).code == 0);
    CHECK(dir.read("a.svg") == dir.read("b.svg"));
    CHECK(dir.read("a.svg").find("<svg") == 0);

    CHECK(run({"plot", "zero", "--xmax", "1", "-o", first}).code == 0);
    CHECK(run({"plot", "wat:1", "--xmax", "1", "-o", first}).code == 2);
  }

  TEST_CASE("json distributions, distortion files, and contract files load") {
    TempDir dir;
    const auto dist_json =
        dir.file("two_point.json", R"({"atoms": [[0, 0.5], [1, 0.5]]})");
    auto r = run({"eval", "es@0.25", dist_json});
    CHECK(r.code == 0);
    CHECK(r.out == "0.6666666667\n");

    // the tail-mean distortion at level 1/4 as a measure file
    const auto h_json = dir.file("h.json", R"({"knots": [[0,0],[0.75,1],[1,1]]})");
    r = run({"eval", "dist@" + h_json, dist_json});
    CHECK(r.code == 0);
    CHECK(r.out == "0.6666666667\n");
    CHECK(run({"eval", "dist@" + dir.file("bad.json", "{"), dist_json}).code == 2);

    const auto contract_json =
        dir.file("f.json", R"({"knots": [[0,0],[1.5,0]], "tail_slope": 0.75})");
    const auto out_svg = (dir.path / "f.svg").string();
    CHECK(run({"plot", contract_json, "--xmax", "3.5", "-o", out_svg}).code == 0);
    const auto loaded = parse_contract(contract_json);
    CHECK(loaded(3.5) == doctest::Approx(1.5).epsilon(1e-15));
  }

  TEST_CASE("the environment seed feeds verify") {
    ::setenv("RISKOPT_SEED", "123", 1);
    const auto r = run({"verify", "identity", "--trials", "20"});
    ::unsetenv("RISKOPT_SEED");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["seed"].get<std::uint64_t>() == 123);
  }

  TEST_CASE("menu keeps the whole class for matched losses") {
    TempDir dir;
    const auto a = dir.file("a.csv", "value,probability\n0.5,0.5\n2,0.25\n3,0.25\n");
    const auto b = dir.file("b.csv", "value,probability\n1,0.5\n1.5,0.25\n4,0.25\n");
    const auto r = run({"menu", "--psi", "es@0.5", "--family", "i1d:1", "--dist", a, b});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["count"].get<std::size_t>() == j["grid_size"].get<std::size_t>());
    CHECK(j["contracts"].size() == j["count"].get<std::size_t>());
  }
}
