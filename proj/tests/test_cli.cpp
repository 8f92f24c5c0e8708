#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {
std::string cli() {
  const char* p = std::getenv("ARCGAS_CLI");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args) {
  const int rc = std::system((cli() + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("arcgas-cli-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}
}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run("") == 1);
  CHECK(run("frobnicate") == 1);
  CHECK(run("analyze --grunsky-n notanumber") == 1);
  CHECK(run("verify --suite nonsense") == 1);
}

TEST_CASE("numeric and config failures exit with 2") {
  const auto d = scratch("bad");
  CHECK(run("analyze --arc " + (d / "missing.json").string() + " --out " + d.string()) == 2);
  std::ofstream(d / "bad.json") << "{\"family\": \"circular\", \"alpha\": 4.0}";
  CHECK(run("analyze --arc " + (d / "bad.json").string() + " --out " + d.string()) == 2);
  CHECK(run("analyze --grunsky-n 64 --quad-m 64 --out " + d.string()) == 2);
}

TEST_CASE("analyze: interval config gives zero energies and cap 1/2") {
  const auto d = scratch("interval");
  std::ofstream(d / "arc.json") << "{\"arc\": {\"family\": \"interval\"}}";
  REQUIRE(run("analyze --arc " + (d / "arc.json").string() + " --out " + d.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(d / "report.json"));
  CHECK(j["energies"]["cap"].get<double>() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(j["energies"]["JA_spectral"].get<double>()) < 1e-8);
  CHECK(std::abs(j["energies"]["JF_cheb"].get<double>()) < 1e-8);
  CHECK(j["manifest"]["command"] == "analyze");
  CHECK(j["manifest"].contains("arc_hash"));
}

TEST_CASE("analyze: semicircle J^A by both routes, reruns byte-identical") {
  const auto d = scratch("semicircle");
  const std::string args = "analyze --arc circular:1.5707963267948966 --out " + d.string();
  REQUIRE(run(args) == 0);
  const auto first = slurp(d / "report.json");
  REQUIRE(run(args) == 0);
  CHECK(slurp(d / "report.json") == first);
  const auto j = nlohmann::json::parse(first);
  CHECK(j["energies"]["JA_spectral"].get<double>() == doctest::Approx(2.07944).epsilon(1e-5));
  CHECK(j["energies"]["JA_geometric"].get<double>() == doctest::Approx(2.07944).epsilon(1e-5));
  CHECK(j["route_agreement"]["JA"]["status"] == "PASS");
}

TEST_CASE("cached reruns report the same values") {
  const auto d = scratch("cache");
  const std::string base = "analyze --arc perturbed:0.3:1,0.5,-0.3 --cache " + (d / "cache").string() + " --out ";
  REQUIRE(run(base + (d / "a").string()) == 0);
  REQUIRE(run(base + (d / "b").string()) == 0);
  CHECK(fs::exists(d / "cache"));
  const auto a = nlohmann::json::parse(slurp(d / "a" / "report.json"))["energies"];
  const auto b = nlohmann::json::parse(slurp(d / "b" / "report.json"))["energies"];
  for (auto it = a.begin(); it != a.end(); ++it)
    CHECK(std::abs(it.value().get<double>() - b[it.key()].get<double>()) <= 1e-12);
}

TEST_CASE("predict: constants at beta = 2 and 4") {
  const auto d = scratch("predict");
  REQUIRE(run("predict --arc interval --beta 2 --out " + d.string()) == 0);
  auto j = nlohmann::json::parse(slurp(d / "prediction.json"));
  CHECK(std::abs(j["prediction"]["constant"].get<double>()) < 1e-9);
  REQUIRE(run("predict --arc circular:1.5707963267948966 --beta 2 --out " + d.string()) == 0);
  j = nlohmann::json::parse(slurp(d / "prediction.json"));
  CHECK(j["prediction"]["constant"].get<double>() == doctest::Approx(std::log(2.0) / 8).epsilon(1e-6));
  REQUIRE(run("predict --arc circular:1.5707963267948966 --beta 4 --u-cheb 0 1 --out " + d.string()) == 0);
  j = nlohmann::json::parse(slurp(d / "prediction.json"));
  const double JA = j["prediction"]["JA"].get<double>(), JF = j["prediction"]["JF"].get<double>();
  CHECK(j["prediction"]["constant"].get<double>() == doctest::Approx(JA / 24 + JF / 16).epsilon(1e-12));
  CHECK(j["prediction"].contains("clt"));
}

TEST_CASE("simulate: identical manifests give identical outputs") {
  const auto d = scratch("simulate");
  std::ofstream(d / "params.json")
      << R"({"arc": {"family": "circular", "alpha": 1.2}, "n": 12, "beta": 2, "sweeps": 500, "burn_in": 50,
             "chains": 2, "seed": 7})";
  std::string outputs[3];
  for (int r = 0; r < 3; ++r) {
    const auto o = d / ("run" + std::to_string(r));
    REQUIRE(run("simulate --params " + (d / "params.json").string() + " --out " + o.string()) == 0);
    outputs[r] = slurp(o / "report.json") + slurp(o / "chain_summary.csv") + slurp(o / "series_chain1.csv");
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[1] == outputs[2]);
}

TEST_CASE("simulate: thermo run emits the per-node B'(s) table") {
  const auto d = scratch("thermo");
  std::ofstream(d / "params.json")
      << R"({"arc": {"family": "circular", "alpha": 1.5707963267948966}, "n": 6, "sweeps": 300, "burn_in": 30,
             "thermo": true, "s_nodes": 4})";
  REQUIRE(run("simulate --params " + (d / "params.json").string() + " --out " + d.string()) == 0);
  const auto csv = slurp(d / "thermo.csv");
  CHECK(csv.rfind("s,weight,bprime,se,acceptance\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("verify closed-forms passes on a fresh checkout") {
  const auto d = scratch("verify");
  CHECK(run("verify --suite closed-forms --out " + d.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(d / "verify_closed-forms.json"));
  CHECK(j["failures"] == 0);
}
