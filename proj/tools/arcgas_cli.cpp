#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "arcgas/errors.hpp"
#include "arcgas/pipeline.hpp"
#include "arcgas/verify.hpp"

using namespace arcgas;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string arc = "interval";
  double beta = 2;
  int grunsky_n = 64;
  int quad_m = 512;
  std::uint64_t seed = 20240611;
  long sweeps = 0;
  std::string out = ".";
  std::string cache;

  Settings settings() const {
    Settings s;
    s.grunsky_n = grunsky_n;
    s.quad_m = quad_m;
    s.cache_dir = cache;
    return s;
  }
};

// a JSON file, or one of: interval | circular:<alpha> | perturbed:<amplitude>:<c0,c1,...>
ArcSpec resolve_arc(const std::string& a) {
  if (fs::exists(a)) return load_arc(a);
  if (a == "interval") return make_interval();
  auto parts = [&] {
    std::vector<std::string> v;
    std::stringstream ss(a);
    for (std::string item; std::getline(ss, item, ':');) v.push_back(item);
    return v;
  }();
  try {
    if (parts.size() == 2 && parts[0] == "circular") return make_circular_arc(std::stod(parts[1]));
    if (parts.size() == 3 && parts[0] == "perturbed") {
      std::vector<double> c;
      std::stringstream ss(parts[2]);
      for (std::string item; std::getline(ss, item, ',');) c.push_back(std::stod(item));
      return make_perturbed_arc(c, std::stod(parts[1]));
    }
  } catch (const std::logic_error&) {
  }
  throw DomainError("config", "cannot read arc '" + a + "' (no such file, and not a shorthand)");
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw DomainError("output", "cannot write " + p.string());
  f << text;
}

json route_check(double a, double b, double tol) {
  const double d = std::abs(a - b);
  return {{"difference", d}, {"tolerance", tol}, {"status", d <= tol ? "PASS" : "FAIL"}};
}

int cmd_analyze(const Common& c) {
  const ArcSpec arc = resolve_arc(c.arc);
  const auto a = analyze(arc, c.settings());
  const auto& e = a.report;
  json r = {{"manifest", manifest("analyze", arc, a.settings)},
            {"energies", e.to_json()},
            {"route_agreement",
             {{"JA", route_check(e.JA_spectral, e.JA_geometric, 1e-4)},
              {"JF", route_check(e.JF_cheb, e.JF_dirichlet, 1e-4)},
              {"cap_frostman", route_check(e.cap, e.cap_frostman, 1e-8)},
              {"cap_a00", route_check(e.cap, e.cap_a00, 1e-8)}}}};
  write_file(fs::path(c.out) / "report.json", r.dump(2) + "\n");
  std::printf("cap          %.12g\nJ^A spectral %.10g\nJ^A geometric %.10g\nJ^F cheb     %.10g\nJ^F dirichlet %.10g\n"
              "kappa        %.10g\n",
              e.cap, e.JA_spectral, e.JA_geometric, e.JF_cheb, e.JF_dirichlet, e.kappa);
  for (const char* k : {"JA", "JF", "cap_frostman", "cap_a00"})
    if (r["route_agreement"][k]["status"] == "FAIL") std::printf("FAIL route agreement %s\n", k);
  return 0;
}

int cmd_predict(const Common& c, const std::vector<double>& u_cheb) {
  const ArcSpec arc = resolve_arc(c.arc);
  const auto a = analyze(arc, c.settings());
  ChebSeries u;
  if (!u_cheb.empty()) {
    u.c0 = u_cheb[0];
    u.coeffs.assign(a.B.N, 0.0);
    for (std::size_t k = 1; k < u_cheb.size() && int(k) <= a.B.N; ++k) u.coeffs[k - 1] = u_cheb[k];
  }
  const auto p = predict(a.report, a.B, a.v, c.beta, u_cheb.empty() ? nullptr : &u);
  json r = {{"manifest", manifest("predict", arc, a.settings, {{"beta", c.beta}, {"u_cheb", u_cheb}})},
            {"prediction", p.to_json()}};
  write_file(fs::path(c.out) / "prediction.json", r.dump(2) + "\n");
  std::printf("beta %.6g  constant %.12g  (J^A %.10g, J^F %.10g)\n", c.beta, p.constant, p.JA, p.JF);
  if (p.has_u) std::printf("clt variance %.10g  mean shift %.10g\n", p.clt.variance, p.clt.mean_shift);
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, double mc_scale) {
  VerifyOptions o;
  o.settings = c.settings();
  o.seed = c.seed;
  o.mc_scale = mc_scale;
  std::vector<std::string> suites = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  int failures = 0;
  json all = json::array();
  for (const auto& s : suites) {
    const auto res = run_suite(s, o);
    std::fputs(res.table().c_str(), stdout);
    failures += res.failures();
    all.push_back(res.to_json());
  }
  write_file(fs::path(c.out) / ("verify_" + suite + ".json"), json{{"suites", all}, {"failures", failures}}.dump(2) + "\n");
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : std::min(255, 2 + failures);
}

// params file: {"arc": ..., "n", "beta", "s", "sweeps", "burn_in", "chains", "k_stat", "K", "mode", "seed",
//               "thermo", "s_nodes"}
int cmd_simulate(const Common& c, const std::string& params_path) {
  json pj = json::object();
  if (!params_path.empty()) {
    std::ifstream in(params_path);
    if (!in) throw DomainError("config", "cannot open " + params_path);
    try {
      pj = json::parse(in);
    } catch (const json::exception& e) {
      throw DomainError("config", std::string("malformed params: ") + e.what());
    }
  }
  const ArcSpec arc = pj.contains("arc") ? ArcSpec::from_json(pj["arc"]) : resolve_arc(c.arc);
  GasParams p;
  p.n = pj.value("n", 50);
  p.beta = pj.value("beta", c.beta);
  p.s = pj.value("s", 1.0);
  p.seed = pj.value("seed", c.seed);
  p.sweeps = c.sweeps > 0 ? c.sweeps : pj.value("sweeps", 10000L);
  p.burn_in = pj.value("burn_in", std::max(100L, p.sweeps / 10));
  p.k_stat = pj.value("k_stat", 4);
  p.keep_series = true;
  const std::string mode = pj.value("mode", std::string("grunsky"));
  if (mode == "pairwise")
    p.mode = GasMode::Pairwise;
  else if (mode != "grunsky")
    throw DomainError("config", "unknown mode '" + mode + "'");
  p.validate();
  const int chains = pj.value("chains", 1);
  if (chains < 1) throw DomainError("config", "chains must be positive");

  const auto a = analyze(arc, c.settings());
  const GasModel model = arc.is_interval() ? GasModel::interval(pj.value("K", a.B.N)) : a.gas_model(pj.value("K", 0));
  const fs::path out(c.out);
  json extra = {{"params", pj}, {"seed", p.seed}, {"sweeps", p.sweeps}, {"chains", chains}};
  json r = {{"manifest", manifest("simulate", arc, a.settings, extra)}};

  if (pj.value("thermo", false)) {
    const auto t = thermo_log_ratio(model, p, pj.value("s_nodes", 8));
    write_file(out / "thermo.csv", t.csv());
    r["thermo"] = t.to_json();
    std::printf("log Z(arc) - log Z(interval) = %.10g +- %.3g\n", t.estimate, t.se);
  } else {
    const auto runs = mcmc_chains(model, p, chains);
    json cs = json::array();
    std::string summary;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto csv = runs[i].to_csv();
      summary += i == 0 ? csv : csv.substr(csv.find('\n') + 1);
      write_file(out / ("series_chain" + std::to_string(i) + ".csv"), runs[i].series_csv());
      cs.push_back(runs[i].to_json());
    }
    write_file(out / "chain_summary.csv", summary);
    r["chains"] = cs;
    for (const auto& st : runs[0].stats)
      std::printf("%-8s mean %.8g  var %.8g  se %.3g  ess %.1f\n", st.name.c_str(), st.mean, st.variance, st.se_mean,
                  st.ess);
  }
  write_file(out / "report.json", r.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Potential theory of analytic arcs and the Coulomb gas on them"};
  app.require_subcommand(1);
  Common c;
  auto common = [&](CLI::App* s) {
    s->add_option("--arc", c.arc, "arc config (JSON) or interval | circular:<alpha> | perturbed:<amp>:<c0,c1,..>");
    s->add_option("--grunsky-n", c.grunsky_n, "Grunsky truncation N")->check(CLI::Range(2, 4096));
    s->add_option("--quad-m", c.quad_m, "Chebyshev quadrature nodes M")->check(CLI::Range(8, 1 << 20));
    s->add_option("--out", c.out, "output directory");
    s->add_option("--cache", c.cache, "cache directory for conformal maps and Grunsky matrices");
  };

  auto* an = app.add_subcommand("analyze", "capacity, energies and Grunsky spectrum of an arc");
  common(an);

  auto* pr = app.add_subcommand("predict", "free-energy constant and CLT parameters");
  common(pr);
  std::vector<double> u_cheb;
  pr->add_option("--beta", c.beta, "inverse temperature")->check(CLI::PositiveNumber);
  pr->add_option("--u-cheb", u_cheb, "Chebyshev coefficients u_0 u_1 ... of a test function");

  auto* ve = app.add_subcommand("verify", "run a verification suite");
  common(ve);
  std::string suite = "closed-forms";
  double mc_scale = 1.0;
  ve->add_option("--suite", suite, "closed-forms | identities | selberg | mcmc-short | mcmc-long | all")
      ->check(CLI::IsMember({"closed-forms", "identities", "selberg", "mcmc-short", "mcmc-long", "all"}));
  ve->add_option("--seed", c.seed, "base seed");
  ve->add_option("--mc-scale", mc_scale, "multiplier on every sweep count")->check(CLI::PositiveNumber);

  auto* si = app.add_subcommand("simulate", "Metropolis sampling of the gas");
  common(si);
  std::string params;
  si->add_option("--params", params, "run parameters (JSON)");
  si->add_option("--beta", c.beta, "inverse temperature")->check(CLI::PositiveNumber);
  si->add_option("--seed", c.seed, "seed");
  si->add_option("--sweeps", c.sweeps, "sweeps per chain")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*an) return cmd_analyze(c);
    if (*pr) return cmd_predict(c, u_cheb);
    if (*ve) return cmd_verify(c, suite, mc_scale);
    if (*si) return cmd_simulate(c, params);
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.stage().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
