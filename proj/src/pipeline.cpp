#include "arcgas/pipeline.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "arcgas/errors.hpp"

namespace arcgas {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

EnergyReport build_report(const Analysis& a) {
  EnergyReport r;
  r.cap = a.eq.cap;
  r.cap_frostman = std::exp(frostman_potential(a.eq, 0.3));
  r.cap_a00 = 0.5 * std::exp(-2.0 * a.B.a00);
  r.IL = loewner_energy(a.curve, a.map);
  r.hp1 = a.hp.hp1;
  r.hm1 = a.hp.hm1;
  r.JA_geometric = jA_geometric(r.IL, a.hp);
  const auto ld = fredholm_logdet(a.B);
  r.logdet = ld.logdet;
  r.logdet_error = ld.truncation_error;
  r.JA_spectral = -12.0 * ld.logdet;
  r.JF_cheb = jF_cheb(a.B, a.v);
  r.JF_dirichlet = jF_dirichlet(a.map, a.eq, a.hp, a.v.d0_intro);
  const auto sp = min_eigenvalue(a.B);
  r.kappa = sp.kappa;
  r.lambda_min = sp.lambda_min;
  r.lambda_max = sp.lambda_max;
  r.bf_residual = bf_consistency(a.B, a.v.f, a.v.m);
  r.endpoint_identity_p1 = a.eq.ze_prime_p1 * a.hp.hp1 * a.hp.hp1;
  r.endpoint_identity_m1 = a.eq.ze_prime_m1 * a.hp.hm1 * a.hp.hm1;
  r.map_residual = a.map.residual;
  r.N = a.B.N;
  r.quad_M = a.eq.M;
  r.conformal_N = a.map.N;
  return r;
}

}  // namespace

void Settings::validate() const {
  if (grunsky_n < 2) throw DomainError("settings", "grunsky_n must be at least 2");
  if (quad_m < 4 * grunsky_n) throw DomainError("settings", "quad_m must be at least 4 grunsky_n");
  if (conformal_n < 64 || (conformal_n & (conformal_n - 1)))
    throw DomainError("settings", "conformal_n must be a power of two >= 64");
  if (open_m < 64) throw DomainError("settings", "open_m must be at least 64");
}

nlohmann::json Settings::to_json() const {
  return {{"grunsky_n", grunsky_n}, {"quad_m", quad_m}, {"conformal_n", conformal_n}, {"open_m", open_m}};
}

std::string analysis_hash(const ArcSpec& arc, const Settings& s) {
  const std::string key = arc.canonical() + "|" + s.to_json().dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(key));
  return buf;
}

GasModel Analysis::gas_model(int K) const { return GasModel::build(B, eq, K == 0 ? B.N : K); }

Analysis analyze(const ArcSpec& arc, const Settings& s) {
  s.validate();
  require_valid(arc);
  Analysis a;
  a.arc = arc;
  a.settings = s;
  a.hash = analysis_hash(arc, s);
  a.curve = open_arc(arc, s.open_m);

  std::filesystem::path cache;
  bool hit = false;
  if (!s.cache_dir.empty()) {
    cache = std::filesystem::path(s.cache_dir) / (a.hash + ".json");
    std::ifstream in(cache);
    if (in) {
      try {
        const auto j = nlohmann::json::parse(in);
        if (j.at("arc").get<std::string>() == arc.canonical()) {
          a.map = LaurentMap::from_json(j.at("map"), a.curve);
          a.B = GrunskyMatrix::from_json(j.at("grunsky"));
          hit = true;
        }
      } catch (const nlohmann::json::exception&) {
        hit = false;  // stale or corrupt entry is recomputed
      }
    }
  }
  if (!hit) {
    ConformalOptions opt;
    opt.N = s.conformal_n;
    a.map = exterior_map(a.curve, opt);
  }
  a.eq = z_e_at_cheb_nodes(a.curve, a.map, s.quad_m);
  if (!hit) a.B = grunsky_coeffs(a.eq, s.grunsky_n);
  a.v = arc_vectors(a.eq, s.grunsky_n);
  a.hp = h_prime_at_pm1(a.curve, a.map);
  a.from_cache = hit;
  if (!hit && !cache.empty()) {
    std::filesystem::create_directories(cache.parent_path());
    const nlohmann::json j = {{"arc", arc.canonical()}, {"map", a.map.to_json()}, {"grunsky", a.B.to_json()}};
    const auto tmp = cache.string() + ".tmp";
    std::ofstream(tmp) << j.dump();
    std::filesystem::rename(tmp, cache);
  }
  a.report = build_report(a);
  return a;
}

nlohmann::json manifest(const std::string& command, const ArcSpec& arc, const Settings& s,
                        const nlohmann::json& extra) {
  nlohmann::json m = {{"command", command},
                      {"arc", arc.to_json()},
                      {"arc_hash", analysis_hash(arc, s)},
                      {"settings", s.to_json()},
                      {"version", "1.0.0"}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  return m;
}

ChebSeries pullback(const EquilibriumData& eq, const std::function<double(cd)>& u, int N) {
  std::vector<double> v(eq.M);
  for (int j = 0; j < eq.M; ++j) v[j] = u(eq.nodes[j].z);
  return cheb_transform(v, N);
}

ArcSpec load_arc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config", "cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config", std::string("malformed arc config: ") + e.what());
  }
  return ArcSpec::from_json(j.contains("arc") ? j.at("arc") : j);
}

}  // namespace arcgas
