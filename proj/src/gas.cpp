#include "arcgas/gas.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "arcgas/errors.hpp"
#include "arcgas/quadrature.hpp"
#include "arcgas/simd.hpp"

namespace arcgas {

namespace {

constexpr double NEG_INF = -std::numeric_limits<double>::infinity();

template <class T>
GramResult gram(const ArcSpec& arc, int n, int M) {
  using C = std::complex<T>;
  const Rule r = gauss_legendre(M);
  std::vector<C> z(M);
  std::vector<T> w(M);
  for (int i = 0; i < M; ++i) {
    const cd p = arc.point(r.x[i]);
    z[i] = C(T(p.real()), T(p.imag()));
    w[i] = T(r.w[i]) * T(std::abs(arc.tangent(r.x[i])));
  }
  auto inner = [&](const std::vector<C>& f, const std::vector<C>& g) {
    C s = 0;
    for (int i = 0; i < M; ++i) s += w[i] * f[i] * std::conj(g[i]);
    return s;
  };
  std::vector<std::vector<C>> Q;
  Q.reserve(n);
  T len = 0;
  for (int i = 0; i < M; ++i) len += w[i];
  T lognorm = std::log(len) / 2;  // log ||p_0||
  Q.emplace_back(M, C(1 / std::sqrt(len)));
  T logZ = 2 * lognorm;
  for (int j = 1; j < n; ++j) {
    std::vector<C> v(M);
    for (int i = 0; i < M; ++i) v[i] = z[i] * Q.back()[i];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : Q) {
        const C h = inner(v, q);
        for (int i = 0; i < M; ++i) v[i] -= h * q[i];
      }
    const T h = std::sqrt(std::real(inner(v, v)));
    if (!(h > 0)) throw ConditioningError("logZ_beta2_gram", "orthogonalization broke down");
    for (auto& c : v) c /= h;
    lognorm += std::log(h);
    logZ += 2 * lognorm;
    Q.push_back(std::move(v));
  }
  double defect = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      const C g = inner(Q[a], Q[b]) - C(a == b ? 1 : 0);
      defect = std::max(defect, double(std::abs(g)));
    }
  GramResult res;
  res.logZ = double(logZ);
  res.orthogonality_defect = defect;
  res.quad_M = M;
  return res;
}

// cos(k t), k = 1..K by the Chebyshev recurrence
void cos_multiples(double t, int K, double* out) {
  if (K <= 0) return;
  const double c = std::cos(t);
  double prev = 1.0, cur = c;
  out[0] = c;
  for (int k = 2; k <= K; ++k) {
    const double nx = 2.0 * c * cur - prev;
    prev = cur;
    cur = nx;
    out[k - 1] = cur;
  }
}

int kmax_for(const GasModel& m, const GasParams& p, const std::vector<LinearStat>& req = {}) {
  int k = std::max(m.K, p.k_stat);
  for (const auto& r : req) k = std::max(k, static_cast<int>(r.coeffs.size()));
  return k;
}

double reflect(double t) {
  if (t < 0) t = -t;
  if (t > M_PI) t = 2.0 * M_PI - t;
  return t;
}

// proposal scratch: cos multiples, delta, A delta
struct Scratch {
  std::vector<double> c, delta, w;
  explicit Scratch(int kmax) : c(kmax), delta(kmax), w(kmax) {}
};

struct Move {
  double delta = NEG_INF;
  double x = 0;
  EquilibriumMap::Point pt;
};

Move evaluate(const GasModel& m, const GasParams& p, const GasState& st, int mu, double th, Scratch& sc) {
  Move mv;
  const int n = p.n;
  const double lo = mu > 0 ? st.theta[mu - 1] : 0.0;
  const double hi = mu < n - 1 ? st.theta[mu + 1] : M_PI;
  if (!(th > lo && th < hi)) return mv;
  const auto& K = simd::kernels();
  const double xo = st.x[mu];
  mv.x = std::cos(th);
  double lr = K.log_ratio_real(st.x.data(), mu, xo, mv.x) +
              K.log_ratio_real(st.x.data() + mu + 1, n - mu - 1, xo, mv.x);
  double d = std::log(std::sin(th)) - std::log(std::sin(st.theta[mu]));
  const int kmax = st.kmax;
  cos_multiples(th, kmax, sc.c.data());
  const double* old = st.cosk.data() + std::size_t(mu) * kmax;
  for (int k = 0; k < kmax; ++k) sc.delta[k] = sc.c[k] - old[k];
  if (p.mode == GasMode::Grunsky) {
    d += p.beta * lr;
    if (!m.trivial && p.s != 0.0) {
      K.symv(m.A.data(), m.K, sc.delta.data(), sc.w.data());
      const double dy = K.dot(sc.delta.data(), st.y.data(), m.K);
      const double dAd = K.dot(sc.delta.data(), sc.w.data(), m.K);
      const double dd = K.dot(sc.delta.data(), m.dk.data(), m.K);
      d += -p.beta * p.s * (2.0 * dy + dAd) - (1.0 - p.beta / 2.0) * p.s * dd;
    }
  } else {
    mv.pt = m.emap.at_theta(th);
    const double zo_re = st.z_re[mu], zo_im = st.z_im[mu];
    const double lz = K.log_ratio_complex(st.z_re.data(), st.z_im.data(), mu, zo_re, zo_im, mv.pt.z.real(),
                                          mv.pt.z.imag()) +
                      K.log_ratio_complex(st.z_re.data() + mu + 1, st.z_im.data() + mu + 1, n - mu - 1, zo_re, zo_im,
                                          mv.pt.z.real(), mv.pt.z.imag());
    d += p.beta * ((1.0 - p.s) * lr + p.s * lz) + p.s * (mv.pt.log_abs_z_prime - st.L[mu]);
  }
  if (std::isnan(d)) throw NumericError("mcmc", "NaN energy difference");
  mv.delta = d;
  return mv;
}

void apply(const GasModel& m, const GasParams& p, GasState& st, int mu, double th, const Move& mv,
           const Scratch& sc) {
  const int kmax = st.kmax;
  st.theta[mu] = th;
  st.x[mu] = mv.x;
  std::copy(sc.c.begin(), sc.c.end(), st.cosk.begin() + std::size_t(mu) * kmax);
  for (int k = 0; k < kmax; ++k) st.X[k] += sc.delta[k];
  if (p.mode == GasMode::Grunsky) {
    if (!m.trivial && p.s != 0.0)
      for (int k = 0; k < m.K; ++k) st.y[k] += sc.w[k];
  } else {
    st.z_re[mu] = mv.pt.z.real();
    st.z_im[mu] = mv.pt.z.imag();
    st.L[mu] = mv.pt.log_abs_z_prime;
  }
}

struct Batch {
  double mean = 0, var = 0, se = 0, ess = 0;
};

Batch batch_means(const std::vector<double>& v, int B) {
  Batch r;
  const std::size_t T = v.size();
  double s = 0;
  for (double x : v) s += x;
  r.mean = s / T;
  double q = 0;
  for (double x : v) q += (x - r.mean) * (x - r.mean);
  r.var = T > 1 ? q / (T - 1) : 0.0;
  const std::size_t bs = T / B;
  if (bs == 0) return r;
  std::vector<double> bm(B, 0.0);
  for (int b = 0; b < B; ++b) {
    for (std::size_t i = 0; i < bs; ++i) bm[b] += v[b * bs + i];
    bm[b] /= bs;
  }
  double mb = 0;
  for (double x : bm) mb += x;
  mb /= B;
  double vb = 0;
  for (double x : bm) vb += (x - mb) * (x - mb);
  vb /= (B - 1);
  r.se = std::sqrt(vb / B);
  r.ess = r.se > 0 ? std::min(double(T), r.var / (r.se * r.se)) : double(T);
  return r;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json params_json(const GasParams& p) {
  return {{"n", p.n},
          {"beta", p.beta},
          {"s", p.s},
          {"seed", p.seed},
          {"chain", p.chain},
          {"sweeps", p.sweeps},
          {"burn_in", p.burn_in},
          {"step", p.step},
          {"mode", p.mode == GasMode::Grunsky ? "grunsky" : "pairwise"},
          {"k_stat", p.k_stat}};
}

}  // namespace

GramResult logZ_beta2_gram(const ArcSpec& arc, int n, int quad_M) {
  if (n < 1) throw DomainError("logZ_beta2_gram", "n must be positive");
  if (quad_M == 0) quad_M = std::max(8 * n, 512);
  if (quad_M < 8 * n) throw DomainError("logZ_beta2_gram", "quad_M must be at least 8n");
  GramResult r = gram<double>(arc, n, quad_M);
  if (r.orthogonality_defect > 1e-8) {
    r = gram<long double>(arc, n, quad_M);
    r.extended_precision = true;
    if (r.orthogonality_defect > 1e-8)
      throw ConditioningError("logZ_beta2_gram", "orthogonality lost even in extended precision");
  }
  return r;
}

GasModel GasModel::build(const GrunskyMatrix& B, const EquilibriumData& eq, int K) {
  if (K < 1 || K > B.N) throw DomainError("GasModel", "truncation must lie in [1, N]");
  GasModel m;
  m.K = K;
  m.A.resize(std::size_t(K) * K);
  double amax = 0;
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < K; ++l) {
      m.A[std::size_t(k) * K + l] = B.a(k, l);
      amax = std::max(amax, std::abs(B.a(k, l)));
    }
  const auto dv = d_vector(eq, K);
  m.d0_half = dv.series.c0;
  m.dk.resize(K);
  double dmax = std::abs(m.d0_half);
  for (int k = 1; k <= K; ++k) {
    m.dk[k - 1] = dv.series.coeff(k);
    dmax = std::max(dmax, std::abs(m.dk[k - 1]));
  }
  m.log_2cap = std::log(2.0 * eq.cap);
  m.trivial = amax < 1e-14 && dmax < 1e-14 && std::abs(m.log_2cap) < 1e-14;
  m.emap = eq.emap;
  return m;
}

GasModel GasModel::interval(int K) {
  GasModel m;
  m.K = K;
  m.A.assign(std::size_t(K) * K, 0.0);
  m.dk.assign(K, 0.0);
  m.trivial = true;
  return m;
}

void GasParams::validate() const {
  if (n < 2) throw DomainError("gas", "n must be at least 2");
  if (!(beta > 0)) throw DomainError("gas", "beta must be positive");
  if (!(s >= 0 && s <= 1)) throw DomainError("gas", "s must lie in [0, 1]");
  if (sweeps < 64) throw DomainError("gas", "need at least 64 recorded sweeps");
  if (burn_in < 0) throw DomainError("gas", "burn_in must be non-negative");
  if (step < 0 || step > M_PI) throw DomainError("gas", "step must lie in [0, pi]");
  if (k_stat < 1) throw DomainError("gas", "k_stat must be positive");
  if (mode == GasMode::Pairwise && n > 32) throw DomainError("gas", "pairwise-exact mode is limited to n <= 32");
}

GasState make_state(const GasModel& model, const GasParams& p, const std::vector<double>& theta) {
  GasState st;
  st.theta = theta;
  st.kmax = std::max(model.K, p.k_stat);
  refresh_cache(model, p, st);
  return st;
}

GasState initial_state(const GasModel& model, const GasParams& p) {
  std::vector<double> th(p.n);
  for (int j = 0; j < p.n; ++j) th[j] = M_PI * (j + 0.5) / p.n;
  return make_state(model, p, th);
}

double refresh_cache(const GasModel& model, const GasParams& p, GasState& st) {
  const int n = static_cast<int>(st.theta.size());
  const int kmax = st.kmax;
  const bool had = static_cast<int>(st.X.size()) == kmax;
  const std::vector<double> oldX = st.X, oldY = st.y;
  st.x.resize(n);
  st.cosk.assign(std::size_t(n) * kmax, 0.0);
  st.X.assign(kmax, 0.0);
  for (int mu = 0; mu < n; ++mu) {
    st.x[mu] = std::cos(st.theta[mu]);
    cos_multiples(st.theta[mu], kmax, st.cosk.data() + std::size_t(mu) * kmax);
    for (int k = 0; k < kmax; ++k) st.X[k] += st.cosk[std::size_t(mu) * kmax + k];
  }
  st.y.assign(model.K, 0.0);
  simd::kernels().symv(model.A.data(), model.K, st.X.data(), st.y.data());
  if (p.mode == GasMode::Pairwise) {
    st.z_re.resize(n);
    st.z_im.resize(n);
    st.L.resize(n);
    for (int mu = 0; mu < n; ++mu) {
      const auto pt = model.emap.at_theta(st.theta[mu]);
      st.z_re[mu] = pt.z.real();
      st.z_im[mu] = pt.z.imag();
      st.L[mu] = pt.log_abs_z_prime;
    }
  }
  double drift = 0;
  if (had) {
    for (int k = 0; k < kmax; ++k) drift = std::max(drift, std::abs(oldX[k] - st.X[k]));
    if (p.mode == GasMode::Grunsky && !model.trivial && p.s != 0.0 && static_cast<int>(oldY.size()) == model.K)
      for (int k = 0; k < model.K; ++k) drift = std::max(drift, std::abs(oldY[k] - st.y[k]));
  }
  return drift;
}

double log_target(const GasModel& model, const GasParams& p, const std::vector<double>& theta) {
  const int n = static_cast<int>(theta.size());
  for (int j = 0; j < n; ++j)
    if (!(theta[j] > 0 && theta[j] < M_PI) || (j > 0 && !(theta[j] > theta[j - 1]))) return NEG_INF;
  double pair = 0, site = 0;
  if (p.mode == GasMode::Grunsky) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) pair += std::log(std::abs(std::cos(theta[a]) - std::cos(theta[b])));
    std::vector<double> X(model.K, 0.0), c(model.K);
    double L = 0;
    for (int a = 0; a < n; ++a) {
      cos_multiples(theta[a], model.K, c.data());
      double dl = model.d0_half;
      for (int k = 0; k < model.K; ++k) {
        X[k] += c[k];
        dl += model.dk[k] * c[k];
      }
      L -= dl;
      site += std::log(std::sin(theta[a]));
    }
    double XAX = 0;
    for (int k = 0; k < model.K; ++k)
      for (int l = 0; l < model.K; ++l) XAX += X[k] * model.A[std::size_t(k) * model.K + l] * X[l];
    return p.beta * pair + (p.beta / 2.0) * p.s * (double(n) * n * model.log_2cap - 2.0 * XAX) +
           (1.0 - p.beta / 2.0) * p.s * L + site;
  }
  std::vector<EquilibriumMap::Point> pts(n);
  for (int a = 0; a < n; ++a) pts[a] = model.emap.at_theta(theta[a]);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b)
      pair += (1.0 - p.s) * std::log(std::abs(std::cos(theta[a]) - std::cos(theta[b]))) +
              p.s * std::log(std::abs(pts[a].z - pts[b].z));
    site += p.s * pts[a].log_abs_z_prime + std::log(std::sin(theta[a]));
  }
  return p.beta * pair + site;
}

double move_delta(const GasModel& model, const GasParams& p, const GasState& st, int mu, double theta_new) {
  Scratch sc(st.kmax);
  return evaluate(model, p, st, mu, theta_new, sc).delta;
}

double proposal_density(double x, double y, double step) {
  int hits = 0;
  for (double u : {y - x, -y - x, 2.0 * M_PI - y - x})
    if (std::abs(u) < step) ++hits;
  return hits / (2.0 * step);
}

double detailed_balance_defect(const GasModel& model, const GasParams& p, const GasState& st, int mu,
                               double theta_new, double step) {
  std::vector<double> ty = st.theta;
  ty[mu] = theta_new;
  const double lx = log_target(model, p, st.theta), ly = log_target(model, p, ty);
  if (!std::isfinite(ly)) return 0.0;  // zero flow both ways
  const double qf = proposal_density(st.theta[mu], theta_new, step);
  const double qb = proposal_density(theta_new, st.theta[mu], step);
  if (qf == 0.0 && qb == 0.0) return 0.0;  // out of reach both ways
  const GasState sy = make_state(model, p, ty);
  const double fwd = move_delta(model, p, st, mu, theta_new);
  const double bwd = move_delta(model, p, sy, mu, st.theta[mu]);
  const double lhs = lx + std::log(qf) + std::min(0.0, fwd);
  const double rhs = ly + std::log(qb) + std::min(0.0, bwd);
  return std::abs(lhs - rhs);
}

const StatSummary& ChainSummary::stat(const std::string& name) const {
  for (const auto& s : stats)
    if (s.name == name) return s;
  throw DomainError("ChainSummary", "no statistic named " + name);
}

std::string ChainSummary::to_csv() const {
  std::string out = "name,mean,variance,se_mean,ess\n";
  for (const auto& s : stats)
    out += s.name + "," + fmt(s.mean) + "," + fmt(s.variance) + "," + fmt(s.se_mean) + "," + fmt(s.ess) + "\n";
  return out;
}

std::string ChainSummary::series_csv() const {
  std::string out = "sweep";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  const std::size_t T = series.empty() ? 0 : series[0].size();
  for (std::size_t t = 0; t < T; ++t) {
    out += std::to_string(t);
    for (const auto& s : series) out += "," + fmt(s[t]);
    out += "\n";
  }
  return out;
}

nlohmann::json ChainSummary::to_json() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stats)
    st.push_back({{"name", s.name}, {"mean", s.mean}, {"variance", s.variance}, {"se_mean", s.se_mean}, {"ess", s.ess}});
  return {{"params", params_json(params)},
          {"acceptance", acceptance},
          {"final_step", final_step},
          {"min_ess", min_ess},
          {"cache_drift", cache_drift},
          {"batches", batches},
          {"adaptation_warning", adaptation_warning},
          {"stats", st}};
}

ChainSummary mcmc_run(const GasModel& model, const GasParams& p0, const std::vector<LinearStat>& requests) {
  p0.validate();
  GasParams p = p0;
  if (p.step == 0) p.step = M_PI / (2.0 * p.n);
  const int n = p.n;
  GasState st = initial_state(model, p);
  st.kmax = kmax_for(model, p, requests);
  refresh_cache(model, p, st);
  Scratch sc(st.kmax);

  std::seed_seq seq{std::uint32_t(p.seed), std::uint32_t(p.seed >> 32), std::uint32_t(p.chain),
                    std::uint32_t(p.chain >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  ChainSummary out;
  for (int k = 1; k <= p.k_stat; ++k) out.names.push_back("X" + std::to_string(k));
  out.names.insert(out.names.end(), {"XAX", "dX", "Bprime"});
  for (const auto& r : requests) out.names.push_back(r.name);
  std::vector<std::vector<double>> series(out.names.size());
  for (auto& s : series) s.reserve(p.sweeps);

  const auto& K = simd::kernels();
  std::vector<double> ytmp(model.K);
  double log_step = std::log(p.step);
  long accepted = 0, proposed = 0;
  const double c = 1.0 - p.beta / 2.0;
  const double bconst = (p.beta / 2.0) * double(n) * n * model.log_2cap - c * n * model.d0_half;

  for (long sweep = 0; sweep < p.burn_in + p.sweeps; ++sweep) {
    const bool burning = sweep < p.burn_in;
    int acc = 0;
    for (int mu = 0; mu < n; ++mu) {
      const double th = reflect(st.theta[mu] + p.step * (2.0 * unif(rng) - 1.0));
      const Move mv = evaluate(model, p, st, mu, th, sc);
      const double u = unif(rng);
      if (mv.delta > NEG_INF && std::log(u) < mv.delta) {
        apply(model, p, st, mu, th, mv, sc);
        ++acc;
      }
    }
    if (burning) {
      // Robbins-Monro on log step, frozen after burn-in
      log_step += (double(acc) / n - 0.35) / std::pow(sweep + 1.0, 0.6);
      log_step = std::clamp(log_step, std::log(1e-9), std::log(M_PI));
      p.step = std::exp(log_step);
      continue;
    }
    accepted += acc;
    proposed += n;
    if (p.checkpoint > 0 && (sweep - p.burn_in + 1) % p.checkpoint == 0)
      out.cache_drift = std::max(out.cache_drift, refresh_cache(model, p, st));

    const double* y = st.y.data();
    if (p.mode == GasMode::Pairwise || model.trivial || p.s == 0.0) {
      K.symv(model.A.data(), model.K, st.X.data(), ytmp.data());
      y = ytmp.data();
    }
    const double xax = K.dot(st.X.data(), y, model.K);
    const double dx = K.dot(st.X.data(), model.dk.data(), model.K);
    std::size_t i = 0;
    for (int k = 0; k < p.k_stat; ++k) series[i++].push_back(st.X[k]);
    series[i++].push_back(xax);
    series[i++].push_back(dx);
    series[i++].push_back(bconst - p.beta * xax - c * dx);
    for (const auto& r : requests) series[i++].push_back(K.dot(r.coeffs.data(), st.X.data(), r.coeffs.size()));
  }
  out.cache_drift = std::max(out.cache_drift, refresh_cache(model, p, st));

  out.params = p0;
  out.final_step = p.step;
  out.acceptance = proposed ? double(accepted) / proposed : 0.0;
  out.adaptation_warning = out.acceptance < 0.2 || out.acceptance > 0.5;
  out.min_ess = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < series.size(); ++j) {
    const Batch b = batch_means(series[j], out.batches);
    out.stats.push_back({out.names[j], b.mean, b.var, b.se, b.ess});
    const bool constant = b.var == 0.0;
    if (!constant) out.min_ess = std::min(out.min_ess, b.ess);
  }
  if (!std::isfinite(out.min_ess)) out.min_ess = double(p.sweeps);
  if (p.keep_series) out.series = std::move(series);
  return out;
}

std::vector<ChainSummary> mcmc_chains(const GasModel& model, const GasParams& p, int count,
                                      const std::vector<LinearStat>& requests) {
  std::vector<ChainSummary> out(count);
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mtx;
  auto worker = [&] {
    for (int i; (i = next++) < count;) {
      try {
        GasParams q = p;
        q.chain = p.chain + i;
        out[i] = mcmc_run(model, q, requests);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mtx);
        if (!err) err = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(count, std::thread::hardware_concurrency()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

nlohmann::json CltEstimate::to_json() const {
  return {{"mean", mean},
          {"mean_se", mean_se},
          {"variance", variance},
          {"variance_se", variance_se},
          {"predicted_mean", predicted_mean},
          {"predicted_variance", predicted_variance},
          {"min_ess", min_ess},
          {"chains", chains},
          {"statistics_warning", statistics_warning}};
}

CltEstimate linear_statistic_clt(const GasModel& model, const GasParams& p, const ChebSeries& u, int chains,
                                 const CltParams& prediction) {
  if (chains < 2) throw DomainError("linear_statistic_clt", "need at least two chains");
  LinearStat req{"u", u.coeffs};
  const auto runs = mcmc_chains(model, p, chains, {req});
  CltEstimate e;
  e.chains = chains;
  e.predicted_mean = prediction.mean_shift;
  e.predicted_variance = prediction.variance;
  e.min_ess = std::numeric_limits<double>::infinity();
  std::vector<double> means, vars;
  for (const auto& r : runs) {
    const auto& s = r.stat("u");
    means.push_back(s.mean);
    vars.push_back(s.variance);
    e.min_ess = std::min(e.min_ess, s.ess);
  }
  auto mean_sd = [](const std::vector<double>& v, double& m, double& se) {
    m = 0;
    for (double x : v) m += x;
    m /= v.size();
    double q = 0;
    for (double x : v) q += (x - m) * (x - m);
    se = std::sqrt(q / (v.size() - 1) / v.size());
  };
  mean_sd(means, e.mean, e.mean_se);
  mean_sd(vars, e.variance, e.variance_se);
  e.statistics_warning = e.min_ess < 100;
  return e;
}

std::string ThermoResult::csv() const {
  std::string out = "s,weight,bprime,se,acceptance\n";
  for (const auto& nd : nodes)
    out += fmt(nd.s) + "," + fmt(nd.weight) + "," + fmt(nd.bprime) + "," + fmt(nd.se) + "," + fmt(nd.acceptance) +
           "\n";
  return out;
}

nlohmann::json ThermoResult::to_json() const {
  nlohmann::json ns = nlohmann::json::array();
  for (const auto& nd : nodes)
    ns.push_back({{"s", nd.s}, {"weight", nd.weight}, {"bprime", nd.bprime}, {"se", nd.se}, {"acceptance", nd.acceptance}});
  return {{"estimate", estimate}, {"se", se}, {"nodes", ns}};
}

ThermoResult thermo_log_ratio(const GasModel& model, const GasParams& p, int s_nodes) {
  if (s_nodes < 1) throw DomainError("thermo_log_ratio", "need at least one node");
  const Rule r = gauss_legendre(s_nodes, 0.0, 1.0);
  ThermoResult out;
  out.nodes.resize(s_nodes);
  std::vector<GasParams> ps(s_nodes, p);
  for (int i = 0; i < s_nodes; ++i) {
    ps[i].s = r.x[i];
    ps[i].chain = p.chain + i;
  }
  std::vector<ChainSummary> runs(s_nodes);
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex mtx;
  auto worker = [&] {
    for (int i; (i = next++) < s_nodes;) {
      try {
        runs[i] = mcmc_run(model, ps[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mtx);
        if (!err) err = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(s_nodes, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  double var = 0;
  for (int i = 0; i < s_nodes; ++i) {
    const auto& b = runs[i].stat("Bprime");
    out.nodes[i] = {r.x[i], r.w[i], b.mean, b.se_mean, runs[i].acceptance};
    out.estimate += r.w[i] * b.mean;
    var += r.w[i] * r.w[i] * b.se_mean * b.se_mean;
  }
  out.se = std::sqrt(var);
  return out;
}

}  // namespace arcgas
