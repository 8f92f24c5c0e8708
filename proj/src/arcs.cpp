#include "arcgas/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "arcgas/errors.hpp"

namespace arcgas {

namespace {

constexpr cd I1{0.0, 1.0};

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

struct CircleGeom {
  cd center;
  double rho;
  double w;  // pi - alpha
  explicit CircleGeom(double alpha)
      : center(0.0, std::cos(alpha) / std::sin(alpha)), rho(1.0 / std::sin(alpha)), w(M_PI - alpha) {}
  double angle(double t) const { return M_PI / 2 - t * w; }
};

// q(t) = (1 - t^2) p(t), ascending coefficients
std::vector<double> q_coeffs(const std::vector<double>& p) {
  std::vector<double> q(p.size() + 2, 0.0);
  for (size_t j = 0; j < p.size(); ++j) {
    q[j] += p[j];
    q[j + 2] -= p[j];
  }
  return q;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

double horner_deriv(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (size_t j = c.size(); j-- > 1;) v = v * t + double(j) * c[j];
  return v;
}

// (q(s) - q(t)) / (s - t) without cancellation
double divided_difference(const std::vector<double>& c, double s, double t) {
  double d = 0.0, spow = 1.0, acc = 0.0;
  for (size_t j = 1; j < c.size(); ++j) {
    d = spow + t * d;  // sum_{i<j} s^i t^{j-1-i}
    acc += c[j] * d;
    spow *= s;
  }
  return acc;
}

bool segments_cross(cd a, cd b, cd c, cd d) {
  auto orient = [](cd p, cd q, cd r) {
    return (q.real() - p.real()) * (r.imag() - p.imag()) - (q.imag() - p.imag()) * (r.real() - p.real());
  };
  double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

cd ArcSpec::point(double t) const {
  return std::visit(
      [t](auto&& f) -> cd {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Interval>) {
          return {t, 0.0};
        } else if constexpr (std::is_same_v<F, CircularArc>) {
          CircleGeom g(f.alpha);
          if (t == 1.0) return {1.0, 0.0};
          if (t == -1.0) return {-1.0, 0.0};
          return g.center + g.rho * std::polar(1.0, g.angle(t));
        } else {
          auto q = q_coeffs(f.coeffs);
          return {t, f.amplitude * horner(q, t)};
        }
      },
      family);
}

cd ArcSpec::tangent(double t) const {
  return std::visit(
      [t](auto&& f) -> cd {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Interval>) {
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<F, CircularArc>) {
          CircleGeom g(f.alpha);
          return -I1 * g.w * g.rho * std::polar(1.0, g.angle(t));
        } else {
          auto q = q_coeffs(f.coeffs);
          return {1.0, f.amplitude * horner_deriv(q, t)};
        }
      },
      family);
}

cd ArcSpec::chord(double s, double t) const {
  return std::visit(
      [s, t](auto&& f) -> cd {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Interval>) {
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<F, CircularArc>) {
          CircleGeom g(f.alpha);
          return g.rho * std::polar(1.0, 0.5 * (g.angle(s) + g.angle(t))) * (-I1 * g.w) *
                 sinc(0.5 * g.w * (s - t));
        } else {
          auto q = q_coeffs(f.coeffs);
          return {1.0, f.amplitude * divided_difference(q, s, t)};
        }
      },
      family);
}

cd ArcSpec::frame_offset() const {
  if (auto c = std::get_if<CircularArc>(&family); c && c->frame == Frame::UnitCircleArc)
    return {std::cos(c->alpha), 0.0};
  return {0.0, 0.0};
}

cd ArcSpec::frame_scale() const {
  if (auto c = std::get_if<CircularArc>(&family); c && c->frame == Frame::UnitCircleArc)
    return {0.0, std::sin(c->alpha)};
  return {1.0, 0.0};
}

bool ArcSpec::is_interval() const {
  if (std::holds_alternative<Interval>(family)) return true;
  if (auto p = std::get_if<Perturbed>(&family)) {
    if (p->amplitude == 0.0) return true;
    return std::all_of(p->coeffs.begin(), p->coeffs.end(), [](double c) { return c == 0.0; });
  }
  return false;
}

ArcSpec ArcSpec::homotopy(double lambda) const {
  if (lambda >= 1.0) return *this;
  return std::visit(
      [lambda](auto&& f) -> ArcSpec {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Interval>) {
          return make_interval();
        } else if constexpr (std::is_same_v<F, CircularArc>) {
          if (lambda <= 0.0) return make_interval();
          return ArcSpec{CircularArc{M_PI - lambda * (M_PI - f.alpha), Frame::EndpointNormalized}};
        } else {
          return ArcSpec{Perturbed{f.coeffs, lambda * f.amplitude}};
        }
      },
      family);
}

nlohmann::json ArcSpec::to_json() const {
  return std::visit(
      [](auto&& f) -> nlohmann::json {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Interval>) {
          return {{"family", "interval"}};
        } else if constexpr (std::is_same_v<F, CircularArc>) {
          return {{"family", "circular"},
                  {"alpha", f.alpha},
                  {"frame", f.frame == Frame::UnitCircleArc ? "unit" : "endpoint"}};
        } else {
          return {{"family", "perturbed"}, {"coeffs", f.coeffs}, {"amplitude", f.amplitude}};
        }
      },
      family);
}

ArcSpec ArcSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family")) throw DomainError("arcs", "config lacks a \"family\" field");
  std::string fam = j.at("family").get<std::string>();
  if (fam == "interval") return make_interval();
  if (fam == "circular") {
    Frame fr = Frame::EndpointNormalized;
    if (j.contains("frame")) {
      auto s = j.at("frame").get<std::string>();
      if (s == "unit")
        fr = Frame::UnitCircleArc;
      else if (s != "endpoint")
        throw DomainError("arcs", "unknown frame '" + s + "'");
    }
    return make_circular_arc(j.at("alpha").get<double>(), fr);
  }
  if (fam == "perturbed")
    return make_perturbed_arc(j.at("coeffs").get<std::vector<double>>(), j.at("amplitude").get<double>());
  throw DomainError("arcs", "unknown family '" + fam + "'");
}

std::string ArcSpec::canonical() const { return to_json().dump(); }

ArcSpec make_interval() { return ArcSpec{Interval{}}; }

ArcSpec make_circular_arc(double alpha, Frame frame) {
  if (!(alpha > 0.0 && alpha < M_PI)) throw DomainError("arcs", "circular arc needs 0 < alpha < pi");
  return ArcSpec{CircularArc{alpha, frame}};
}

ArcSpec make_perturbed_arc(std::vector<double> coeffs, double amplitude) {
  if (coeffs.empty()) coeffs = {0.0};
  if (!std::isfinite(amplitude)) throw DomainError("arcs", "amplitude must be finite");
  ArcSpec a{Perturbed{std::move(coeffs), amplitude}};
  auto diag = validate(a, 512);
  if (!diag.ok) throw DomainError("arcs", "perturbed arc rejected: " + diag.message);
  return a;
}

std::vector<ArcSample> sample_arc(const ArcSpec& spec, int grid_size) {
  std::vector<ArcSample> out(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    double t = -1.0 + 2.0 * i / (grid_size - 1);
    if (i == grid_size - 1) t = 1.0;
    out[i] = {t, spec.point(t), spec.tangent(t)};
  }
  return out;
}

ArcDiagnostics validate(const ArcSpec& spec, int grid_size) {
  ArcDiagnostics d;
  d.grid_size = grid_size;
  if (grid_size < 64) {
    d.message = "grid_size must be at least 64";
    return d;
  }
  auto s = sample_arc(spec, grid_size);
  d.endpoint_residual = std::max(std::abs(spec.point(-1.0) + 1.0), std::abs(spec.point(1.0) - 1.0));
  d.min_abs_tangent = std::numeric_limits<double>::infinity();
  for (auto& a : s) d.min_abs_tangent = std::min(d.min_abs_tangent, std::abs(a.tangent));
  d.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i)
    for (int j = i + 2; j < grid_size; ++j) {
      d.min_pairwise_distance = std::min(d.min_pairwise_distance, std::abs(s[i].point - s[j].point));
      if (j + 1 < grid_size && i + 1 < j &&
          segments_cross(s[i].point, s[i + 1].point, s[j].point, s[j + 1].point))
        d.polyline_self_intersects = true;
    }
  std::ostringstream msg;
  bool ok = true;
  if (!(d.min_abs_tangent > 0.0) || !std::isfinite(d.min_abs_tangent)) {
    ok = false;
    msg << "vanishing tangent (min |gamma'| = " << d.min_abs_tangent << "); ";
  }
  if (d.polyline_self_intersects || !(d.min_pairwise_distance > 0.0)) {
    ok = false;
    msg << "self-intersection detected on the sample grid; ";
  }
  if (d.endpoint_residual > 1e-14) {
    ok = false;
    msg << "endpoint residual " << d.endpoint_residual << "; ";
  }
  d.ok = ok;
  d.message = ok ? "ok" : msg.str();
  return d;
}

void require_valid(const ArcSpec& spec, int grid_size) {
  auto d = validate(spec, grid_size);
  if (!d.ok) throw DomainError("arcs", d.message);
}

}  // namespace arcgas
