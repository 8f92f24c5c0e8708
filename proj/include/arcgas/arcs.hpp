#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace arcgas {

using cd = std::complex<double>;

struct Interval {};

enum class Frame { EndpointNormalized, UnitCircleArc };

struct CircularArc {
  double alpha;
  Frame frame = Frame::EndpointNormalized;
};

// gamma(t) = t + i*amplitude*(1 - t^2)*p(t), p given by ascending coefficients
struct Perturbed {
  std::vector<double> coeffs;
  double amplitude;
};

using ArcFamily = std::variant<Interval, CircularArc, Perturbed>;

struct ArcSpec {
  ArcFamily family;

  // normalized arc, endpoints -1 and 1
  cd point(double t) const;
  cd tangent(double t) const;
  // (gamma(s) - gamma(t)) / (s - t), stable as s -> t
  cd chord(double s, double t) const;
  cd chord_plus(double t) const { return chord(t, 1.0); }
  cd chord_minus(double t) const { return chord(t, -1.0); }

  // affine frame: physical = frame_offset() + frame_scale() * normalized
  cd frame_offset() const;
  cd frame_scale() const;
  cd physical_point(double t) const { return frame_offset() + frame_scale() * point(t); }

  bool is_interval() const;
  // straight-line homotopy to the interval; lambda = 1 is this arc
  ArcSpec homotopy(double lambda) const;

  nlohmann::json to_json() const;
  static ArcSpec from_json(const nlohmann::json& j);
  std::string canonical() const;
};

struct ArcSample {
  double t;
  cd point;
  cd tangent;
};

ArcSpec make_interval();
ArcSpec make_circular_arc(double alpha, Frame frame = Frame::EndpointNormalized);
ArcSpec make_perturbed_arc(std::vector<double> coeffs, double amplitude);

std::vector<ArcSample> sample_arc(const ArcSpec& spec, int grid_size);

struct ArcDiagnostics {
  int grid_size = 0;
  double min_pairwise_distance = 0;  // over non-adjacent samples
  double min_abs_tangent = 0;
  double endpoint_residual = 0;
  bool polyline_self_intersects = false;
  bool ok = false;
  std::string message;
};

ArcDiagnostics validate(const ArcSpec& spec, int grid_size);

// throws DomainError with the diagnostic message if validation fails
void require_valid(const ArcSpec& spec, int grid_size = 512);

}  // namespace arcgas
