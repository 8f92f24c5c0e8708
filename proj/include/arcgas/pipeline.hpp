#pragma once

#include <json.hpp>
#include <string>

#include "arcgas/energies.hpp"
#include "arcgas/gas.hpp"

namespace arcgas {

struct Settings {
  int grunsky_n = 64;
  int quad_m = 512;
  int conformal_n = 2048;
  int open_m = 512;
  std::string cache_dir;  // empty disables the cache

  void validate() const;
  nlohmann::json to_json() const;
};

struct Analysis {
  ArcSpec arc{Interval{}};
  Settings settings;
  std::string hash;
  bool from_cache = false;
  OpenedCurve curve;
  LaurentMap map;
  EquilibriumData eq;
  GrunskyMatrix B;
  ArcVectors v;
  EndpointDerivatives hp{1, 1};
  EnergyReport report;

  GasModel gas_model(int K = 0) const;  // K = 0 uses the full truncation
};

// FNV-1a over the canonical arc text and the numeric settings, hex
std::string analysis_hash(const ArcSpec& arc, const Settings& s);

Analysis analyze(const ArcSpec& arc, const Settings& s = {});

// command, arc hash and settings; no timestamps so reruns are byte-identical
nlohmann::json manifest(const std::string& command, const ArcSpec& arc, const Settings& s,
                        const nlohmann::json& extra = nlohmann::json::object());

// Chebyshev series in the equilibrium parameter of a function on the arc
ChebSeries pullback(const EquilibriumData& eq, const std::function<double(cd)>& u, int N);

ArcSpec load_arc(const std::string& path);

}  // namespace arcgas
