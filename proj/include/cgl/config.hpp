#pragma once

#include "cgl/params.hpp"
#include "cgl/stepper.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cgl {

enum class InitialKind { zero, sine_mode, gaussian, file };
enum class ForcingKind { zero, constant, file };

struct GridConfig {
  int dim = 1;
  std::vector<double> lengths;
  std::vector<long> n;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct InitialConfig {
  InitialKind kind = InitialKind::zero;
  double amplitude = 0.0;
  std::vector<long> mode_indices;
  std::string path;

  friend bool operator==(const InitialConfig&, const InitialConfig&) = default;
};

struct ForcingConfig {
  ForcingKind kind = ForcingKind::zero;
  double amplitude = 0.0;
  std::string path;

  friend bool operator==(const ForcingConfig&, const ForcingConfig&) = default;
};

struct DiagnosticsConfig {
  long record_every = 1;
  double blowup_threshold = 1e12;

  friend bool operator==(const DiagnosticsConfig&, const DiagnosticsConfig&) = default;
};

struct RunConfig {
  GridConfig grid;
  Params params;
  SchemeConfig scheme;
  InitialConfig initial;
  ForcingConfig forcing;
  DiagnosticsConfig diagnostics;
  long seed = 0;
  std::string out_path;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse or validation failure; `line` is 0 when no source line applies.
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int l, const std::string& msg)
      : std::runtime_error(l > 0 ? "line " + std::to_string(l) + ": " + msg : msg),
        line(l) {}
};

namespace cli {

/// Parses the flat-sectioned key-value document. Unknown sections or keys
/// are rejected; every invariant of the assembled config is checked.
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config: emits a document that parses back to an equal
/// config (doubles printed as shortest round-trip decimals).
std::string serialize_config(const RunConfig& c);

}  // namespace cli

}  // namespace cgl
