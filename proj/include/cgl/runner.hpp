#pragma once

#include "cgl/config.hpp"
#include "cgl/diagnostics.hpp"
#include "cgl/stepper.hpp"

#include <optional>
#include <vector>

namespace cgl {

enum class RunStatus { completed, blown_up };

struct RunResult {
  std::vector<StepState> trajectory;  // ends at the last finite state
  std::vector<EnergyRecord> records;
  RunStatus status = RunStatus::completed;
  double t_detect = 0.0;
};

Grid grid_from_config(const GridConfig& gc);

Field initial_from_config(const InitialConfig& ic, const Grid& g);

/// Empty optional for zero forcing (skips the forcing work entirely).
std::optional<TimeSeriesField> forcing_from_config(const ForcingConfig& fc,
                                                   const Grid& g, double t_end);

/// Integrates from the configured initial state to t_end or until blow-up
/// is detected (combined energy above the threshold or a non-finite
/// field). Records are emitted at step 0, every record_every steps, at the
/// final step, and at detection. Deterministic: identical configs produce
/// identical results.
RunResult run_simulation(const RunConfig& config);

}  // namespace cgl
