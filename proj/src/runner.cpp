#include "cgl/runner.hpp"

#include "cgl/convex_ops.hpp"
#include "cgl/field_io.hpp"

#include <cmath>

namespace cgl {

Grid grid_from_config(const GridConfig& gc) {
  std::vector<Index> n(gc.n.begin(), gc.n.end());
  return make_grid(gc.dim, gc.lengths, n);
}

Field initial_from_config(const InitialConfig& ic, const Grid& g) {
  switch (ic.kind) {
    case InitialKind::zero:
      return Field::zero(g.size());
    case InitialKind::file:
      return io::read_field(ic.path, g);
    case InitialKind::sine_mode: {
      Field f = Field::zero(g.size());
      const double pi = EIGEN_PI;
      if (g.dim == 1) {
        const double k = static_cast<double>(ic.mode_indices[0]);
        for (Index i = 0; i < g.n[0]; ++i)
          f.u1[i] = ic.amplitude * std::sin(k * pi * g.coord(0, i) / g.lengths[0]);
      } else {
        const double kx = static_cast<double>(ic.mode_indices[0]);
        const double ky = static_cast<double>(ic.mode_indices[1]);
        for (Index j = 0; j < g.n[1]; ++j)
          for (Index i = 0; i < g.n[0]; ++i)
            f.u1[i + g.n[0] * j] =
                ic.amplitude * std::sin(kx * pi * g.coord(0, i) / g.lengths[0]) *
                std::sin(ky * pi * g.coord(1, j) / g.lengths[1]);
      }
      return f;
    }
    case InitialKind::gaussian: {
      // centered bump, width an eighth of each side
      Field f = Field::zero(g.size());
      const auto bump = [&](int axis, Index i) {
        const double c = 0.5 * g.lengths[axis];
        const double sigma = g.lengths[axis] / 8.0;
        const double d = g.coord(axis, i) - c;
        return std::exp(-0.5 * d * d / (sigma * sigma));
      };
      if (g.dim == 1) {
        for (Index i = 0; i < g.n[0]; ++i) f.u1[i] = ic.amplitude * bump(0, i);
      } else {
        for (Index j = 0; j < g.n[1]; ++j)
          for (Index i = 0; i < g.n[0]; ++i)
            f.u1[i + g.n[0] * j] = ic.amplitude * bump(0, i) * bump(1, j);
      }
      return f;
    }
  }
  throw std::logic_error("initial_from_config: unreachable");
}

std::optional<TimeSeriesField> forcing_from_config(const ForcingConfig& fc,
                                                   const Grid& g, double t_end) {
  switch (fc.kind) {
    case ForcingKind::zero:
      return std::nullopt;
    case ForcingKind::constant: {
      TimeSeriesField F;
      F.times = {0.0};
      Field f = Field::zero(g.size());
      f.u1 += fc.amplitude;
      F.values.push_back(std::move(f));
      F.t_end = t_end;
      return F;
    }
    case ForcingKind::file:
      return io::read_series(fc.path, g);
  }
  throw std::logic_error("forcing_from_config: unreachable");
}

RunResult run_simulation(const RunConfig& config) {
  const Grid g = grid_from_config(config.grid);
  const Field U0 = initial_from_config(config.initial, g);
  const auto forcing =
      forcing_from_config(config.forcing, g, config.scheme.t_end);
  const ProxSolveSettings set;

  RunResult res;
  StepState state{0.0, U0, 0};
  res.records.push_back(make_energy_record(state.U, state.t, config.params, g));
  res.trajectory.push_back(state);

  const double t_end = config.scheme.t_end;
  const double dt = config.scheme.dt;
  const double threshold = config.diagnostics.blowup_threshold;
  const long every = config.diagnostics.record_every;

  while (state.t < t_end - 1e-12 * t_end) {
    const double dt_eff = std::min(dt, t_end - state.t);
    StepState next = advance(state, dt_eff, config.scheme, config.params,
                             forcing ? &*forcing : nullptr, g, set);

    const bool finite = next.U.all_finite();
    const double combined =
        finite ? l2_norm_sq(next.U, g) + 2.0 * dirichlet_energy(next.U, g)
               : std::numeric_limits<double>::quiet_NaN();
    if (!finite || combined > threshold) {
      res.status = RunStatus::blown_up;
      res.t_detect = next.t;
      res.records.push_back(make_energy_record(next.U, next.t, config.params, g));
      if (finite) res.trajectory.push_back(next);
      return res;
    }

    state = std::move(next);
    res.trajectory.push_back(state);
    if (state.step_index % every == 0)
      res.records.push_back(make_energy_record(state.U, state.t, config.params, g));
  }

  if (res.records.back().t != state.t)
    res.records.push_back(make_energy_record(state.U, state.t, config.params, g));
  return res;
}

}  // namespace cgl
