#pragma once

#include "cgl/convex_ops.hpp"
#include "cgl/grid.hpp"
#include "cgl/params.hpp"

namespace cgl {

/// Which evolution equation a run integrates: the full equation, the
/// auxiliary equation with the extra dissipative power term, or the
/// further approximation whose reaction nonlinearity is Yosida-regularized.
enum class Equation { acgl, ae_eps, ae_eps_mu };

enum class Splitting { lie, strang };

struct SchemeConfig {
  Equation equation = Equation::acgl;
  double dt = 1e-3;
  double t_end = 1.0;
  Splitting splitting = Splitting::lie;
  bool explicit_nonmonotone = true;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

struct StepState {
  double t = 0.0;
  Field U;
  long step_index = 0;
};

/// Backward-Euler flow of the monotone linear part: the resolvent of
/// dt (lambda + alpha I) (-Delta_h).
Field linear_substep(const Field& U, double dt, const Params& p, const Grid& g,
                     const ProxSolveSettings& set = {});

/// Backward-Euler flow of the dissipative power term; identity when eps = 0.
Field prox_substep(const Field& U, double dt, double eps, double r,
                   const ProxSolveSettings& set = {});

/// Explicit Euler update of the non-monotone reaction part,
/// U + dt [(kappa + beta I) N(U) + gamma U + F], where N is the power
/// gradient (or its Yosida regularization for the mu-approximate equation).
Field reaction_substep(const Field& U, double dt, const Params& p,
                       const Field* F_t, Equation eq,
                       const ProxSolveSettings& set = {});

/// One time step of the splitting scheme. Lie composes
/// linear -> prox -> reaction on the full dt; Strang symmetrizes the
/// monotone substeps around the reaction with half steps.
StepState advance(const StepState& state, double dt, const SchemeConfig& scheme,
                  const Params& p, const TimeSeriesField* forcing, const Grid& g,
                  const ProxSolveSettings& set = {});

}  // namespace cgl
