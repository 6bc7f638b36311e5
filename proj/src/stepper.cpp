#include "cgl/stepper.hpp"

namespace cgl {

Field linear_substep(const Field& U, double dt, const Params& p, const Grid& g,
                     const ProxSolveSettings& set) {
  return diffusion_resolvent(U, dt, p.lambda, p.alpha, g, set);
}

Field prox_substep(const Field& U, double dt, double eps, double r,
                   const ProxSolveSettings& set) {
  if (eps < 0.0) throw std::invalid_argument("prox_substep: eps must be >= 0");
  if (eps == 0.0) return U;
  return power_prox(U, r, dt * eps, set);
}

Field reaction_substep(const Field& U, double dt, const Params& p,
                       const Field* F_t, Equation eq,
                       const ProxSolveSettings& set) {
  Field N = (eq == Equation::ae_eps_mu) ? power_yosida(U, p.q, p.mu, set)
                                        : power_grad(U, p.q);
  Field out(U.u1 + dt * (p.kappa * N.u1 - p.beta * N.u2 + p.gamma * U.u1),
            U.u2 + dt * (p.kappa * N.u2 + p.beta * N.u1 + p.gamma * U.u2));
  if (F_t != nullptr) {
    out.u1 += dt * F_t->u1;
    out.u2 += dt * F_t->u2;
  }
  return out;
}

StepState advance(const StepState& state, double dt, const SchemeConfig& scheme,
                  const Params& p, const TimeSeriesField* forcing, const Grid& g,
                  const ProxSolveSettings& set) {
  const double eps = (scheme.equation == Equation::acgl) ? 0.0 : p.epsilon;
  const Field* F_t = forcing ? &forcing->at(state.t) : nullptr;

  Field U = state.U;
  if (scheme.splitting == Splitting::lie) {
    U = linear_substep(U, dt, p, g, set);
    U = prox_substep(U, dt, eps, p.r, set);
    U = reaction_substep(U, dt, p, F_t, scheme.equation, set);
  } else {
    U = linear_substep(U, 0.5 * dt, p, g, set);
    U = prox_substep(U, 0.5 * dt, eps, p.r, set);
    U = reaction_substep(U, dt, p, F_t, scheme.equation, set);
    U = prox_substep(U, 0.5 * dt, eps, p.r, set);
    U = linear_substep(U, 0.5 * dt, p, g, set);
  }
  return StepState{state.t + dt, std::move(U), state.step_index + 1};
}

}  // namespace cgl
