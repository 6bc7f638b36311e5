#pragma once

#include <stdexcept>
#include <string>

namespace cgl {

/// Equation coefficients plus the regularization knobs. The growth
/// exponents must satisfy 2 < q < r (both subcritical; in one and two
/// dimensions the critical exponent is infinite, so no upper bound
/// applies).
struct Params {
  double lambda = 1.0;   // diffusion strength, > 0
  double alpha = 0.0;    // dispersive diffusion coefficient
  double beta = 0.0;     // dispersive reaction coefficient
  double gamma = 0.0;    // linear gain/loss
  double kappa = 1.0;    // reaction strength, > 0
  double q = 3.0;        // reaction growth exponent
  double r = 4.0;        // dissipative regularization exponent, > q
  double epsilon = 0.0;  // strength of the extra dissipative term, >= 0
  double mu = 0.0;       // Yosida parameter for the regularized reaction, >= 0

  friend bool operator==(const Params&, const Params&) = default;
};

/// Full invariant check, as enforced on configuration input. Returns an
/// empty string when valid, otherwise a message naming the violated
/// constraint. Library code deliberately accepts kappa = 0 (pure
/// dissipative runs used by the property tests); configs do not.
inline std::string validate_params(const Params& p) {
  if (!(p.lambda > 0.0)) return "lambda must satisfy lambda > 0";
  if (!(p.kappa > 0.0)) return "kappa must satisfy kappa > 0";
  if (!(p.q > 2.0)) return "q must satisfy 2 < q < r";
  if (!(p.r > p.q)) return "r must satisfy 2 < q < r";
  if (!(p.epsilon >= 0.0)) return "epsilon must satisfy epsilon >= 0";
  if (!(p.mu >= 0.0)) return "mu must satisfy mu >= 0";
  return {};
}

}  // namespace cgl
