#pragma once

#include "cgl/grid.hpp"
#include "cgl/params.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace cgl {

/// Per-time snapshot of every quantity the a priori estimates bound.
/// `combined` is the blow-up functional |U|^2 + 2 phi(U).
struct EnergyRecord {
  double t = 0.0;
  double l2_sq = 0.0;
  double phi = 0.0;
  double psi_q = 0.0;
  double psi_r = 0.0;
  double dphi_l2 = 0.0;
  double dpsi_q_l2 = 0.0;
  double combined = 0.0;
};

EnergyRecord make_energy_record(const Field& U, double t, const Params& p,
                                const Grid& g);

struct BlowupStatus {
  bool blown_up = false;
  double t_detect = 0.0;
};

/// First record whose combined energy exceeds the threshold or carries a
/// non-finite value. Records must be time-ordered.
BlowupStatus scan_blowup(const std::vector<EnergyRecord>& records,
                         double threshold);

/// Hitting time of the comparison ODE y' = m(y) from y0 to y0 + 1, i.e.
/// the integral of 1/m over [y0, y0+1], by adaptive Simpson quadrature.
/// The majorant must be positive and non-decreasing on the interval.
double hitting_time(double y0, const std::function<double(double)>& majorant,
                    double rel_tol = 1e-10);

/// Constants of the small-data global existence estimate. Cb_est and
/// C0_est are randomized discrete surrogates for domain-dependent
/// embedding constants; everything downstream of them is an estimate.
struct SmallDataConstants {
  double delta = 0.0;
  double eps0 = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double L = 0.0;
  double eps1 = 0.0;
  double Cb_est = 0.0;
  double C0_est = 0.0;
};

/// delta = min(lambda, |gamma|), eps0 = (delta/(kappa Cb^(q/2) 2^(q/2)))^(2/(q-2)),
/// L1 = 1 + 1/(1 - e^(-delta/2)), L2 = (L1 + L1^2/2)/delta,
/// L = 2 + L1^2 + (1/lambda + C0 (L1^2 + L2))/(1 - e^(-2|gamma|)),
/// eps1 = eps0/L. Requires gamma < 0.
SmallDataConstants small_data_constants(const Params& p, const Grid& g,
                                        int samples = 1000,
                                        unsigned long seed = 2026);

/// Weight of the Young step splitting the embedding bound
/// Cb^(q/2) X^(2(q-xi)/q) Y^(2xi/q) <= (lambda/2) X^2 + cbar Y^2.
double young_embedding_weight(double Cb, double lambda, double q, double xi);

/// The nondecreasing majorant of the combined-energy differential
/// inequality; coefficients come from the params and the estimated
/// constants.
double energy_growth_rate(double s, const Params& p,
                          const SmallDataConstants& c);

/// Local existence horizon: time for y' = 2 l(y) to climb one unit from y0.
double local_time_estimate(double y0, const Params& p,
                           const SmallDataConstants& c);

/// Sup over unit windows of the time integral of a nonnegative step
/// function: vals[i] on [breaks[i], breaks[i+1]), zero outside. The sup is
/// attained at a breakpoint of the piecewise-linear window integral.
double windowed_sup_integral(const std::vector<double>& breaks,
                             const std::vector<double>& vals);

/// Sup over unit time windows of the L2-in-time norm of the zero-extended
/// forcing: sqrt(sup_s int_s^{s+1} |F(t)|^2 dt), piecewise-constant in time.
double triple_norm(const TimeSeriesField& F, const Grid& g);

/// True iff (1/2) l2_sq + phi < L r^2 at every record.
bool small_data_check(const std::vector<EnergyRecord>& records,
                      const SmallDataConstants& c, double r_small);

struct GronwallResult {
  bool hypothesis_ok = false;
  bool conclusion_ok = false;
  double worst_hypothesis_slack = 0.0;
  double worst_conclusion_slack = 0.0;

  bool passed() const { return hypothesis_ok && conclusion_ok; }
};

/// Checks the decay estimate j(t) <= j(0) e^(-delta t) + K/(1-e^(-delta)) |||f|||_1
/// on a sampled series, after numerically verifying the differential
/// hypothesis dj/dt + delta j <= K |f| via forward difference quotients
/// (with an O(dt) discretization allowance). A failed hypothesis is
/// reported as such and the conclusion is not blamed.
GronwallResult gronwall_check(const std::vector<double>& times,
                              const std::vector<double>& j, double delta,
                              double K, const std::vector<double>& f);

}  // namespace cgl
