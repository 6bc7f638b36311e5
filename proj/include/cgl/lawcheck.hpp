#pragma once

#include "cgl/convex_ops.hpp"
#include "cgl/grid.hpp"
#include "cgl/params.hpp"

#include <string>
#include <vector>

namespace cgl::law {

/// Outcome of sampling one inequality. worst_slack is the minimum of
/// rhs - lhs over all samples; a check passes when no sample dips below
/// -1e-12 times the local scale.
struct InequalityReport {
  std::string name;
  long samples = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  long violations = 0;
  std::string worst_case_inputs;
};

inline constexpr double kSlackRelTol = 1e-12;

/// Records one (lhs, rhs) observation; a violation is lhs > rhs + tol with
/// tol = kSlackRelTol * scale.
void observe(InequalityReport& rep, double lhs, double rhs, double scale,
             const std::string& inputs);

/// The constant d_r of the pointwise difference bound:
/// (r-1)/2 for r >= 4, 3/2 for 3 < r < 4, 1 for 2 < r <= 3.
double diff_bound_factor(double r);

struct BoundPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Pointwise bound for differences of the power map on R^2:
/// |(|U|^(r-2) u_i - |V|^(r-2) v_i)(x_j - y_j)|
///   <= d_r (|U|^(r-2) + |V|^(r-2)) |U-V| |X-Y|.
/// `factor` overrides d_r when nonnegative (harness fault injection).
BoundPair pointwise_diff_bound(const Eigen::Vector2d& U, const Eigen::Vector2d& V,
                               const Eigen::Vector2d& X, const Eigen::Vector2d& Y,
                               double r, int i, int j, double factor = -1.0);

/// Randomized sweep of the pointwise bound over quadruples with components
/// uniform in [-5,5], all four (i,j) pairs per quadruple.
InequalityReport pointwise_diff_bound_report(const std::vector<double>& r_values,
                                             long samples_per_r,
                                             unsigned long seed,
                                             double factor = -1.0);

/// Resolvent of the power-q energy is nonexpansive in every L^r norm:
/// compares |prox U1 - prox U2|_{L^r} against |U1 - U2|_{L^r}.
InequalityReport accretivity_check(const Field& U1, const Field& U2, double q,
                                   double mu, double r, const Grid& g,
                                   const ProxSolveSettings& set = {});

/// Both interpolation estimates between L^2 and L^r with
/// theta = (q-2)/(r-2): the L^q bound and the L^{2(q-1)} bound.
InequalityReport interpolation_check(const Field& U, double q, double r,
                                     const Grid& g);

/// Interpolation exponent of the embedding bound: 1/2 in one and two
/// dimensions, (2* - q)/(2(N-2)) above.
double embedding_xi(int dim, double q);

/// Exponent in the second-order embedding bound for |U|_{2(q-1)}: 2 in one
/// and two dimensions (and for small q above), else 2q - N(q-2).
double embedding_theta(int dim, double q);

/// Discrete surrogate for the embedding constant: max over random fields of
/// the ratio making |U|_q^q <= Cb^(q/2) |grad U|^(2(q-xi)/q) |U|^(2 xi/q)
/// hold, reported as Cb. Deterministic given the seed.
double estimate_cb(const Grid& g, double q, long samples, unsigned long seed);

/// Discrete surrogate for the constant k in
/// |U|_{2(q-1)}^{2(q-1)} <= k (|grad U|^(2q-2) + |U|^{2(q-1)}) (the form
/// it takes in one and two dimensions). Deterministic given the seed.
double estimate_embedding_k(const Grid& g, double q, long samples,
                            unsigned long seed);

/// Mixed-regime random field: rough i.i.d. uniform entries at amplitudes
/// 0.1 / 1 / 10 and smooth low-mode sine combinations, cycled by index.
Field random_field(const Grid& g, unsigned long seed, long index);

/// One report per law: the pointwise difference bound, accretivity,
/// interpolation, the four angle identities, gradient-pair positivity,
/// the Yosida sandwich and norm bound, the scaled pairing bound, prox
/// nonexpansiveness, and the Moreau-envelope infimum bound.
std::vector<InequalityReport> full_suite(const Grid& g, const Params& p,
                                         long samples, unsigned long seed,
                                         double diff_bound_factor_override = -1.0);

std::string to_markdown(const std::vector<InequalityReport>& reports);
std::string to_csv(const std::vector<InequalityReport>& reports);

inline bool all_pass(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.violations != 0) return false;
  return true;
}

}  // namespace cgl::law
