#include "cgl/diagnostics.hpp"

#include "cgl/convex_ops.hpp"
#include "cgl/lawcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cgl {

EnergyRecord make_energy_record(const Field& U, double t, const Params& p,
                                const Grid& g) {
  EnergyRecord rec;
  rec.t = t;
  rec.l2_sq = l2_norm_sq(U, g);
  rec.phi = dirichlet_energy(U, g);
  rec.psi_q = power_energy(U, p.q, g);
  rec.psi_r = power_energy(U, p.r, g);
  rec.dphi_l2 = l2_norm(neg_laplacian(U, g), g);
  rec.dpsi_q_l2 = l2_norm(power_grad(U, p.q), g);
  rec.combined = rec.l2_sq + 2.0 * rec.phi;
  return rec;
}

BlowupStatus scan_blowup(const std::vector<EnergyRecord>& records,
                         double threshold) {
  for (const auto& rec : records) {
    const bool finite = std::isfinite(rec.l2_sq) && std::isfinite(rec.phi) &&
                        std::isfinite(rec.psi_q) && std::isfinite(rec.psi_r) &&
                        std::isfinite(rec.dphi_l2) &&
                        std::isfinite(rec.dpsi_q_l2) &&
                        std::isfinite(rec.combined);
    if (!finite || rec.combined > threshold) return {true, rec.t};
  }
  return {false, 0.0};
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double tol = rel_tol * std::max(std::abs(whole), 1e-300);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double hitting_time(double y0, const std::function<double(double)>& majorant,
                    double rel_tol) {
  if (!(y0 >= 0.0)) throw std::invalid_argument("hitting_time: y0 must be >= 0");
  return integrate([&](double s) { return 1.0 / majorant(s); }, y0, y0 + 1.0,
                   rel_tol);
}

double young_embedding_weight(double Cb, double lambda, double q, double xi) {
  const double a = (q - xi) / q;
  const double b = xi / q;
  const double t = lambda / (2.0 * a);
  const double u = std::pow(std::pow(Cb, q / 2.0) * std::pow(t, -a), 1.0 / b);
  return b * u;
}

double energy_growth_rate(double s, const Params& p,
                          const SmallDataConstants& c) {
  const double gamma_plus = std::max(0.0, p.gamma);
  // xi and theta coincide for the supported dimensions (1 and 2)
  const double xi = law::embedding_xi(2, p.q);
  const double cbar = young_embedding_weight(c.Cb_est, p.lambda, p.q, xi);
  const double theta = law::embedding_theta(2, p.q);
  const double rho = 1.0 + 2.0 * (p.q - 2.0) / theta;
  return 2.0 * (gamma_plus + 1.0) * s +
         p.kappa * std::pow(0.5 * p.lambda + 2.0 * cbar, 0.5 * p.q) * 2.0 *
             std::pow(s, 0.5 * p.q) +
         c.C0_est * (std::pow(2.0 * s, 2.0 * (p.q - 1.0)) + std::pow(s, rho));
}

double local_time_estimate(double y0, const Params& p,
                           const SmallDataConstants& c) {
  return hitting_time(y0, [&](double s) { return 2.0 * energy_growth_rate(s, p, c); });
}

SmallDataConstants small_data_constants(const Params& p, const Grid& g,
                                        int samples, unsigned long seed) {
  if (!(p.gamma < 0.0))
    throw std::invalid_argument("small_data_constants: gamma must be negative");
  SmallDataConstants c;
  c.delta = std::min(p.lambda, std::abs(p.gamma));
  c.Cb_est = law::estimate_cb(g, p.q, samples, seed);
  const double k_est = law::estimate_embedding_k(g, p.q, samples, seed + 1);
  c.C0_est = k_est * (p.kappa * p.kappa + p.beta * p.beta) / p.lambda *
             std::pow(2.0, p.q - 1.0);
  c.eps0 = std::pow(
      c.delta / (p.kappa * std::pow(c.Cb_est, 0.5 * p.q) * std::pow(2.0, 0.5 * p.q)),
      2.0 / (p.q - 2.0));
  c.L1 = 1.0 + 1.0 / (1.0 - std::exp(-0.5 * c.delta));
  c.L2 = (c.L1 + 0.5 * c.L1 * c.L1) / c.delta;
  c.L = 2.0 + c.L1 * c.L1 +
        (1.0 / p.lambda + c.C0_est * (c.L1 * c.L1 + c.L2)) /
            (1.0 - std::exp(-2.0 * std::abs(p.gamma)));
  c.eps1 = c.eps0 / c.L;
  return c;
}

double windowed_sup_integral(const std::vector<double>& breaks,
                             const std::vector<double>& vals) {
  if (breaks.size() != vals.size() + 1 || vals.empty())
    throw std::invalid_argument("windowed_sup_integral: need one value per interval");
  const auto window_integral = [&](double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double lo = std::max(s, breaks[i]);
      const double hi = std::min(s + 1.0, breaks[i + 1]);
      if (hi > lo) acc += vals[i] * (hi - lo);
    }
    return acc;
  };
  double best = window_integral(0.0);
  for (double b : breaks) {
    best = std::max(best, window_integral(std::max(0.0, b)));
    best = std::max(best, window_integral(std::max(0.0, b - 1.0)));
  }
  return best;
}

double triple_norm(const TimeSeriesField& F, const Grid& g) {
  F.validate(g);
  std::vector<double> breaks(F.times);
  if (F.t_end > breaks.back()) breaks.push_back(F.t_end);
  std::vector<double> vals;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    vals.push_back(l2_norm_sq(F.values[std::min(i, F.values.size() - 1)], g));
  if (vals.empty()) return 0.0;  // degenerate series with zero-length support
  return std::sqrt(windowed_sup_integral(breaks, vals));
}

bool small_data_check(const std::vector<EnergyRecord>& records,
                      const SmallDataConstants& c, double r_small) {
  const double bound = c.L * r_small * r_small;
  for (const auto& rec : records)
    if (!(0.5 * rec.l2_sq + rec.phi < bound)) return false;
  return true;
}

GronwallResult gronwall_check(const std::vector<double>& times,
                              const std::vector<double>& j, double delta,
                              double K, const std::vector<double>& f) {
  if (times.size() != j.size() || times.size() != f.size() || times.size() < 2)
    throw std::invalid_argument("gronwall_check: series sizes mismatch");
  GronwallResult res;
  res.hypothesis_ok = true;
  res.conclusion_ok = true;
  res.worst_hypothesis_slack = std::numeric_limits<double>::infinity();
  res.worst_conclusion_slack = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    if (!(dt > 0.0))
      throw std::invalid_argument("gronwall_check: times must be increasing");
    const double quotient = (j[i + 1] - j[i]) / dt;
    const double lhs = quotient + delta * j[i];
    const double rhs = K * std::abs(f[i]);
    // allowance: leading Taylor defect of the exact-decay equality case
    // plus a relative floor
    const double tol = 0.5 * delta * delta * j[i] * dt +
                       1e-8 * (std::abs(lhs) + rhs + delta * j[i]);
    res.worst_hypothesis_slack = std::min(res.worst_hypothesis_slack,
                                          rhs + tol - lhs);
    if (lhs > rhs + tol) res.hypothesis_ok = false;
  }
  if (!res.hypothesis_ok) return res;  // hypothesis failure, not conclusion

  std::vector<double> breaks(times);
  std::vector<double> fabs;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) fabs.push_back(std::abs(f[i]));
  const double f_window = windowed_sup_integral(breaks, fabs);
  const double tail = K / (1.0 - std::exp(-delta)) * f_window;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double bound = j[0] * std::exp(-delta * times[i]) + tail;
    const double tol = 1e-8 * (j[0] + tail);
    res.worst_conclusion_slack = std::min(res.worst_conclusion_slack,
                                          bound + tol - j[i]);
    if (j[i] > bound + tol) res.conclusion_ok = false;
  }
  return res;
}

}  // namespace cgl
