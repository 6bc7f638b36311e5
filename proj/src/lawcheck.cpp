#include "cgl/lawcheck.hpp"

#include "cgl/format.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace cgl::law {

namespace {

// splitmix64; decorrelates per-sample streams so sampling order and
// parallel execution cannot change the draws
std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::mt19937_64 engine_for(unsigned long seed, long index) {
  return std::mt19937_64(mix(seed, static_cast<std::uint64_t>(index)));
}

}  // namespace

void observe(InequalityReport& rep, double lhs, double rhs, double scale,
             const std::string& inputs) {
  ++rep.samples;
  const double slack = rhs - lhs;
  if (slack < rep.worst_slack) {
    rep.worst_slack = slack;
    rep.worst_case_inputs = inputs;
  }
  if (lhs > rhs + kSlackRelTol * std::abs(scale)) ++rep.violations;
}

double diff_bound_factor(double r) {
  if (!(r > 2.0)) throw std::invalid_argument("diff_bound_factor: r must be > 2");
  if (r >= 4.0) return 0.5 * (r - 1.0);
  if (r > 3.0) return 1.5;
  return 1.0;
}

BoundPair pointwise_diff_bound(const Eigen::Vector2d& U, const Eigen::Vector2d& V,
                               const Eigen::Vector2d& X, const Eigen::Vector2d& Y,
                               double r, int i, int j, double factor) {
  if (i < 1 || i > 2 || j < 1 || j > 2)
    throw std::invalid_argument("pointwise_diff_bound: i, j must be 1 or 2");
  const double d = factor >= 0.0 ? factor : diff_bound_factor(r);
  const double mu = U.norm(), mv = V.norm();
  const double pu = mu > 0.0 ? std::pow(mu, r - 2.0) : 0.0;
  const double pv = mv > 0.0 ? std::pow(mv, r - 2.0) : 0.0;
  BoundPair out;
  out.lhs = std::abs((pu * U[i - 1] - pv * V[i - 1]) * (X[j - 1] - Y[j - 1]));
  out.rhs = d * (pu + pv) * (U - V).norm() * (X - Y).norm();
  return out;
}

InequalityReport pointwise_diff_bound_report(const std::vector<double>& r_values,
                                             long samples_per_r,
                                             unsigned long seed, double factor) {
  InequalityReport rep;
  rep.name = "pointwise_diff_bound";
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (double r : r_values) {
    for (long s = 0; s < samples_per_r; ++s) {
      auto eng = engine_for(seed, s);
      Eigen::Vector2d U(dist(eng), dist(eng)), V(dist(eng), dist(eng));
      Eigen::Vector2d X(dist(eng), dist(eng)), Y(dist(eng), dist(eng));
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
          const auto b = pointwise_diff_bound(U, V, X, Y, r, i, j, factor);
          std::string inputs;
          if (b.rhs - b.lhs < rep.worst_slack) {
            std::ostringstream os;
            os << "r=" << r << " i=" << i << " j=" << j << " U=(" << U[0] << "," << U[1]
               << ") V=(" << V[0] << "," << V[1] << ") X=(" << X[0] << "," << X[1]
               << ") Y=(" << Y[0] << "," << Y[1] << ")";
            inputs = os.str();
          }
          observe(rep, b.lhs, b.rhs, b.rhs, inputs);
        }
    }
  }
  return rep;
}

InequalityReport accretivity_check(const Field& U1, const Field& U2, double q,
                                   double mu, double r, const Grid& g,
                                   const ProxSolveSettings& set) {
  if (!(q > 2.0) || !(r >= 2.0) || !(mu > 0.0))
    throw std::invalid_argument("accretivity_check: need q > 2, r >= 2, mu > 0");
  InequalityReport rep;
  rep.name = "accretivity";
  const Field V1 = power_prox(U1, q, mu, set);
  const Field V2 = power_prox(U2, q, mu, set);
  const double lhs = lp_norm_pointwise(V1 - V2, r, g);
  const double rhs = lp_norm_pointwise(U1 - U2, r, g);
  std::ostringstream os;
  os << "q=" << q << " r=" << r << " mu=" << mu;
  observe(rep, lhs, rhs, rhs, os.str());
  return rep;
}

InequalityReport interpolation_check(const Field& U, double q, double r,
                                     const Grid& g) {
  if (!(2.0 < q && q < r))
    throw std::invalid_argument("interpolation_check: need 2 < q < r");
  InequalityReport rep;
  rep.name = "interpolation";
  const double theta = (q - 2.0) / (r - 2.0);
  const double l2 = lp_norm_pointwise(U, 2.0, g);

  const double lq = lp_norm_pointwise(U, q, g);
  const double lr = lp_norm_pointwise(U, r, g);
  const double lhs1 = std::pow(lq, q);
  const double rhs1 = std::pow(lr, r * theta) * std::pow(l2, 2.0 * (1.0 - theta));
  observe(rep, lhs1, rhs1, rhs1, "L^q bound");

  const double lq2 = lp_norm_pointwise(U, 2.0 * (q - 1.0), g);
  const double lr2 = lp_norm_pointwise(U, 2.0 * (r - 1.0), g);
  const double lhs2 = std::pow(lq2, 2.0 * (q - 1.0));
  const double rhs2 = std::pow(lr2, 2.0 * (r - 1.0) * theta) *
                      std::pow(l2, 2.0 * (1.0 - theta));
  observe(rep, lhs2, rhs2, rhs2, "L^{2(q-1)} bound");
  return rep;
}

double embedding_xi(int dim, double q) {
  if (dim <= 2) return 0.5;
  const double crit = 2.0 * dim / (dim - 2.0);
  return (crit - q) / (2.0 * (dim - 2.0));
}

double embedding_theta(int dim, double q) {
  if (dim <= 2) return 2.0;
  const double knee = (2.0 * dim - 2.0) / (dim - 2.0);
  return q <= knee ? 2.0 : 2.0 * q - dim * (q - 2.0);
}

Field random_field(const Grid& g, unsigned long seed, long index) {
  auto eng = engine_for(seed, index);
  const Index n = g.size();
  Field U = Field::zero(n);
  const int kind = static_cast<int>(index % 4);
  if (kind < 3) {
    const double amp = kind == 0 ? 0.1 : (kind == 1 ? 1.0 : 10.0);
    std::uniform_real_distribution<double> dist(-amp, amp);
    for (Index i = 0; i < n; ++i) U.u1[i] = dist(eng);
    for (Index i = 0; i < n; ++i) U.u2[i] = dist(eng);
    return U;
  }
  // smooth: random combination of the lowest sine modes per axis
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const double pi = EIGEN_PI;
  const int modes = 3;
  if (g.dim == 1) {
    for (int k = 1; k <= modes; ++k) {
      const double c1 = coeff(eng), c2 = coeff(eng);
      for (Index i = 0; i < n; ++i) {
        const double s = std::sin(k * pi * g.coord(0, i) / g.lengths[0]);
        U.u1[i] += c1 * s;
        U.u2[i] += c2 * s;
      }
    }
    return U;
  }
  for (int kx = 1; kx <= modes; ++kx)
    for (int ky = 1; ky <= modes; ++ky) {
      const double c1 = coeff(eng), c2 = coeff(eng);
      for (Index j = 0; j < g.n[1]; ++j)
        for (Index i = 0; i < g.n[0]; ++i) {
          const double s = std::sin(kx * pi * g.coord(0, i) / g.lengths[0]) *
                           std::sin(ky * pi * g.coord(1, j) / g.lengths[1]);
          const Index idx = i + g.n[0] * j;
          U.u1[idx] += c1 * s;
          U.u2[idx] += c2 * s;
        }
    }
  return U;
}

double estimate_cb(const Grid& g, double q, long samples, unsigned long seed) {
  if (samples < 100)
    throw std::invalid_argument("estimate_cb: need at least 100 samples");
  const double xi = embedding_xi(g.dim, q);
  double best = 0.0;
  for (long s = 0; s < samples; ++s) {
    const Field U = random_field(g, seed, s);
    const double num = std::pow(lp_norm_pointwise(U, q, g), q);
    const double grad = std::sqrt(2.0 * dirichlet_energy(U, g));
    const double l2 = l2_norm(U, g);
    if (grad == 0.0 || l2 == 0.0) continue;
    const double den = std::pow(grad, 2.0 * (q - xi) / q) * std::pow(l2, 2.0 * xi / q);
    best = std::max(best, num / den);
  }
  return std::pow(best, 2.0 / q);
}

double estimate_embedding_k(const Grid& g, double q, long samples,
                            unsigned long seed) {
  if (samples < 100)
    throw std::invalid_argument("estimate_embedding_k: need at least 100 samples");
  const double theta = embedding_theta(g.dim, q);
  double best = 0.0;
  for (long s = 0; s < samples; ++s) {
    const Field U = random_field(g, seed, s);
    const double num = std::pow(lp_norm_pointwise(U, 2.0 * (q - 1.0), g),
                                2.0 * (q - 1.0));
    const double grad = std::sqrt(2.0 * dirichlet_energy(U, g));
    const double lap = l2_norm(neg_laplacian(U, g), g);
    const double l2 = l2_norm(U, g);
    const double den = std::pow(lap, 2.0 - theta) * std::pow(grad, 2.0 * q - 4.0 + theta) +
                       std::pow(l2, 2.0 * (q - 1.0));
    if (!(den > 0.0)) continue;
    best = std::max(best, num / den);
  }
  return best;
}

std::vector<InequalityReport> full_suite(const Grid& g, const Params& p,
                                         long samples, unsigned long seed,
                                         double diff_bound_factor_override) {
  std::vector<InequalityReport> out;

  out.push_back(pointwise_diff_bound_report({2.5, 3.0, 3.5, 4.0, 5.0}, samples,
                                            seed, diff_bound_factor_override));

  {
    InequalityReport rep;
    rep.name = "accretivity";
    struct Combo { double q, r, mu; };
    std::vector<Combo> combos;
    for (double q : {3.0, 4.0})
      for (double r : {2.0, 3.0, 4.0, 6.0})
        for (double mu : {0.01, 1.0, 100.0}) combos.push_back({q, r, mu});
    for (long idx = 0; idx < samples; ++idx) {
      const Combo& c = combos[static_cast<std::size_t>(idx) % combos.size()];
      const Field U1 = random_field(g, seed ^ 0xACC1, 2 * idx);
      const Field U2 = random_field(g, seed ^ 0xACC1, 2 * idx + 1);
      const Field V1 = power_prox(U1, c.q, c.mu);
      const Field V2 = power_prox(U2, c.q, c.mu);
      const double lhs = lp_norm_pointwise(V1 - V2, c.r, g);
      const double rhs = lp_norm_pointwise(U1 - U2, c.r, g);
      std::ostringstream os;
      os << "sample " << idx << " q=" << c.q << " r=" << c.r << " mu=" << c.mu;
      observe(rep, lhs, rhs, rhs, os.str());
    }
    out.push_back(std::move(rep));
  }

  {
    InequalityReport rep;
    rep.name = "interpolation";
    for (long s = 0; s < samples; ++s) {
      const auto sub = interpolation_check(random_field(g, seed ^ 0x12, s), p.q,
                                           p.r, g);
      rep.samples += sub.samples;
      rep.violations += sub.violations;
      if (sub.worst_slack < rep.worst_slack) {
        rep.worst_slack = sub.worst_slack;
        rep.worst_case_inputs = "sample " + format_long(s) + " " + sub.worst_case_inputs;
      }
    }
    out.push_back(std::move(rep));
  }

  const double mus[] = {1e-3, 1e-1, 1.0, 10.0};

  InequalityReport angle_lap, angle_pow, angle_pair, angle_yos, positivity,
      sandwich, ybound, pairing, nonexp, moreau;
  angle_lap.name = "angle_laplacian_rot";
  angle_pow.name = "angle_power_rot";
  angle_pair.name = "angle_power_pair_rot";
  angle_yos.name = "angle_power_yosida_rot";
  positivity.name = "positivity_laplacian_power";
  sandwich.name = "yosida_sandwich";
  ybound.name = "yosida_norm_bound";
  pairing.name = "subdiff_pairing_bound";
  nonexp.name = "prox_nonexpansive_l2";
  moreau.name = "moreau_inf_bound";

  for (long s = 0; s < samples; ++s) {
    const Field U = random_field(g, seed ^ 0x77, s);
    const double mu = mus[s % 4];
    const std::string tag = "sample " + format_long(s) + " mu=" + format_double(mu);

    const Field IU = rotate90(U);
    const Field lap = neg_laplacian(U, g);
    const Field gq = power_grad(U, p.q);
    const Field gr = power_grad(U, p.r);
    const Field yos = power_yosida(U, p.r, mu);

    observe(angle_lap, std::abs(l2_inner(lap, IU, g)),
            kSlackRelTol * l2_norm(lap, g) * l2_norm(IU, g), 0.0, tag);
    observe(angle_pow, std::abs(l2_inner(gr, IU, g)),
            kSlackRelTol * l2_norm(gr, g) * l2_norm(IU, g), 0.0, tag);
    observe(angle_pair, std::abs(l2_inner(gq, rotate90(gr), g)),
            kSlackRelTol * l2_norm(gq, g) * l2_norm(gr, g), 0.0, tag);
    observe(angle_yos, std::abs(l2_inner(gq, rotate90(yos), g)),
            kSlackRelTol * l2_norm(gq, g) * l2_norm(yos, g), 0.0, tag);

    const double pairing_scale = l2_norm(lap, g) * l2_norm(gr, g);
    observe(positivity, 0.0, l2_inner(lap, gr, g), pairing_scale, tag);

    const Field prox = power_prox(U, p.r, mu);
    const double env = power_moreau_env(U, p.r, mu, g);
    const double psi_prox = power_energy(prox, p.r, g);
    const double psi_full = power_energy(U, p.r, g);
    observe(sandwich, psi_prox, env, psi_full, tag);
    observe(sandwich, env, psi_full, psi_full, tag);

    observe(ybound, l2_norm(yos, g), l2_norm(gr, g), l2_norm(gr, g), tag);

    observe(pairing, l2_inner(yos, U, g), p.r * psi_full + 1e-10,
            p.r * psi_full + 1.0, tag);

    const Field U2 = random_field(g, seed ^ 0x78, s);
    const Field W = random_field(g, seed ^ 0x79, s);
    observe(nonexp, l2_norm(prox - power_prox(U2, p.r, mu), g),
            l2_norm(U - U2, g), l2_norm(U - U2, g), tag);
    observe(moreau, env,
            0.5 / mu * l2_norm_sq(U - W, g) + power_energy(W, p.r, g),
            psi_full + l2_norm_sq(U - W, g) / mu, tag);
  }

  out.push_back(std::move(angle_lap));
  out.push_back(std::move(angle_pow));
  out.push_back(std::move(angle_pair));
  out.push_back(std::move(angle_yos));
  out.push_back(std::move(positivity));
  out.push_back(std::move(sandwich));
  out.push_back(std::move(ybound));
  out.push_back(std::move(pairing));
  out.push_back(std::move(nonexp));
  out.push_back(std::move(moreau));
  return out;
}

std::string to_markdown(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "| law | samples | worst_slack | violations |\n";
  os << "|---|---:|---:|---:|\n";
  for (const auto& r : reports)
    os << "| " << r.name << " | " << r.samples << " | " << format_double(r.worst_slack)
       << " | " << r.violations << " |\n";
  return os.str();
}

std::string to_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << "name,samples,worst_slack,violations\n";
  for (const auto& r : reports)
    os << r.name << "," << r.samples << "," << format_double(r.worst_slack) << ","
       << r.violations << "\n";
  return os.str();
}

}  // namespace cgl::law
