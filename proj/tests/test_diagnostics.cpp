#include "cgl/diagnostics.hpp"

#include "cgl/convex_ops.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

using namespace cgl;

TEST_CASE("energy record: zero field, combined identity, gradient-norm identity") {
  const Grid g = make_grid(1, {1.0}, {64});
  Params p;
  p.q = 3.0;
  p.r = 4.0;

  const EnergyRecord z = make_energy_record(Field::zero(64), 0.0, p, g);
  CHECK(z.l2_sq == 0.0);
  CHECK(z.phi == 0.0);
  CHECK(z.psi_q == 0.0);
  CHECK(z.psi_r == 0.0);
  CHECK(z.dphi_l2 == 0.0);
  CHECK(z.dpsi_q_l2 == 0.0);
  CHECK(z.combined == 0.0);

  const Field U = cgltest::random_field(g, 1, 2.0);
  const EnergyRecord rec = make_energy_record(U, 0.5, p, g);
  CHECK(rec.combined == rec.l2_sq + 2.0 * rec.phi);

  // |power_grad(U,q)|^2 equals the 2(q-1) pointwise norm to that power
  const double lhs = rec.dpsi_q_l2 * rec.dpsi_q_l2;
  const double rhs = std::pow(lp_norm_pointwise(U, 2.0 * (p.q - 1.0), g),
                              2.0 * (p.q - 1.0));
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, rhs));
}

TEST_CASE("blow-up scan: threshold crossing, NaN, bounded") {
  std::vector<EnergyRecord> recs(3);
  recs[0].t = 0.0;
  recs[0].combined = 1.0;
  recs[1].t = 1.0;
  recs[1].combined = 10.0;
  recs[2].t = 2.0;
  recs[2].combined = 1e9;

  // {1, 10, 1e9} with threshold 1e6 trips at the third record
  const auto hit = scan_blowup(recs, 1e6);
  CHECK(hit.blown_up);
  CHECK(hit.t_detect == 2.0);

  CHECK(!scan_blowup(recs, 1e10).blown_up);

  std::vector<EnergyRecord> withnan = recs;
  withnan[1].psi_r = std::numeric_limits<double>::quiet_NaN();
  const auto st = scan_blowup(withnan, 1e10);
  CHECK(st.blown_up);
  CHECK(st.t_detect == 1.0);
}

TEST_CASE("hitting time: constant and linear majorants") {
  CHECK(hitting_time(0.3, [](double) { return 4.0; }) ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(hitting_time(1.0, [](double s) { return s; }) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(hitting_time(-1.0, [](double) { return 1.0; }),
                  std::invalid_argument);
}

TEST_CASE("small-data constants and the local time estimate") {
  const Grid g = make_grid(1, {1.0}, {64});
  Params p;
  p.lambda = 1.0;
  p.gamma = -1.0;
  p.kappa = 1.0;
  p.q = 3.0;
  p.r = 4.0;

  const SmallDataConstants c = small_data_constants(p, g, 300, 7);
  CHECK(c.delta == 1.0);
  CHECK(c.L1 == doctest::Approx(1.0 + 1.0 / (1.0 - std::exp(-0.5))).epsilon(1e-14));
  CHECK(c.L2 == doctest::Approx((c.L1 + 0.5 * c.L1 * c.L1) / c.delta).epsilon(1e-14));
  CHECK(c.eps1 * c.L == doctest::Approx(c.eps0).epsilon(1e-14));
  CHECK(c.Cb_est > 0.0);
  CHECK(c.C0_est > 0.0);

  // horizon shrinks as the starting level grows
  const double t_small = local_time_estimate(0.1, p, c);
  const double t_large = local_time_estimate(1.0, p, c);
  CHECK(t_small > t_large);
  CHECK(t_large > 0.0);

  // and as any majorant coefficient grows
  Params stronger = p;
  stronger.kappa = 2.0;
  CHECK(local_time_estimate(0.1, stronger, c) < t_small);
  Params gained = p;
  gained.gamma = 0.5;  // gamma_+ enters the linear term
  CHECK(local_time_estimate(0.1, gained, c) < t_small);
  SmallDataConstants bigger = c;
  bigger.C0_est *= 3.0;
  CHECK(local_time_estimate(0.1, p, bigger) < t_small);
  SmallDataConstants wider = c;
  wider.Cb_est *= 3.0;
  CHECK(local_time_estimate(0.1, p, wider) < t_small);

  Params bad = p;
  bad.gamma = 0.5;
  CHECK_THROWS_AS(small_data_constants(bad, g, 300, 7), std::invalid_argument);
}

TEST_CASE("triple norm: zero, constant level, short support, truncation") {
  const Grid g = make_grid(1, {4.0}, {3});  // unit cells: |1|_{L2}^2 = 3

  const auto const_series = [&](double amp, double t_end) {
    TimeSeriesField F;
    F.times = {0.0};
    Field f = Field::zero(3);
    f.u1 += amp;
    F.values.push_back(f);
    F.t_end = t_end;
    return F;
  };

  CHECK(triple_norm(const_series(0.0, 2.0), g) == 0.0);

  // |F(t)|_{L2} = a for all t in [0, T], T >= 1: the norm is a
  const TimeSeriesField F = const_series(2.0, 3.0);
  const double a = l2_norm(F.values[0], g);
  CHECK(triple_norm(F, g) == doctest::Approx(a).epsilon(1e-13));

  // support of length 1/2 scales the window integral by 1/2
  const TimeSeriesField H = const_series(2.0, 0.5);
  CHECK(triple_norm(H, g) == doctest::Approx(a * std::sqrt(0.5)).epsilon(1e-13));

  // truncation never increases the norm
  CHECK(triple_norm(H, g) <= triple_norm(F, g));
}

TEST_CASE("small-data check thresholds records") {
  SmallDataConstants c;
  c.L = 10.0;
  const double r = 0.5;

  std::vector<EnergyRecord> recs(2);
  recs[0].l2_sq = 0.1;
  recs[0].phi = 0.2;
  recs[1].l2_sq = 0.2;
  recs[1].phi = 0.3;
  CHECK(small_data_check(recs, c, r));  // bound is 2.5

  recs[1].phi = 3.0;
  CHECK(!small_data_check(recs, c, r));

  CHECK(small_data_check({}, c, r));  // vacuous
}

TEST_CASE("decay estimate checker: equality case, forced constant, bad hypothesis") {
  const double delta = 0.8;
  const int n = 400;
  const double dt = 0.01;
  std::vector<double> times(n), j(n), f(n, 0.0);
  for (int i = 0; i < n; ++i) {
    times[i] = i * dt;
    j[i] = 2.0 * std::exp(-delta * times[i]);
  }
  const auto eq = gronwall_check(times, j, delta, 1.0, f);
  CHECK(eq.hypothesis_ok);
  CHECK(eq.conclusion_ok);
  CHECK(eq.passed());

  // j constant at K c / delta with |f| = c meets the hypothesis with
  // equality, and the conclusion holds since 1 - e^{-delta} <= delta
  const double K = 2.0, cval = 0.7;
  std::vector<double> jc(n, K * cval / delta), fc(n, cval);
  const auto flat = gronwall_check(times, jc, delta, K, fc);
  CHECK(flat.hypothesis_ok);
  CHECK(flat.conclusion_ok);

  // growing j with zero forcing violates the hypothesis; the checker says
  // so instead of blaming the conclusion
  std::vector<double> jg(n);
  for (int i = 0; i < n; ++i) jg[i] = std::exp(0.5 * times[i]);
  const auto bad = gronwall_check(times, jg, delta, 1.0, f);
  CHECK(!bad.hypothesis_ok);
  CHECK(bad.conclusion_ok);  // untouched, per the contract
  CHECK(!bad.passed());
}
