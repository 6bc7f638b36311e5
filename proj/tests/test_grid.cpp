#include "cgl/grid.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace cgl;

TEST_CASE("make_grid computes spacings and rejects bad input") {
  const Grid g1 = make_grid(1, {1.0}, {3});
  CHECK(g1.h[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g1.size() == 3);

  const Grid g2 = make_grid(2, {1.0, 2.0}, {9, 19});
  CHECK(g2.h[0] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g2.h[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g2.size() == 9 * 19);

  CHECK_THROWS_AS(make_grid(3, {1.0, 1.0, 1.0}, {4, 4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, {-1.0}, {4}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, {1.0}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, {1.0}, {4, 4}), std::invalid_argument);
}

TEST_CASE("l2_inner: zero, symmetry, forced value, mismatch") {
  const Grid g = make_grid(1, {1.0}, {3});
  const Field z = Field::zero(3);
  CHECK(l2_inner(z, z, g) == 0.0);

  Field ones = Field::zero(3);
  ones.u1 += 1.0;
  CHECK(l2_inner(ones, ones, g) == doctest::Approx(0.75).epsilon(1e-15));

  const Grid g64 = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g64, 11);
  const Field b = cgltest::random_field(g64, 12);
  CHECK(l2_inner(a, b, g64) == l2_inner(b, a, g64));

  // bilinearity
  const Field c = cgltest::random_field(g64, 13);
  const double lhs = l2_inner(a + 2.0 * b, c, g64);
  const double rhs = l2_inner(a, c, g64) + 2.0 * l2_inner(b, c, g64);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

  CHECK_THROWS_AS(l2_inner(a, z, g64), std::invalid_argument);
}

TEST_CASE("pointwise norm: zero, homogeneity, Euclidean magnitude") {
  const Grid g = make_grid(1, {4.0}, {3});  // h = 1 so one cell weighs 1
  CHECK(lp_norm_pointwise(Field::zero(3), 2.0, g) == 0.0);

  Field f = Field::zero(3);
  f.u1[1] = 3.0;
  f.u2[1] = 4.0;
  CHECK(lp_norm_pointwise(f, 2.0, g) == doctest::Approx(5.0).epsilon(1e-14));

  const Grid g64 = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g64, 21);
  const double n1 = lp_norm_pointwise(a, 3.0, g64);
  const double n2 = lp_norm_pointwise(-2.5 * a, 3.0, g64);
  CHECK(n2 == doctest::Approx(2.5 * n1).epsilon(1e-12));

  CHECK_THROWS_AS(lp_norm_pointwise(a, 0.5, g64), std::invalid_argument);
}

TEST_CASE("componentwise norm agrees with pointwise at p = 2") {
  const Grid g = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g, 31);
  CHECK(lp_norm_componentwise(a, 2.0, g) ==
        doctest::Approx(lp_norm_pointwise(a, 2.0, g)).epsilon(1e-12));

  // one vanishing component reduces to the scalar norm of the other
  Field b = a;
  b.u2.setZero();
  const double expect = std::pow(b.u1.abs().pow(3.0).sum() * g.cell_volume(), 1.0 / 3.0);
  CHECK(lp_norm_componentwise(b, 3.0, g) == doctest::Approx(expect).epsilon(1e-13));

  CHECK(lp_norm_componentwise(Field::zero(64), 4.0, g) == 0.0);
}

TEST_CASE("rotate90: definition, involution to minus, isometry, orthogonality") {
  const Grid g = make_grid(2, {1.0, 1.0}, {8, 8});
  Field e1 = Field::zero(g.size());
  e1.u1 += 1.0;
  const Field r = rotate90(e1);
  CHECK(r.u1.abs().maxCoeff() == 0.0);
  CHECK(r.u2.minCoeff() == 1.0);

  const Field a = cgltest::random_field(g, 41);
  const Field rr = rotate90(rotate90(a));
  CHECK((rr.u1 + a.u1).abs().maxCoeff() == 0.0);
  CHECK((rr.u2 + a.u2).abs().maxCoeff() == 0.0);

  CHECK(l2_norm(rotate90(a), g) ==
        doctest::Approx(l2_norm(a, g)).epsilon(1e-14));
  CHECK(l2_inner(rotate90(a), a, g) == 0.0);
}

TEST_CASE("time series samples piecewise-constant and validates") {
  const Grid g = make_grid(1, {1.0}, {4});
  TimeSeriesField F;
  F.times = {0.0, 1.0, 2.0};
  for (int k = 0; k < 3; ++k) {
    Field f = Field::zero(4);
    f.u1 += static_cast<double>(k);
    F.values.push_back(f);
  }
  F.t_end = 3.0;
  F.validate(g);

  CHECK(F.at(0.0).u1[0] == 0.0);
  CHECK(F.at(0.999).u1[0] == 0.0);
  CHECK(F.at(1.0).u1[0] == 1.0);
  CHECK(F.at(2.5).u1[0] == 2.0);

  TimeSeriesField bad = F;
  bad.times[1] = 0.0;
  CHECK_THROWS_AS(bad.validate(g), std::invalid_argument);
}
