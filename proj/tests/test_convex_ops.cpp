#include "cgl/convex_ops.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace cgl;

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("dirichlet energy: zero, eigenmode value, homogeneity") {
  const Grid g = make_grid(1, {1.0}, {64});
  CHECK(dirichlet_energy(Field::zero(64), g) == 0.0);

  // the first sine mode diagonalizes the stencil, so the energy is
  // (1/2) lambda_1 |u|^2
  const Field u = cgltest::sine_mode(g, 1.0);
  const double lam1 = cgltest::laplacian_eigenvalue(g);
  const double expect = 0.5 * lam1 * l2_norm_sq(u, g);
  CHECK(rel_err(dirichlet_energy(u, g), expect) < 1e-12);

  const Field a = cgltest::random_field(g, 1);
  CHECK(rel_err(dirichlet_energy(3.0 * a, g), 9.0 * dirichlet_energy(a, g)) < 1e-13);
}

TEST_CASE("dirichlet energy equals half the laplacian pairing") {
  for (const Grid& g : {make_grid(1, {1.0}, {64}), make_grid(2, {1.0, 2.0}, {12, 17})}) {
    const Field a = cgltest::random_field(g, 2);
    CHECK(rel_err(dirichlet_energy(a, g),
                  0.5 * l2_inner(neg_laplacian(a, g), a, g)) < 1e-12);
  }
}

TEST_CASE("neg_laplacian: eigenmode, symmetry, rotation commutes") {
  for (const Grid& g : {make_grid(1, {1.0}, {64}), make_grid(2, {1.0, 1.0}, {16, 16})}) {
    const Field u = cgltest::sine_mode(g, 0.7);
    const Field Au = neg_laplacian(u, g);
    const double lam1 = cgltest::laplacian_eigenvalue(g);
    CHECK((Au.u1 - lam1 * u.u1).abs().maxCoeff() < 1e-10 * lam1);

    const Field a = cgltest::random_field(g, 3);
    const Field b = cgltest::random_field(g, 4);
    CHECK(rel_err(l2_inner(neg_laplacian(a, g), b, g),
                  l2_inner(a, neg_laplacian(b, g), g)) < 1e-12);

    // discrete analog of the rotation commuting with derivatives, bit-exact
    const Field lhs = neg_laplacian(rotate90(a), g);
    const Field rhs = rotate90(neg_laplacian(a, g));
    CHECK((lhs.u1 == rhs.u1).all());
    CHECK((lhs.u2 == rhs.u2).all());
  }
}

TEST_CASE("gradients match central finite differences of the energies") {
  const Grid g = make_grid(1, {1.0}, {32});
  const Field U = cgltest::random_field(g, 5);
  const Field W = cgltest::random_field(g, 6);
  const double s = 1e-5;

  const double dphi = (dirichlet_energy(U + s * W, g) - dirichlet_energy(U - s * W, g)) / (2 * s);
  CHECK(rel_err(dphi, l2_inner(neg_laplacian(U, g), W, g)) < 1e-6);

  for (double r : {3.0, 4.0, 2.5}) {
    const double dpsi = (power_energy(U + s * W, r, g) - power_energy(U - s * W, r, g)) / (2 * s);
    CHECK(rel_err(dpsi, l2_inner(power_grad(U, r), W, g)) < 1e-6);
  }
}

TEST_CASE("power energy: zero, forced point value, homogeneity") {
  const Grid g = make_grid(1, {4.0}, {3});  // unit cells
  CHECK(power_energy(Field::zero(3), 3.0, g) == 0.0);

  Field f = Field::zero(3);
  f.u1[0] = 3.0;
  f.u2[0] = 4.0;
  CHECK(power_energy(f, 3.0, g) == doctest::Approx(125.0 / 3.0).epsilon(1e-14));

  const Grid g64 = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g64, 7);
  CHECK(rel_err(power_energy(2.0 * a, 3.5, g64),
                std::pow(2.0, 3.5) * power_energy(a, 3.5, g64)) < 1e-13);

  CHECK_THROWS_AS(power_energy(a, 1.5, g64), std::invalid_argument);
}

TEST_CASE("power gradient: forced point value, zero handling, rotation angle") {
  Field f = Field::zero(2);
  f.u1[0] = 3.0;
  f.u2[0] = 4.0;
  const Field gr = power_grad(f, 3.0);
  CHECK(gr.u1[0] == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(gr.u2[0] == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(gr.u1[1] == 0.0);  // vanishing point stays zero

  CHECK_THROWS_AS(power_grad(f, 2.0), std::invalid_argument);

  const Grid g = make_grid(2, {1.0, 1.0}, {9, 9});
  const Field a = cgltest::random_field(g, 8);
  CHECK(l2_inner(power_grad(a, 3.0), rotate90(a), g) == 0.0);
}

TEST_CASE("radial prox closed forms and limits") {
  // s + s^3 = 2  =>  s = 1
  CHECK(radial_prox_scalar(2.0, 4.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  // s + s^2 = 2  =>  s = 1
  CHECK(radial_prox_scalar(2.0, 3.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(radial_prox_scalar(0.0, 4.0, 1.0) == 0.0);

  Field f = Field::zero(2);
  f.u1[0] = 2.0;
  const Field v = power_prox(f, 4.0, 1.0);
  CHECK(v.u1[0] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v.u2[0] == 0.0);
  CHECK(v.u1[1] == 0.0);

  const Grid g = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g, 9);
  const Field near_id = power_prox(a, 4.0, 1e-10);
  CHECK(l2_norm(near_id - a, g) < 1e-8);
}

TEST_CASE("prox satisfies its defining equation pointwise") {
  const Grid g = make_grid(1, {1.0}, {64});
  for (double r : {2.5, 3.0, 4.0, 6.0}) {
    for (double mu : {1e-3, 1.0, 100.0}) {
      const Field U = cgltest::random_field(g, 10, 3.0);
      const Field V = power_prox(U, r, mu);
      const Field residual = V + mu * power_grad(V, r) - U;
      const double scale = U.magnitude().maxCoeff();
      CHECK(residual.magnitude().maxCoeff() < 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("prox is nonexpansive in L2") {
  const Grid g = make_grid(1, {1.0}, {48});
  for (unsigned s = 0; s < 50; ++s) {
    const Field a = cgltest::random_field(g, 100 + s, 2.0);
    const Field b = cgltest::random_field(g, 200 + s, 2.0);
    const double lhs = l2_norm(power_prox(a, 4.0, 0.7) - power_prox(b, 4.0, 0.7), g);
    const double rhs = l2_norm(a - b, g);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("yosida: forced value, identity with gradient at prox, norm bound") {
  Field f = Field::zero(1);
  f.u1[0] = 2.0;
  const Field y = power_yosida(f, 4.0, 1.0);
  CHECK(y.u1[0] == doctest::Approx(1.0).epsilon(1e-12));

  const Grid g = make_grid(1, {1.0}, {64});
  for (double mu : {1e-3, 1e-1, 1.0, 10.0}) {
    const Field U = cgltest::random_field(g, 11, 2.0);
    const Field yos = power_yosida(U, 4.0, mu);
    const Field grad_at_prox = power_grad(power_prox(U, 4.0, mu), 4.0);
    CHECK(l2_norm(yos - grad_at_prox, g) < 1e-10 * std::max(1.0, l2_norm(grad_at_prox, g)));
    CHECK(l2_norm(yos, g) <= l2_norm(power_grad(U, 4.0), g) * (1.0 + 1e-12));
  }

  const Field z = power_yosida(Field::zero(64), 4.0, 1.0);
  CHECK(z.u1.abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(power_yosida(f, 4.0, 0.0), std::invalid_argument);
}

TEST_CASE("moreau envelope: zero, sandwich, infimum bound, pairing bound") {
  const Grid g = make_grid(1, {1.0}, {64});
  CHECK(power_moreau_env(Field::zero(64), 4.0, 1.0, g) == 0.0);

  std::mt19937_64 eng(12345);
  std::uniform_real_distribution<double> pick_mu(0.01, 5.0);
  for (unsigned s = 0; s < 200; ++s) {
    const double r = (s % 3 == 0) ? 3.0 : (s % 3 == 1 ? 4.0 : 6.0);
    const double mu = pick_mu(eng);
    const Field U = cgltest::random_field(g, 300 + s, 2.0);
    const double env = power_moreau_env(U, r, mu, g);
    const double lo = power_energy(power_prox(U, r, mu), r, g);
    const double hi = power_energy(U, r, g);
    CHECK(lo <= env * (1.0 + 1e-12));
    CHECK(env <= hi * (1.0 + 1e-12));

    const Field W = cgltest::random_field(g, 700 + s, 2.0);
    const double at_w = 0.5 / mu * l2_norm_sq(U - W, g) + power_energy(W, r, g);
    CHECK(env <= at_w * (1.0 + 1e-12));

    // scaled pairing bound of the Yosida map against the energy
    const double pairing = l2_inner(power_yosida(U, r, mu), U, g);
    CHECK(pairing <= r * hi + 1e-10);
  }
}

TEST_CASE("diffusion resolvent: identity at zero, eigenmode factor, residual") {
  const Grid g1 = make_grid(1, {1.0}, {64});
  const Field a = cgltest::random_field(g1, 12);
  const Field same = diffusion_resolvent(a, 0.0, 1.0, 0.5, g1);
  CHECK((same.u1 == a.u1).all());
  CHECK((same.u2 == a.u2).all());

  const Field u = cgltest::sine_mode(g1, 1.0);
  const double lam1 = cgltest::laplacian_eigenvalue(g1);
  const double mu = 0.37, lambda = 1.3;
  const Field v = diffusion_resolvent(u, mu, lambda, 0.0, g1);
  const double factor = 1.0 / (1.0 + mu * lambda * lam1);
  CHECK((v.u1 - factor * u.u1).abs().maxCoeff() < 1e-12);

  for (const Grid& g : {g1, make_grid(2, {1.0, 2.0}, {12, 9})}) {
    for (double alpha : {0.0, 0.8, -2.0}) {
      const Field U = cgltest::random_field(g, 13);
      const Field V = diffusion_resolvent(U, 0.05, 1.0, alpha, g);
      const Field AV = neg_laplacian(V, g);
      // residual of (Id + mu (lambda + alpha I) A) V = U
      Field res = V - U;
      res.u1 += 0.05 * (1.0 * AV.u1 - alpha * AV.u2);
      res.u2 += 0.05 * (1.0 * AV.u2 + alpha * AV.u1);
      CHECK(l2_norm(res, g) <= 1e-12 * l2_norm(U, g));
    }
  }
}

TEST_CASE("laplacian pairing with the power gradient stays nonnegative") {
  const Grid g = make_grid(2, {1.0, 1.0}, {10, 10});
  for (unsigned s = 0; s < 100; ++s) {
    const Field U = cgltest::random_field(g, 900 + s, s % 2 ? 0.5 : 5.0);
    const Field lap = neg_laplacian(U, g);
    const Field gr = power_grad(U, 4.0);
    const double inner = l2_inner(lap, gr, g);
    const double scale = l2_norm(lap, g) * l2_norm(gr, g);
    CHECK(inner >= -1e-12 * scale);
  }
}
