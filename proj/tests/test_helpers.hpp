#pragma once

#include "cgl/grid.hpp"

#include <random>

namespace cgltest {

/// Uniform [-amp, amp] entries, reproducible from the seed.
inline cgl::Field random_field(const cgl::Grid& g, unsigned seed, double amp = 1.0) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> dist(-amp, amp);
  cgl::Field f = cgl::Field::zero(g.size());
  for (cgl::Index i = 0; i < g.size(); ++i) f.u1[i] = dist(eng);
  for (cgl::Index i = 0; i < g.size(); ++i) f.u2[i] = dist(eng);
  return f;
}

/// u1 = first sine mode, u2 = 0 (an eigenvector of the discrete Laplacian).
inline cgl::Field sine_mode(const cgl::Grid& g, double amplitude, int k = 1) {
  cgl::Field f = cgl::Field::zero(g.size());
  const double pi = EIGEN_PI;
  if (g.dim == 1) {
    for (cgl::Index i = 0; i < g.n[0]; ++i)
      f.u1[i] = amplitude * std::sin(k * pi * g.coord(0, i) / g.lengths[0]);
  } else {
    for (cgl::Index j = 0; j < g.n[1]; ++j)
      for (cgl::Index i = 0; i < g.n[0]; ++i)
        f.u1[i + g.n[0] * j] = amplitude *
                               std::sin(k * pi * g.coord(0, i) / g.lengths[0]) *
                               std::sin(k * pi * g.coord(1, j) / g.lengths[1]);
  }
  return f;
}

/// Smallest eigenvalue of -Delta_h on the axis: (4/h^2) sin^2(k pi h / (2L)).
inline double laplacian_eigenvalue(const cgl::Grid& g, int k = 1) {
  double lam = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    const double s = std::sin(k * EIGEN_PI * g.h[a] / (2.0 * g.lengths[a]));
    lam += 4.0 / (g.h[a] * g.h[a]) * s * s;
  }
  return lam;
}

}  // namespace cgltest
