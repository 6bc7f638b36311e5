#pragma once

#include "cgl/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgl {

/// Tolerances for the scalar proximal solves and the modal linear solve.
struct ProxSolveSettings {
  double newton_tol = 1e-13;  // absolute residual floor, scaled by max(1, |U(x)|)
  int newton_max_iter = 50;
  double linear_tol = 1e-12;  // relative residual contract of the modal solver
};

namespace detail {

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using MapMat = Eigen::Map<const MatX<Scalar>>;

// -Delta_h on one component, second-order centered stencil with zero ghosts.
template <typename Scalar>
Eigen::ArrayX<Scalar> neg_laplacian_component(const Eigen::ArrayX<Scalar>& u,
                                              const Grid& g) {
  if (g.dim == 1) {
    const Index n = g.n[0];
    const Scalar ih2 = Scalar(1) / Scalar(g.h[0] * g.h[0]);
    Eigen::ArrayX<Scalar> out = Scalar(2) * u;
    out.segment(0, n - 1) -= u.segment(1, n - 1);
    out.segment(1, n - 1) -= u.segment(0, n - 1);
    return out * ih2;
  }
  const Index nx = g.n[0], ny = g.n[1];
  const Scalar ihx2 = Scalar(1) / Scalar(g.h[0] * g.h[0]);
  const Scalar ihy2 = Scalar(1) / Scalar(g.h[1] * g.h[1]);
  MapMat<Scalar> m(u.data(), nx, ny);
  MatX<Scalar> out = Scalar(2) * (ihx2 + ihy2) * m;
  out.topRows(nx - 1) -= ihx2 * m.bottomRows(nx - 1);
  out.bottomRows(nx - 1) -= ihx2 * m.topRows(nx - 1);
  out.leftCols(ny - 1) -= ihy2 * m.rightCols(ny - 1);
  out.rightCols(ny - 1) -= ihy2 * m.leftCols(ny - 1);
  return out.reshaped().array();
}

// Sum of squared forward differences along every edge, boundary edges
// included (ghost values are zero), divided by the squared spacing of the
// edge direction.
template <typename Scalar>
Scalar edge_gradient_sq_component(const Eigen::ArrayX<Scalar>& u, const Grid& g) {
  if (g.dim == 1) {
    const Index n = g.n[0];
    const Scalar ih2 = Scalar(1) / Scalar(g.h[0] * g.h[0]);
    Scalar s = u[0] * u[0] + u[n - 1] * u[n - 1];
    s += (u.segment(1, n - 1) - u.segment(0, n - 1)).square().sum();
    return s * ih2;
  }
  const Index nx = g.n[0], ny = g.n[1];
  const Scalar ihx2 = Scalar(1) / Scalar(g.h[0] * g.h[0]);
  const Scalar ihy2 = Scalar(1) / Scalar(g.h[1] * g.h[1]);
  MapMat<Scalar> m(u.data(), nx, ny);
  Scalar sx = m.row(0).squaredNorm() + m.row(nx - 1).squaredNorm() +
              (m.bottomRows(nx - 1) - m.topRows(nx - 1)).squaredNorm();
  Scalar sy = m.col(0).squaredNorm() + m.col(ny - 1).squaredNorm() +
              (m.rightCols(ny - 1) - m.leftCols(ny - 1)).squaredNorm();
  return sx * ihx2 + sy * ihy2;
}

}  // namespace detail

/// Dirichlet energy (1/2) int |grad U|^2, discretized as the sum of squared
/// forward differences over all edges (boundary edges included) weighted by
/// the cell volume. Consistent with neg_laplacian: the value equals
/// (1/2) l2_inner(neg_laplacian(U), U) exactly.
template <typename Scalar>
Scalar dirichlet_energy(const FieldT<Scalar>& U, const Grid& g) {
  detail::require_match(U, g, "dirichlet_energy");
  Scalar s = detail::edge_gradient_sq_component(U.u1, g) +
             detail::edge_gradient_sq_component(U.u2, g);
  return Scalar(0.5) * s * Scalar(g.cell_volume());
}

/// Gradient of the Dirichlet energy: -Delta_h applied componentwise.
template <typename Scalar>
FieldT<Scalar> neg_laplacian(const FieldT<Scalar>& U, const Grid& g) {
  detail::require_match(U, g, "neg_laplacian");
  return FieldT<Scalar>(detail::neg_laplacian_component(U.u1, g),
                        detail::neg_laplacian_component(U.u2, g));
}

/// Power energy (1/r) int |U(x)|^r dx of the pointwise magnitude, r >= 2.
template <typename Scalar>
Scalar power_energy(const FieldT<Scalar>& U, Scalar r, const Grid& g) {
  detail::require_match(U, g, "power_energy");
  if (!(r >= Scalar(2)))
    throw std::invalid_argument("power_energy: r must be >= 2");
  return U.magnitude().pow(r).sum() * Scalar(g.cell_volume()) / r;
}

/// Gradient of the power energy: the pointwise map |U(x)|^(r-2) U(x),
/// zero where U vanishes. Requires r > 2.
template <typename Scalar>
FieldT<Scalar> power_grad(const FieldT<Scalar>& U, Scalar r) {
  if (!(r > Scalar(2)))
    throw std::invalid_argument("power_grad: r must be > 2");
  Eigen::ArrayX<Scalar> f = U.magnitude().pow(r - Scalar(2));
  return FieldT<Scalar>(f * U.u1, f * U.u2);
}

/// Scalar radial resolvent: the unique s >= 0 with s + mu s^(r-1) = m,
/// found by bracketed Newton on [0, min(m, (m/mu)^(1/(r-1)))].
template <typename Scalar>
Scalar radial_prox_scalar(Scalar m, Scalar r, Scalar mu,
                          const ProxSolveSettings& set = {}) {
  using std::abs;
  using std::isfinite;
  using std::pow;
  if (m == Scalar(0)) return Scalar(0);
  if (!isfinite(m)) return m;  // propagate blow-up values unchanged
  const Scalar tol = Scalar(set.newton_tol) * std::max(Scalar(1), m);
  Scalar lo = Scalar(0);
  Scalar hi = std::min(m, pow(m / mu, Scalar(1) / (r - Scalar(1))));
  Scalar s = hi;
  for (int it = 0; it < set.newton_max_iter; ++it) {
    const Scalar f = s + mu * pow(s, r - Scalar(1)) - m;
    if (abs(f) <= tol) return s;
    if (f > Scalar(0)) hi = s; else lo = s;
    const Scalar df = Scalar(1) + mu * (r - Scalar(1)) * pow(s, r - Scalar(2));
    Scalar snew = s - f / df;
    if (snew == s) return s;  // no representable progress left
    if (!(snew > lo && snew < hi)) snew = (lo + hi) / Scalar(2);
    if (snew == s || hi - lo <= Scalar(4) * std::numeric_limits<Scalar>::epsilon() * hi)
      return snew;
    s = snew;
  }
  const Scalar f = s + mu * pow(s, r - Scalar(1)) - m;
  if (abs(f) <= Scalar(1e3) * tol) return s;
  throw std::runtime_error("radial_prox_scalar: Newton/bisection failed to converge");
}

/// Resolvent (1 + mu d/dU of the power energy)^(-1), computed pointwise by
/// the radial reduction V(x) = (s/m) U(x) with s + mu s^(r-1) = m = |U(x)|.
template <typename Scalar>
FieldT<Scalar> power_prox(const FieldT<Scalar>& U, Scalar r, Scalar mu,
                          const ProxSolveSettings& set = {}) {
  if (!(r > Scalar(2)))
    throw std::invalid_argument("power_prox: r must be > 2");
  if (!(mu >= Scalar(0)))
    throw std::invalid_argument("power_prox: mu must be >= 0");
  const Index n = U.size();
  FieldT<Scalar> V = FieldT<Scalar>::zero(n);
  const Eigen::ArrayX<Scalar> mag = U.magnitude();
  for (Index i = 0; i < n; ++i) {
    const Scalar m = mag[i];
    if (m == Scalar(0)) continue;
    if (!std::isfinite(m)) {
      V.u1[i] = U.u1[i];
      V.u2[i] = U.u2[i];
      continue;
    }
    const Scalar scale = radial_prox_scalar(m, r, mu, set) / m;
    V.u1[i] = scale * U.u1[i];
    V.u2[i] = scale * U.u2[i];
  }
  return V;
}

/// Yosida approximation (U - prox(U))/mu, evaluated radially: one scalar
/// factor (m - s)/(mu m) per point keeps the output exactly parallel to U,
/// so the rotation angle identities hold to rounding without 1/mu noise.
/// The radial solve and the quotient run in extended precision because the
/// quotient amplifies the root's quantization by 1/mu; the result then
/// matches power_grad at the resolvent to rounding rather than to eps/mu.
template <typename Scalar>
FieldT<Scalar> power_yosida(const FieldT<Scalar>& U, Scalar r, Scalar mu,
                            const ProxSolveSettings& set = {}) {
  if (!(mu > Scalar(0)))
    throw std::invalid_argument("power_yosida: mu must be > 0");
  if (!(r > Scalar(2)))
    throw std::invalid_argument("power_yosida: r must be > 2");
  ProxSolveSettings strict = set;
  strict.newton_tol = std::min(set.newton_tol, 1e-19);
  const Index n = U.size();
  FieldT<Scalar> Y = FieldT<Scalar>::zero(n);
  const Eigen::ArrayX<Scalar> mag = U.magnitude();
  for (Index i = 0; i < n; ++i) {
    const Scalar m = mag[i];
    if (m == Scalar(0)) continue;
    if (!std::isfinite(m)) {
      Y.u1[i] = std::numeric_limits<Scalar>::quiet_NaN();
      Y.u2[i] = std::numeric_limits<Scalar>::quiet_NaN();
      continue;
    }
    const long double ml = static_cast<long double>(m);
    const long double s = radial_prox_scalar<long double>(
        ml, static_cast<long double>(r), static_cast<long double>(mu), strict);
    const Scalar c =
        static_cast<Scalar>((ml - s) / (static_cast<long double>(mu) * ml));
    Y.u1[i] = c * U.u1[i];
    Y.u2[i] = c * U.u2[i];
  }
  return Y;
}

/// Moreau envelope of the power energy at parameter mu:
/// (mu/2) |yosida(U)|_{L2}^2 + power_energy(prox(U)). Sandwiched between
/// power_energy(prox(U)) and power_energy(U).
template <typename Scalar>
Scalar power_moreau_env(const FieldT<Scalar>& U, Scalar r, Scalar mu,
                        const Grid& g, const ProxSolveSettings& set = {}) {
  if (!(mu > Scalar(0)))
    throw std::invalid_argument("power_moreau_env: mu must be > 0");
  FieldT<Scalar> V = power_prox(U, r, mu, set);
  FieldT<Scalar> Y = power_yosida(U, r, mu, set);
  return (mu / Scalar(2)) * l2_norm_sq(Y, g) + power_energy(V, r, g);
}

/// Eigenstructure of -Delta_h along one axis: sine vectors
/// S(i,k) = sin((i+1)(k+1) pi/(n+1)) and eigenvalues
/// (4/h^2) sin^2((k+1) pi / (2(n+1))). S is symmetric with S*S = ((n+1)/2) Id.
template <typename Scalar>
struct SineBasis {
  detail::MatX<Scalar> modes;
  Eigen::ArrayX<Scalar> eigenvalues;
  Scalar inv_norm;  // 2/(n+1)

  static SineBasis make(Index n, Scalar h) {
    SineBasis b;
    const Scalar pi = Scalar(EIGEN_PI);
    b.modes.resize(n, n);
    b.eigenvalues.resize(n);
    b.inv_norm = Scalar(2) / Scalar(n + 1);
    for (Index k = 0; k < n; ++k) {
      const Scalar th = Scalar(k + 1) * pi / Scalar(2 * (n + 1));
      const Scalar sn = std::sin(th);
      b.eigenvalues[k] = Scalar(4) / (h * h) * sn * sn;
      for (Index i = 0; i < n; ++i)
        b.modes(i, k) = std::sin(Scalar((i + 1) * (k + 1)) * pi / Scalar(n + 1));
    }
    return b;
  }
};

/// Solves (Id + mu (lambda + alpha I) A_h) V = U with A_h = -Delta_h, by
/// diagonalizing A_h in the sine basis and inverting the per-mode 2x2
/// rotation-scaling block (a complex scalar division).
template <typename Scalar>
FieldT<Scalar> diffusion_resolvent(const FieldT<Scalar>& U, Scalar mu,
                                   Scalar lambda, Scalar alpha, const Grid& g,
                                   const ProxSolveSettings& = {}) {
  detail::require_match(U, g, "diffusion_resolvent");
  if (!(mu >= Scalar(0)))
    throw std::invalid_argument("diffusion_resolvent: mu must be >= 0");
  if (!(lambda >= Scalar(0)))
    throw std::invalid_argument("diffusion_resolvent: lambda must be >= 0");
  // the operator is the identity: skip the modal round trip
  if (mu == Scalar(0) || (lambda == Scalar(0) && alpha == Scalar(0))) return U;

  using Mat = detail::MatX<Scalar>;
  const auto solve_modes = [&](Mat& c1, Mat& c2, const auto& eig) {
    for (Index j = 0; j < c1.cols(); ++j)
      for (Index i = 0; i < c1.rows(); ++i) {
        const Scalar lam = eig(i, j);
        const Scalar a = Scalar(1) + mu * lambda * lam;
        const Scalar b = mu * alpha * lam;
        const Scalar det = a * a + b * b;
        const Scalar x = c1(i, j), y = c2(i, j);
        c1(i, j) = (a * x + b * y) / det;
        c2(i, j) = (-b * x + a * y) / det;
      }
  };

  if (g.dim == 1) {
    const Index n = g.n[0];
    const auto basis = SineBasis<Scalar>::make(n, Scalar(g.h[0]));
    Mat c1 = basis.modes * U.u1.matrix() * basis.inv_norm;
    Mat c2 = basis.modes * U.u2.matrix() * basis.inv_norm;
    solve_modes(c1, c2, basis.eigenvalues);
    return FieldT<Scalar>((basis.modes * c1).reshaped().array(),
                          (basis.modes * c2).reshaped().array());
  }

  const Index nx = g.n[0], ny = g.n[1];
  const auto bx = SineBasis<Scalar>::make(nx, Scalar(g.h[0]));
  const auto by = SineBasis<Scalar>::make(ny, Scalar(g.h[1]));
  detail::MapMat<Scalar> m1(U.u1.data(), nx, ny);
  detail::MapMat<Scalar> m2(U.u2.data(), nx, ny);
  const Scalar norm = bx.inv_norm * by.inv_norm;
  Mat c1 = bx.modes * m1 * by.modes * norm;
  Mat c2 = bx.modes * m2 * by.modes * norm;
  Eigen::ArrayXX<Scalar> eig = bx.eigenvalues.replicate(1, ny) +
                               by.eigenvalues.transpose().replicate(nx, 1);
  solve_modes(c1, c2, eig);
  Mat v1 = bx.modes * c1 * by.modes;
  Mat v2 = bx.modes * c2 * by.modes;
  return FieldT<Scalar>(v1.reshaped().array(), v2.reshaped().array());
}

}  // namespace cgl
