#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cgl {

using Index = Eigen::Index;

/// Uniform rectangular mesh on an axis-aligned box with homogeneous
/// Dirichlet boundary. Only interior points are stored; the spacing is
/// h = length/(n+1) so that the first/last interior points sit one cell
/// away from the boundary.
struct Grid {
  int dim = 1;
  std::array<double, 2> lengths{1.0, 1.0};
  std::array<Index, 2> n{0, 0};
  std::array<double, 2> h{0.0, 0.0};

  Index size() const { return dim == 1 ? n[0] : n[0] * n[1]; }

  double cell_volume() const { return dim == 1 ? h[0] : h[0] * h[1]; }

  /// Coordinate of interior point i along the given axis (1-based offset
  /// from the boundary at 0).
  double coord(int axis, Index i) const {
    return static_cast<double>(i + 1) * h[axis];
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

inline Grid make_grid(int dim, const std::vector<double>& lengths,
                      const std::vector<Index>& n) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("grid: dim must be 1 or 2");
  if (static_cast<int>(lengths.size()) != dim ||
      static_cast<int>(n.size()) != dim)
    throw std::invalid_argument("grid: need one length and one point count per axis");
  Grid g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) {
    if (!(lengths[a] > 0.0))
      throw std::invalid_argument("grid: lengths must be positive");
    if (n[a] < 3)
      throw std::invalid_argument("grid: need at least 3 interior points per axis");
    g.lengths[a] = lengths[a];
    g.n[a] = n[a];
    g.h[a] = lengths[a] / static_cast<double>(n[a] + 1);
  }
  if (dim == 1) {
    g.n[1] = 1;
    g.h[1] = 0.0;
    g.lengths[1] = 0.0;
  }
  return g;
}

/// Two real components on the interior points of a grid; the R^2
/// realization of a complex-valued field. Values are stored flat,
/// x-fastest (column-major when viewed as an n_x-by-n_y matrix).
template <typename Scalar>
struct FieldT {
  Eigen::ArrayX<Scalar> u1;
  Eigen::ArrayX<Scalar> u2;

  FieldT() = default;
  FieldT(Eigen::ArrayX<Scalar> a, Eigen::ArrayX<Scalar> b)
      : u1(std::move(a)), u2(std::move(b)) {
    if (u1.size() != u2.size())
      throw std::invalid_argument("field: component shapes differ");
  }

  Index size() const { return u1.size(); }

  static FieldT zero(Index n) {
    return FieldT(Eigen::ArrayX<Scalar>::Zero(n), Eigen::ArrayX<Scalar>::Zero(n));
  }

  bool all_finite() const { return u1.isFinite().all() && u2.isFinite().all(); }

  /// Pointwise Euclidean magnitude |U(x)|.
  Eigen::ArrayX<Scalar> magnitude() const { return (u1.square() + u2.square()).sqrt(); }

  FieldT& operator+=(const FieldT& o) { u1 += o.u1; u2 += o.u2; return *this; }
  FieldT& operator-=(const FieldT& o) { u1 -= o.u1; u2 -= o.u2; return *this; }
  FieldT& operator*=(Scalar c) { u1 *= c; u2 *= c; return *this; }

  friend FieldT operator+(FieldT a, const FieldT& b) { a += b; return a; }
  friend FieldT operator-(FieldT a, const FieldT& b) { a -= b; return a; }
  friend FieldT operator*(Scalar c, FieldT a) { a *= c; return a; }
};

using Field = FieldT<double>;

namespace detail {
template <typename Scalar>
void require_match(const FieldT<Scalar>& a, const Grid& g, const char* where) {
  if (a.size() != g.size())
    throw std::invalid_argument(std::string(where) + ": field does not match grid");
}
}  // namespace detail

/// L^2 inner product: (U,V) = sum over points of (u1 v1 + u2 v2) times the
/// cell volume. Symmetric and bilinear.
template <typename Scalar>
Scalar l2_inner(const FieldT<Scalar>& a, const FieldT<Scalar>& b, const Grid& g) {
  detail::require_match(a, g, "l2_inner");
  detail::require_match(b, g, "l2_inner");
  return ((a.u1 * b.u1).sum() + (a.u2 * b.u2).sum()) * g.cell_volume();
}

template <typename Scalar>
Scalar l2_norm_sq(const FieldT<Scalar>& a, const Grid& g) {
  detail::require_match(a, g, "l2_norm_sq");
  return (a.u1.square().sum() + a.u2.square().sum()) * g.cell_volume();
}

template <typename Scalar>
Scalar l2_norm(const FieldT<Scalar>& a, const Grid& g) {
  using std::sqrt;
  return sqrt(l2_norm_sq(a, g));
}

/// L^p norm of the pointwise magnitude: (int |U(x)|^p dx)^(1/p).
template <typename Scalar>
Scalar lp_norm_pointwise(const FieldT<Scalar>& a, Scalar p, const Grid& g) {
  detail::require_match(a, g, "lp_norm_pointwise");
  if (!(p >= Scalar(1)))
    throw std::invalid_argument("lp_norm_pointwise: p must be >= 1");
  using std::pow;
  Scalar s = a.magnitude().pow(p).sum() * g.cell_volume();
  return pow(s, Scalar(1) / p);
}

/// Componentwise L^p norm: (|u1|_p^p + |u2|_p^p)^(1/p). Agrees with
/// lp_norm_pointwise at p = 2.
template <typename Scalar>
Scalar lp_norm_componentwise(const FieldT<Scalar>& a, Scalar p, const Grid& g) {
  detail::require_match(a, g, "lp_norm_componentwise");
  if (!(p >= Scalar(1)))
    throw std::invalid_argument("lp_norm_componentwise: p must be >= 1");
  using std::pow;
  Scalar s = (a.u1.abs().pow(p).sum() + a.u2.abs().pow(p).sum()) * g.cell_volume();
  return pow(s, Scalar(1) / p);
}

/// Quarter-turn rotation (u1,u2) -> (-u2,u1); the R^2 realization of
/// multiplication by the imaginary unit. Linear isometry; applying it
/// twice negates the field and (rotate90(U),U) vanishes pointwise.
template <typename Scalar>
FieldT<Scalar> rotate90(const FieldT<Scalar>& a) {
  return FieldT<Scalar>(-a.u2, a.u1);
}

/// Forcing sampled on a time mesh, interpreted as piecewise constant on
/// [t_i, t_{i+1}) and on [t_last, t_end); zero outside [t_0, t_end).
struct TimeSeriesField {
  std::vector<double> times;
  std::vector<Field> values;
  double t_end = 0.0;

  void validate(const Grid& g) const {
    if (times.size() != values.size() || times.empty())
      throw std::invalid_argument("time series: need one field per time");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
      if (!(times[i] < times[i + 1]))
        throw std::invalid_argument("time series: times must be strictly increasing");
    if (!(t_end >= times.back()))
      throw std::invalid_argument("time series: t_end precedes last sample");
    for (const auto& f : values)
      if (f.size() != g.size())
        throw std::invalid_argument("time series: field does not match grid");
  }

  /// Piecewise-constant sample at time t.
  const Field& at(double t) const {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = (it == times.begin()) ? 0 : static_cast<std::size_t>(it - times.begin() - 1);
    return values[i];
  }
};

}  // namespace cgl
