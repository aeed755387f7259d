#pragma once

#include <vector>

#include "zermelo/fd.hpp"
#include "zermelo/jet.hpp"

namespace zermelo {

enum class ModelKind { Sphere, Euclidean, Klein };

/// One of the three standard constant-curvature background geometries, in the
/// chart conventions used throughout:
///  - Sphere (K > 0): projective chart obtained by central projection of a
///    hemisphere onto the tangent space at its pole; hemisphere_sign picks
///    the eastern (+1) or western (-1) hemisphere.  Equator values are
///    reached through the R^{n+1} embedding, never through the chart.
///  - Euclidean (K = 0): Cartesian coordinates.
///  - Klein (K < 0): unit-ball model with straight geodesics.
struct SpaceFormModel {
  ModelKind kind;
  double curvature;
  int dim;
  int hemisphere_sign = +1;

  static SpaceFormModel sphere(double K, int n, int hemisphere_sign = +1);
  static SpaceFormModel euclidean(int n);
  static SpaceFormModel klein(double K, int n);

  bool curved() const { return kind != ModelKind::Euclidean; }
  /// K/|K| for curved models.
  double psi() const;
  /// 1 + psi * (x.x)
  double rho_at(const Vec& x) const;
};

/// Raises DomainError if x lies outside the model's chart.
void check_chart(const SpaceFormModel& model, const Vec& x);

Mat metric_at(const SpaceFormModel& model, const Vec& x);
Mat metric_inverse_at(const SpaceFormModel& model, const Vec& x);

/// Christoffel symbols, indexed [k](i,j) for Gamma^k_ij.
std::vector<Mat> christoffel_at(const SpaceFormModel& model, const Vec& x);

/// Frobenius norm of R_hijk - kappa (h_ij h_hk - h_ik h_hj), with the Riemann
/// tensor assembled from finite differences of christoffel_at.
double riemann_residual(const SpaceFormModel& model, const Vec& x);

/// Rank-4 tensor of doubles, all four slots of equal dimension.
class Tensor4 {
 public:
  explicit Tensor4(int n) : n_(n), d_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}
  double& operator()(int h, int i, int j, int k) { return d_[idx(h, i, j, k)]; }
  double operator()(int h, int i, int j, int k) const { return d_[idx(h, i, j, k)]; }
  int dim() const { return n_; }
  double frobenius() const;

 private:
  std::size_t idx(int h, int i, int j, int k) const {
    return ((static_cast<std::size_t>(h) * n_ + i) * n_ + j) * n_ + k;
  }
  int n_;
  std::vector<double> d_;
};

using ChristoffelField = std::function<std::vector<Mat>(const Vec&)>;

/// Christoffel symbols of an arbitrary metric field by finite differences.
std::vector<Mat> christoffel_fd(const MatrixField& metric, const Vec& x);

/// Fully lowered curvature tensor R_hijk of the given connection, computed by
/// finite differences of the Christoffel field.  Sign convention: for a
/// metric of constant sectional curvature kappa,
///   R_hijk = kappa (h_ij h_hk - h_ik h_hj).
Tensor4 riemann_lowered_fd(const ChristoffelField& gamma, const Mat& metric_at_x, const Vec& x);

/// Chart -> R^{n+1} embedding helpers for the sphere model (unit sphere).
Vec sphere_embed_point(const Vec& x, int hemisphere_sign);
Vec sphere_embed_tangent(const Vec& x, int hemisphere_sign, const Vec& v);
/// Chart coordinates of an off-equator embedded point; hemisphere from sign of p0.
Vec sphere_chart_point(const Vec& p);

}  // namespace zermelo
