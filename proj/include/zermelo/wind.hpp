#pragma once

#include "zermelo/spaceform.hpp"

namespace zermelo {

/// Admissible perturbing field on a space form, parametrized by a constant
/// skew matrix Q, a constant vector C and a homothety constant sigma:
///   Euclidean:  W = -sigma/2 x + Q x + C
///   Sphere:     W = Q x + sC + (x . sC) x     (s = hemisphere sign)
///   Klein:      W = Q x + C - (x . C) x
/// The user supplies eastern-hemisphere data; the western chart automatically
/// sees (Q, -C).  sigma must vanish on curved models.
struct WindSpec {
  SpaceFormModel model;
  double sigma;
  Mat Q;
  Vec C;

  static WindSpec make(const SpaceFormModel& model, double sigma, Mat Q, Vec C);
  WindSpec on_hemisphere(int sign) const;
};

struct WindDerivedTensors {
  Mat C_ij;      // dW_i/dx^j - dW_j/dx^i
  Vec T_low;     // T_j = W^i C_ij
  double lambda; // 1 - h(W, W)
};

Vec wind_at(const WindSpec& spec, const Vec& x);
Vec covariant_wind_at(const WindSpec& spec, const Vec& x);

/// Jacobian of the covariant components: J(i,j) = dW_i/dx^j (closed form).
Mat covariant_wind_jacobian_at(const WindSpec& spec, const Vec& x);

/// W_{i:j} + W_{j:i} + sigma h_ij; zero for every admissible spec.
Mat homothety_residual(const WindSpec& spec, const Vec& x);

/// 1 - |W|^2_h, computed from the metric.  Equals the closed per-case margin.
double convexity_margin(const WindSpec& spec, const Vec& x);
/// Same quantity from the per-case closed-form inequality (cross-check route).
double convexity_margin_casewise(const WindSpec& spec, const Vec& x);

WindDerivedTensors derived_tensors_at(const WindSpec& spec, const Vec& x);

/// Matrix representative of the field in the ambient (n+1)-dim picture:
///   Sphere:    [[0, C^t], [-C, -Q]]            in o(n+1)
///   Klein:     [[0, C^t], [ C, -Q]]            in o(1,n)
///   Euclidean: [[-sigma/2 I - Q, 0], [C^t, 0]] affine representation
Mat wind_matrix(const WindSpec& spec);

/// Value of the embedded field p^t Omega at an embedded point p (row-vector
/// convention, returned as a column).
Vec embedded_wind(const WindSpec& spec, const Vec& p);

/// |W|^2_h at an embedded unit-sphere point (valid on the equator too).
double sphere_embedded_wind_norm2(const WindSpec& spec, const Vec& p);

}  // namespace zermelo
