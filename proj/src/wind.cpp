#include "zermelo/wind.hpp"

#include <cmath>

#include "zermelo/linalg.hpp"

namespace zermelo {

WindSpec WindSpec::make(const SpaceFormModel& model, double sigma, Mat Q, Vec C) {
  const int n = model.dim;
  if (Q.rows() != n || Q.cols() != n) throw ValidationError("wind spec: Q must be n x n");
  if (C.size() != n) throw ValidationError("wind spec: C must have length n");
  if (skew_defect(Q) > 1e-12 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw ValidationError("wind spec: Q must be skew-symmetric within 1e-12");
  if (model.kind != ModelKind::Euclidean && sigma != 0.0)
    throw ValidationError("wind spec: sigma must vanish on curved models");
  return {model, sigma, std::move(Q), std::move(C)};
}

WindSpec WindSpec::on_hemisphere(int sign) const {
  if (model.kind != ModelKind::Sphere)
    throw ValidationError("hemisphere selection applies to sphere models only");
  WindSpec other = *this;
  other.model = SpaceFormModel::sphere(model.curvature, model.dim, sign);
  return other;
}

namespace {

/// C as seen on the model's own chart (the western sphere chart sees -C).
Vec effective_C(const WindSpec& spec) {
  if (spec.model.kind == ModelKind::Sphere && spec.model.hemisphere_sign == -1)
    return -spec.C;
  return spec.C;
}

}  // namespace

Vec wind_at(const WindSpec& spec, const Vec& x) {
  check_chart(spec.model, x);
  const Vec C = effective_C(spec);
  if (spec.model.kind == ModelKind::Euclidean)
    return (-0.5 * spec.sigma) * x + spec.Q * x + C;
  return spec.Q * x + C + spec.model.psi() * x.dot(C) * x;
}

Vec covariant_wind_at(const WindSpec& spec, const Vec& x) {
  check_chart(spec.model, x);
  if (spec.model.kind == ModelKind::Euclidean) return wind_at(spec, x);
  const double rho = spec.model.rho_at(x);
  const double absK = std::abs(spec.model.curvature);
  return (spec.Q * x + effective_C(spec)) / (rho * absK);
}

Mat covariant_wind_jacobian_at(const WindSpec& spec, const Vec& x) {
  check_chart(spec.model, x);
  const int n = spec.model.dim;
  if (spec.model.kind == ModelKind::Euclidean)
    return (-0.5 * spec.sigma) * Mat::Identity(n, n) + spec.Q;
  const double psi = spec.model.psi();
  const double rho = spec.model.rho_at(x);
  const double absK = std::abs(spec.model.curvature);
  const Vec P = spec.Q * x + effective_C(spec);
  // W_i = P_i / (rho |K|),  d_j rho = 2 psi x_j
  return spec.Q / (rho * absK) - (2.0 * psi / (rho * rho * absK)) * (P * x.transpose());
}

Mat homothety_residual(const WindSpec& spec, const Vec& x) {
  const int n = spec.model.dim;
  const Mat h = metric_at(spec.model, x);
  const Mat dW = covariant_wind_jacobian_at(spec, x);
  const Vec Wlow = covariant_wind_at(spec, x);
  const std::vector<Mat> gamma = christoffel_at(spec.model, x);
  Mat res(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double cov_ij = dW(i, j);
      double cov_ji = dW(j, i);
      for (int k = 0; k < n; ++k) {
        cov_ij -= gamma[k](j, i) * Wlow[k];
        cov_ji -= gamma[k](i, j) * Wlow[k];
      }
      res(i, j) = cov_ij + cov_ji + spec.sigma * h(i, j);
    }
  return res;
}

double convexity_margin(const WindSpec& spec, const Vec& x) {
  const Mat h = metric_at(spec.model, x);
  const Vec W = wind_at(spec, x);
  return 1.0 - W.dot(h * W);
}

double convexity_margin_casewise(const WindSpec& spec, const Vec& x) {
  check_chart(spec.model, x);
  const Vec C = effective_C(spec);
  if (spec.model.kind == ModelKind::Euclidean) {
    const Vec qc = spec.Q * x + C;
    return 1.0 - (qc.dot(qc) + spec.sigma * x.dot(0.25 * spec.sigma * x - C));
  }
  const double psi = spec.model.psi();
  const double rho = spec.model.rho_at(x);
  const double absK = std::abs(spec.model.curvature);
  const Vec qc = spec.Q * x + C;
  const double xc = x.dot(C);
  return 1.0 - (qc.dot(qc) + psi * xc * xc) / (rho * absK);
}

WindDerivedTensors derived_tensors_at(const WindSpec& spec, const Vec& x) {
  const Mat dW = covariant_wind_jacobian_at(spec, x);
  const Vec W = wind_at(spec, x);
  const Mat h = metric_at(spec.model, x);
  WindDerivedTensors out;
  out.C_ij = dW - dW.transpose();  // C_ij = d_j W_i - d_i W_j = dW(i,j) - dW(j,i)
  out.T_low = out.C_ij.transpose() * W;  // T_j = W^i C_ij
  out.lambda = 1.0 - W.dot(h * W);
  return out;
}

Mat wind_matrix(const WindSpec& spec) {
  const int n = spec.model.dim;
  Mat omega = Mat::Zero(n + 1, n + 1);
  switch (spec.model.kind) {
    case ModelKind::Sphere:
      omega.block(0, 1, 1, n) = spec.C.transpose();
      omega.block(1, 0, n, 1) = -spec.C;
      omega.block(1, 1, n, n) = -spec.Q;
      break;
    case ModelKind::Klein:
      omega.block(0, 1, 1, n) = spec.C.transpose();
      omega.block(1, 0, n, 1) = spec.C;
      omega.block(1, 1, n, n) = -spec.Q;
      break;
    case ModelKind::Euclidean:
      omega.block(0, 0, n, n) = -0.5 * spec.sigma * Mat::Identity(n, n) - spec.Q;
      omega.block(n, 0, 1, n) = spec.C.transpose();
      break;
  }
  return omega;
}

Vec embedded_wind(const WindSpec& spec, const Vec& p) {
  const Mat omega = wind_matrix(spec);
  if (p.size() != omega.rows()) throw ValidationError("embedded point has wrong dimension");
  return omega.transpose() * p;  // (p^t Omega)^t
}

double sphere_embedded_wind_norm2(const WindSpec& spec, const Vec& p) {
  if (spec.model.kind != ModelKind::Sphere)
    throw ValidationError("sphere_embedded_wind_norm2 requires a sphere model");
  const Vec w = embedded_wind(spec, p);
  return w.squaredNorm() / spec.model.curvature;
}

}  // namespace zermelo
