#include "zermelo/spaceform.hpp"

#include <Eigen/LU>
#include <cmath>

namespace zermelo {

namespace {
constexpr double kKleinMargin = 1e-12;
}

SpaceFormModel SpaceFormModel::sphere(double K, int n, int hemisphere_sign) {
  if (!(K > 0.0)) throw ValidationError("sphere model requires K > 0");
  if (n < 2) throw ValidationError("space form models require dim >= 2");
  if (hemisphere_sign != 1 && hemisphere_sign != -1)
    throw ValidationError("hemisphere_sign must be +1 or -1");
  return {ModelKind::Sphere, K, n, hemisphere_sign};
}

SpaceFormModel SpaceFormModel::euclidean(int n) {
  if (n < 2) throw ValidationError("space form models require dim >= 2");
  return {ModelKind::Euclidean, 0.0, n, +1};
}

SpaceFormModel SpaceFormModel::klein(double K, int n) {
  if (!(K < 0.0)) throw ValidationError("klein model requires K < 0");
  if (n < 2) throw ValidationError("space form models require dim >= 2");
  return {ModelKind::Klein, K, n, +1};
}

double SpaceFormModel::psi() const {
  if (!curved()) throw ValidationError("psi is defined for curved models only");
  return curvature > 0.0 ? 1.0 : -1.0;
}

double SpaceFormModel::rho_at(const Vec& x) const { return 1.0 + psi() * x.squaredNorm(); }

void check_chart(const SpaceFormModel& model, const Vec& x) {
  if (x.size() != model.dim) throw ValidationError("point dimension does not match model");
  if (model.kind == ModelKind::Klein && x.squaredNorm() >= 1.0 - kKleinMargin)
    throw DomainError("klein chart requires x.x < 1");
}

Mat metric_at(const SpaceFormModel& model, const Vec& x) {
  check_chart(model, x);
  const int n = model.dim;
  if (model.kind == ModelKind::Euclidean) return Mat::Identity(n, n);
  const double psi = model.psi();
  const double rho = model.rho_at(x);
  const double absK = std::abs(model.curvature);
  Mat h = Mat::Identity(n, n) / rho - (psi / (rho * rho)) * (x * x.transpose());
  return h / absK;
}

Mat metric_inverse_at(const SpaceFormModel& model, const Vec& x) {
  check_chart(model, x);
  const int n = model.dim;
  if (model.kind == ModelKind::Euclidean) return Mat::Identity(n, n);
  const double psi = model.psi();
  const double rho = model.rho_at(x);
  const double absK = std::abs(model.curvature);
  return rho * absK * (Mat::Identity(n, n) + psi * (x * x.transpose()));
}

std::vector<Mat> christoffel_at(const SpaceFormModel& model, const Vec& x) {
  check_chart(model, x);
  const int n = model.dim;
  std::vector<Mat> gamma(n, Mat::Zero(n, n));
  if (model.kind == ModelKind::Euclidean) return gamma;
  const double psi = model.psi();
  const double rho = model.rho_at(x);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double v = -psi * (x[i] * (k == j ? 1.0 : 0.0) + x[j] * (k == i ? 1.0 : 0.0)) / rho;
        gamma[k](i, j) = gamma[k](j, i) = v;
      }
  return gamma;
}

double Tensor4::frobenius() const {
  double s = 0.0;
  for (double v : d_) s += v * v;
  return std::sqrt(s);
}

std::vector<Mat> christoffel_fd(const MatrixField& metric, const Vec& x) {
  const int n = static_cast<int>(x.size());
  const Mat h = metric(x);
  const Mat hinv = h.inverse();
  const std::vector<Mat> dh = central_fd_matrix_partials(metric, x);
  std::vector<Mat> gamma(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += hinv(k, l) * (dh[i](l, j) + dh[j](l, i) - dh[l](i, j));
        gamma[k](i, j) = gamma[k](j, i) = 0.5 * s;
      }
  return gamma;
}

Tensor4 riemann_lowered_fd(const ChristoffelField& gamma_field, const Mat& metric_at_x,
                           const Vec& x) {
  const int n = static_cast<int>(x.size());
  const std::vector<Mat> gamma = gamma_field(x);

  // dgamma[l][k](i,j) = d Gamma^k_ij / d x^l
  std::vector<std::vector<Mat>> dgamma(n);
  Vec xs = x;
  for (int l = 0; l < n; ++l) {
    const double h = fd_step(x[l]);
    auto eval = [&](double hh) {
      xs[l] = x[l] + hh;
      auto g = gamma_field(xs);
      xs[l] = x[l];
      return g;
    };
    auto diff = [&](double hh) {
      const auto gp = eval(hh);
      const auto gm = eval(-hh);
      std::vector<Mat> d(n);
      for (int k = 0; k < n; ++k) d[k] = (gp[k] - gm[k]) / (2.0 * hh);
      return d;
    };
    const auto d1 = diff(h);
    const auto d2 = diff(h / 2.0);
    dgamma[l].resize(n);
    for (int k = 0; k < n; ++k) dgamma[l][k] = (4.0 * d2[k] - d1[k]) / 3.0;
  }

  // R^l_ijk = d_k Gamma^l_ij - d_j Gamma^l_ik + Gamma^l_ks Gamma^s_ij
  //                                           - Gamma^l_js Gamma^s_ik
  Tensor4 R(n);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            double up = dgamma[k][l](i, j) - dgamma[j][l](i, k);
            for (int t = 0; t < n; ++t)
              up += gamma[l](k, t) * gamma[t](i, j) - gamma[l](j, t) * gamma[t](i, k);
            s += metric_at_x(h, l) * up;
          }
          R(h, i, j, k) = s;
        }
  return R;
}

double riemann_residual(const SpaceFormModel& model, const Vec& x) {
  check_chart(model, x);
  const int n = model.dim;
  const Mat h = metric_at(model, x);
  const Tensor4 R = riemann_lowered_fd(
      [&](const Vec& p) { return christoffel_at(model, p); }, h, x);
  const double kappa = model.curvature;
  Tensor4 res(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          res(a, i, j, k) = R(a, i, j, k) - kappa * (h(i, j) * h(a, k) - h(i, k) * h(a, j));
  return res.frobenius();
}

Vec sphere_embed_point(const Vec& x, int hemisphere_sign) {
  const int n = static_cast<int>(x.size());
  const double w = 1.0 / std::sqrt(1.0 + x.squaredNorm());
  Vec p(n + 1);
  p[0] = hemisphere_sign * w;
  p.tail(n) = w * x;
  return p;
}

Vec sphere_embed_tangent(const Vec& x, int hemisphere_sign, const Vec& v) {
  const int n = static_cast<int>(x.size());
  const double r = 1.0 + x.squaredNorm();
  const double w = 1.0 / std::sqrt(r);
  const double xv = x.dot(v);
  Vec t(n + 1);
  t[0] = -hemisphere_sign * xv * w / r;
  t.tail(n) = w * v - (xv * w / r) * x;
  return t;
}

Vec sphere_chart_point(const Vec& p) {
  if (std::abs(p[0]) < 1e-12)
    throw DomainError("sphere chart is undefined on the equator");
  return p.tail(p.size() - 1) / std::abs(p[0]);
}

}  // namespace zermelo
