#include "zermelo/classify.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace zermelo {

std::string to_string(ModuliCase c) {
  switch (c) {
    case ModuliCase::SpherePlus: return "SpherePlus";
    case ModuliCase::FlatZero: return "FlatZero";
    case ModuliCase::FlatNegative: return "FlatNegative";
    case ModuliCase::KleinJ: return "KleinJ";
    case ModuliCase::KleinS: return "KleinS";
    case ModuliCase::KleinT: return "KleinT";
  }
  return "?";
}

namespace {

constexpr double kMatsumotoTol = 1e-12;

ModuliPoint classify_sphere(const WindSpec& spec) {
  const int n = spec.model.dim;
  const double K = spec.model.curvature;
  ModuliPoint out;
  out.K = K;
  out.sigma = 0.0;
  out.case_ = ModuliCase::SpherePlus;
  out.form = skew_normal_form(wind_matrix(spec));
  out.a = out.form.a;
  const double root_k = std::sqrt(K);
  out.locally_admissible = (n % 2 == 0) || (out.a[out.a.size() - 1] < root_k);
  out.globally_admissible = out.a[0] < root_k;
  if (!out.locally_admissible)
    throw ConvexityError(
        "no strongly convex open set: odd-sphere condition a_m < sqrt(K) fails",
        root_k - out.a[out.a.size() - 1]);
  return out;
}

ModuliPoint classify_euclidean(const WindSpec& spec) {
  ModuliPoint out;
  out.sigma = spec.sigma;
  out.K = -spec.sigma * spec.sigma / 16.0;
  out.form = euclidean_normal_form(spec.Q, spec.C, spec.sigma);
  out.a = out.form.a;
  out.branch = out.form.branch;
  if (spec.sigma != 0.0) {
    out.case_ = ModuliCase::FlatNegative;
    out.locally_admissible = true;   // a neighborhood of the origin always works
    out.globally_admissible = false; // |W|^2 is a nonzero polynomial
    return out;
  }
  out.case_ = ModuliCase::FlatZero;
  const double xi = out.form.extra;
  out.locally_admissible = (out.branch == FlatBranch::Rotation) || (xi < 1.0);
  // Global iff W is a constant vector shorter than 1: no rotation rates, xi < 1.
  bool rotation_free = true;
  const int first_rate = out.branch == FlatBranch::Rotation ? 0 : 1;
  for (int i = first_rate; i < out.a.size(); ++i)
    if (out.a[i] > 1e-12) rotation_free = false;
  out.globally_admissible = rotation_free && xi < 1.0;
  if (!out.locally_admissible)
    throw ConvexityError("no strongly convex open set: translation residue xi >= 1",
                         1.0 - xi);
  return out;
}

ModuliPoint classify_klein(const WindSpec& spec) {
  ModuliPoint out;
  out.sigma = 0.0;
  out.K = spec.model.curvature;
  out.form = lorentz_normal_form(wind_matrix(spec));
  out.a = out.form.a;
  const double root_k = std::sqrt(-spec.model.curvature);
  switch (out.form.subtype) {
    case NormalSubtype::J:
      out.case_ = ModuliCase::KleinJ;
      out.locally_admissible = true;
      break;
    case NormalSubtype::S:
      out.case_ = ModuliCase::KleinS;
      out.locally_admissible = out.a[0] < root_k;
      break;
    case NormalSubtype::T:
      out.case_ = ModuliCase::KleinT;
      out.locally_admissible = true;
      break;
    default:
      throw ClassificationError("klein classification produced no subtype");
  }
  out.globally_admissible = out.a.cwiseAbs().maxCoeff() <= 1e-12;  // W must vanish
  if (!out.locally_admissible)
    throw ConvexityError(
        "no strongly convex open set: type S requires a_1 < sqrt(|K|)",
        root_k - out.a[0]);
  return out;
}

}  // namespace

ModuliPoint classify(const WindSpec& spec) {
  if (spec.model.kind != ModelKind::Euclidean && spec.sigma != 0.0)
    throw ClassificationError("sigma must vanish on curved models");
  ModuliPoint out;
  switch (spec.model.kind) {
    case ModelKind::Sphere:
      out = classify_sphere(spec);
      break;
    case ModelKind::Euclidean:
      out = classify_euclidean(spec);
      break;
    case ModelKind::Klein:
      out = classify_klein(spec);
      break;
  }
  if (!matsumoto_check(out.K, out.sigma))
    throw ClassificationError("(K, sigma) pair violates sigma (K + sigma^2/16) = 0");
  return out;
}

RandersField randers_field(const WindSpec& spec) {
  return [spec](const Vec& x) {
    return perturb(metric_at(spec.model, x), wind_at(spec, x));
  };
}

Vec theta_numeric(const RandersField& field, const Vec& x) {
  const RandersData data = field(x);
  const Mat db = central_fd_jacobian([&](const Vec& p) { return Vec(field(p).b); }, x);
  const Mat curl = db - db.transpose();  // curl_ij = d_j b_i - d_i b_j
  const Vec b_up = data.a.ldlt().solve(data.b);
  return curl.transpose() * b_up;  // theta_j = b^i curl_ij
}

CfcResiduals cfc_residuals(const RandersField& field, int dim, double K, double sigma,
                           std::span<const Vec> points) {
  CfcResiduals out;
  const int n = dim;
  bool first = true;
  for (const Vec& x : points) {
    const RandersData data = field(x);
    const Mat& a = data.a;
    const Mat a_inv = a.inverse();
    const Vec b_up = a_inv * data.b;
    const double b2 = data.b.dot(b_up);
    if (b2 >= 1.0)
      throw ConvexityError("cfc_residuals: sample point is not strongly convex", 1.0 - b2);

    const auto da = central_fd_matrix_partials(
        [&](const Vec& p) { return Mat(field(p).a); }, x);
    const Mat db = central_fd_jacobian([&](const Vec& p) { return Vec(field(p).b); }, x);
    const Mat db_up =
        central_fd_jacobian([&](const Vec& p) {
          const RandersData d = field(p);
          return Vec(d.a.ldlt().solve(d.b));
        }, x);

    const Mat curl = db - db.transpose();
    const Vec theta = curl.transpose() * b_up;
    const Vec theta_up = a_inv * theta;
    const double theta2 = theta.dot(theta_up);
    out.theta_norm = std::max(out.theta_norm, std::sqrt(std::max(0.0, theta2)));

    // Basic equation: L_{b#} a - sigma (a - b b^t) + (b theta^t + theta b^t) = 0.
    Mat lie = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) lie += b_up[k] * da[k];
    lie += a * db_up + db_up.transpose() * a;
    const Mat basic =
        lie - sigma * (a - data.b * data.b.transpose()) +
        (data.b * theta.transpose() + theta * data.b.transpose());
    out.basic = std::max(out.basic, basic.norm());

    // Curvature equation against the numerically assembled Riemann tensor.
    const double xi =
        (K - 3.0 * sigma * sigma / 16.0) + (K + sigma * sigma / 16.0) * b2 - 0.25 * theta2;
    if (first) out.xi = xi;
    const Tensor4 R = riemann_lowered_fd(
        [&](const Vec& p) {
          return christoffel_fd([&](const Vec& q) { return Mat(field(q).a); }, p);
        },
        a, x);
    const Mat M = curl.transpose() * a_inv * curl;  // curl^t_h curl_tk
    Tensor4 res(n);
    for (int h = 0; h < n; ++h)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            double rhs = xi * (a(i, j) * a(h, k) - a(i, k) * a(h, j));
            rhs += -0.25 * a(i, j) * M(h, k) + 0.25 * a(i, k) * M(h, j) +
                   0.25 * a(h, j) * M(i, k) - 0.25 * a(h, k) * M(i, j);
            rhs += -0.25 * curl(i, j) * curl(h, k) + 0.25 * curl(i, k) * curl(h, j) +
                   0.5 * curl(h, i) * curl(j, k);
            res(h, i, j, k) = R(h, i, j, k) - rhs;
          }
    out.curvature = std::max(out.curvature, res.frobenius());

    // sigma recomputed as 2 div b# / (n - ||b||^2).
    const auto gamma = christoffel_fd([&](const Vec& q) { return Mat(field(q).a); }, x);
    double div_b = db_up.trace();
    for (int k = 0; k < n; ++k)
      for (int s = 0; s < n; ++s) div_b += gamma[k](k, s) * b_up[s];
    const double sigma_rec = 2.0 * div_b / (n - b2);
    out.sigma_dev = std::max(out.sigma_dev, std::abs(sigma_rec - sigma));
    first = false;
  }
  return out;
}

bool matsumoto_check(double K, double sigma) {
  return std::abs(sigma * (K + sigma * sigma / 16.0)) <= kMatsumotoTol;
}

bool theta_zero_check(const WindSpec& spec) {
  const int n = spec.model.dim;
  const double scale = 1.0 + spec.Q.norm() + spec.C.norm();
  if (spec.model.kind == ModelKind::Euclidean)
    return spec.Q.cwiseAbs().maxCoeff() <= 1e-10 * scale;
  const double psi = spec.model.psi();
  const Mat lhs = spec.Q * spec.Q;
  const Mat rhs = psi * (spec.C * spec.C.transpose() -
                         spec.C.squaredNorm() * Mat::Identity(n, n));
  return (spec.Q * spec.C).cwiseAbs().maxCoeff() <= 1e-10 * scale * scale &&
         (lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * scale * scale;
}

double theta_navigation_residual(const WindSpec& spec, const Vec& x) {
  const RandersField field = randers_field(spec);
  const Vec theta = theta_numeric(field, x);
  const double w2 = 1.0 - convexity_margin(spec, x);
  const Vec grad_w2 = central_fd_gradient(
      [&](const Vec& p) { return 1.0 - convexity_margin(spec, p); }, x);
  const Vec w_low = covariant_wind_at(spec, x);
  return ((1.0 - w2) * theta - grad_w2 - spec.sigma * w_low).cwiseAbs().maxCoeff();
}

bool projectively_flat_check(const WindSpec& spec) {
  const double scale = 1.0 + spec.Q.norm() + spec.C.norm();
  const bool q_zero = spec.Q.cwiseAbs().maxCoeff() <= 1e-10 * scale;
  if (spec.model.kind == ModelKind::Euclidean) return q_zero;
  return q_zero && spec.C.cwiseAbs().maxCoeff() <= 1e-10 * scale;
}

int moduli_dimension(int n, int k_sign, bool sigma_nonzero) {
  if (n < 2) throw ValidationError("moduli_dimension requires n >= 2");
  if (sigma_nonzero && k_sign >= 0)
    throw ClassificationError("sigma != 0 forces K = -sigma^2/16 < 0");
  if (n % 2 == 0) return n / 2;
  return (k_sign < 0 && sigma_nonzero) ? (n - 1) / 2 : (n + 1) / 2;
}

WindSpec pushforward(const WindSpec& spec, const Mat& g) {
  const int n = spec.model.dim;
  if (g.rows() != n + 1 || g.cols() != n + 1)
    throw ValidationError("pushforward: isometry matrix must be (n+1) x (n+1)");
  const Mat omega2 = g * wind_matrix(spec) * g.inverse();
  Mat Q2;
  Vec C2;
  switch (spec.model.kind) {
    case ModelKind::Sphere:
      Q2 = -omega2.block(1, 1, n, n);
      C2 = omega2.block(0, 1, 1, n).transpose();
      break;
    case ModelKind::Klein:
      Q2 = -omega2.block(1, 1, n, n);
      C2 = omega2.block(1, 0, n, 1);
      break;
    case ModelKind::Euclidean: {
      const Mat top = omega2.topLeftCorner(n, n);
      Q2 = -(top + 0.5 * spec.sigma * Mat::Identity(n, n));
      C2 = omega2.block(n, 0, 1, n).transpose();
      break;
    }
  }
  Q2 = 0.5 * (Q2 - Q2.transpose());
  return WindSpec::make(spec.model, spec.sigma, Q2, C2);
}

}  // namespace zermelo
