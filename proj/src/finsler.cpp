#include "zermelo/finsler.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace zermelo {

namespace {

// Fixed by requiring flag_curvature(round unit sphere) = +1.
constexpr double kSprayCurvatureSign = +1.0;

std::vector<Jet2> constant_jets(const Vec& y) {
  std::vector<Jet2> out;
  out.reserve(y.size());
  for (int i = 0; i < y.size(); ++i) out.push_back(Jet2::constant(y[i], 0));
  return out;
}

Jet2 quadratic_form(const Mat& a, const std::vector<Jet2>& y) {
  const int n = static_cast<int>(y.size());
  Jet2 s = Jet2::constant(0.0, y.empty() ? 0 : y[0].vars());
  for (int i = 0; i < n; ++i) {
    s += a(i, i) * (y[i] * y[i]);
    for (int j = 0; j < i; ++j) s += (2.0 * a(i, j)) * (y[i] * y[j]);
  }
  return s;
}

double directional_step(const Vec& x, const Vec& dir) {
  const double scale = dir.cwiseAbs().maxCoeff();
  return fd_step(x.cwiseAbs().maxCoeff()) / std::max(scale, 1e-8);
}

// Steps for the doubly-nested derivatives of the spray.  The inner layers are
// already finite differences, so their noise floor (~1e-9) forces a larger
// outer step than the base 1e-4 rule.
double outer_directional_step(const Vec& x, const Vec& dir) {
  const double scale = dir.cwiseAbs().maxCoeff();
  return 2e-2 * (1.0 + x.cwiseAbs().maxCoeff()) / std::max(scale, 1e-8);
}

double inner_jacobian_step(const Vec& y) { return 2e-3 * (1.0 + y.cwiseAbs().maxCoeff()); }

// Two Richardson levels (O(h^6) truncation) for the outer nested layer.
Mat directional_mat_o6(const std::function<Mat(double)>& g, double step) {
  auto extrap1 = [&](double h) -> Mat {
    auto diff = [&](double hh) -> Mat { return (g(hh) - g(-hh)) / (2.0 * hh); };
    return (4.0 * diff(h / 2.0) - diff(h)) / 3.0;
  };
  return (16.0 * extrap1(step / 2.0) - extrap1(step)) / 15.0;
}

}  // namespace

double Metric::fsq_value(const Vec& x, const Vec& y) const {
  return fsq(x, constant_jets(y)).value();
}

double Metric::value(const Vec& x, const Vec& y) const { return std::sqrt(fsq_value(x, y)); }

Metric randers_metric(const WindSpec& spec) {
  Metric m;
  m.dim = spec.model.dim;
  m.fsq = [spec](const Vec& x, const std::vector<Jet2>& y) {
    const RandersData data = perturb(metric_at(spec.model, x), wind_at(spec, x));
    const Jet2 alpha = sqrt(quadratic_form(data.a, y));
    Jet2 beta = Jet2::constant(0.0, y.empty() ? 0 : y[0].vars());
    for (std::size_t i = 0; i < y.size(); ++i) beta += data.b[static_cast<int>(i)] * y[i];
    const Jet2 F = alpha + beta;
    return F * F;
  };
  return m;
}

Metric riemannian_metric(int dim, MatrixField a_field) {
  Metric m;
  m.dim = dim;
  m.fsq = [a_field = std::move(a_field)](const Vec& x, const std::vector<Jet2>& y) {
    return quadratic_form(a_field(x), y);
  };
  return m;
}

Metric riemannian_metric(const SpaceFormModel& model) {
  return riemannian_metric(model.dim, [model](const Vec& x) { return metric_at(model, x); });
}

Mat fundamental_tensor(const Metric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) throw FlagError("fundamental tensor needs a nonzero flagpole");
  return 0.5 * F.fsq(x, Jet2::seed(y)).hessian();
}

Vec spray_coefficients(const Metric& F, const Vec& x, const Vec& y) {
  if (y.norm() == 0.0) throw FlagError("spray coefficients need a nonzero fiber vector");
  const std::vector<Jet2> yj = Jet2::seed(y);
  const Jet2 j0 = F.fsq(x, yj);
  const Mat g = 0.5 * j0.hessian();

  // y^k (F^2)_{x^k y^l}: x-derivative of the fiber gradient along y.
  const double ht = directional_step(x, y);
  const Vec mixed = central_fd_directional_vec(
      [&](double t) -> Vec { return F.fsq(x + t * y, yj).grad(); }, ht);

  const Vec dx = central_fd_gradient([&](const Vec& xx) { return F.fsq_value(xx, y); }, x);

  Eigen::LDLT<Mat> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw ConvexityError("spray coefficients: fundamental tensor is not positive definite",
                         0.0);
  return 0.25 * ldlt.solve(mixed - dx);
}

Vec zeta_at(const WindSpec& spec, const Vec& x, const Vec& y) {
  const WindDerivedTensors t = derived_tensors_at(spec, x);
  if (t.lambda <= 0.0) throw ConvexityError("zeta: point is not strongly convex", t.lambda);
  const Mat h = metric_at(spec.model, x);
  const Mat hinv = metric_inverse_at(spec.model, x);
  const Vec w_low = covariant_wind_at(spec, x);
  const double w0 = w_low.dot(y);
  const double t0 = t.T_low.dot(y);
  const double h00 = y.dot(h * y);
  const Vec t_up = hinv * t.T_low;
  const Vec c_up0 = hinv * (t.C_ij * y);
  const double lam = t.lambda;
  return (t0 - spec.sigma * w0) / (2.0 * lam) * y -
         (h00 / (4.0 * lam) + w0 * w0 / (2.0 * lam * lam)) * t_up +
         w0 / (2.0 * lam) * c_up0;
}

Mat spray_curvature(const Metric& F, const Vec& x, const Vec& y) {
  const int n = F.dim;
  const Vec G0 = spray_coefficients(F, x, y);

  auto jac_y = [&](const Vec& xx, const Vec& yy) {
    return central_fd_jacobian([&](const Vec& yv) { return spray_coefficients(F, xx, yv); },
                               yy, inner_jacobian_step(yy));
  };

  const Mat A = central_fd_jacobian(
      [&](const Vec& xx) { return spray_coefficients(F, xx, y); }, x);
  const Mat B = central_fd_jacobian(
      [&](const Vec& yv) { return spray_coefficients(F, x, yv); }, y);
  const Mat Cmix = directional_mat_o6([&](double t) { return jac_y(x + t * y, y); },
                                      outer_directional_step(x, y));
  Mat D = Mat::Zero(n, n);
  if (G0.cwiseAbs().maxCoeff() > 0.0)
    D = directional_mat_o6([&](double t) { return jac_y(x, y + t * G0); },
                           outer_directional_step(y, G0));

  return 2.0 * A - Cmix + 2.0 * D - B * B;
}

double flag_curvature(const Metric& F, const Vec& x, const Vec& y, const Vec& V) {
  const Mat g = fundamental_tensor(F, x, y);
  const double gyy = y.dot(g * y);
  const double gVV = V.dot(g * V);
  const double gyV = y.dot(g * V);
  const double gram = gyy * gVV - gyV * gyV;
  if (gram <= 1e-10 * gyy * gVV)
    throw FlagError("flag curvature: transverse edge is parallel to the flagpole");
  const Mat K = spray_curvature(F, x, y);
  return kSprayCurvatureSign * V.dot(g * (K * V)) / gram;
}

SampleRegion find_sample_region(const WindSpec& spec, std::mt19937_64& rng) {
  const int n = spec.model.dim;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto margin_of = [&](const Vec& x) -> double {
    try {
      return convexity_margin(spec, x);
    } catch (const DomainError&) {
      return -1.0;
    }
  };
  // The Klein metric blows up at the ball boundary, so weight candidate
  // points away from it; otherwise the convexity margin alone decides.
  auto score_of = [&](const Vec& x) -> double {
    const double m = margin_of(x);
    if (spec.model.kind != ModelKind::Klein) return m;
    return m * std::max(0.0, 1.0 - x.squaredNorm());
  };

  Vec best = Vec::Zero(n);
  double best_score = score_of(best);
  for (int trial = 0; trial < 400; ++trial) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    if (spec.model.kind == ModelKind::Klein)
      x *= 0.9 * std::pow(unif(rng), 1.0 / n) / x.norm();
    else
      x *= 0.8;
    const double s = score_of(x);
    if (s > best_score) {
      best_score = s;
      best = x;
    }
  }
  const double best_margin = margin_of(best);
  if (best_margin <= 1e-3)
    throw ConvexityError("no strongly convex chart region found for this spec", best_margin);

  double radius = 0.4;
  if (spec.model.kind == ModelKind::Klein)
    radius = std::min(radius, 0.45 * (1.0 - best.norm()));
  for (int shrink = 0; shrink < 25; ++shrink) {
    bool ok = true;
    for (int probe = 0; probe < 64 && ok; ++probe) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d[i] = gauss(rng);
      d *= radius * std::pow(unif(rng), 1.0 / n) / d.norm();
      ok = margin_of(best + d) > 0.3 * best_margin;
    }
    if (ok) return {best, radius, best_margin};
    radius *= 0.6;
  }
  throw ConvexityError("could not fit a strongly convex ball around the best point",
                       best_margin);
}

Vec sample_region_point(const SampleRegion& region, const WindSpec& spec,
                        std::mt19937_64& rng) {
  const int n = spec.model.dim;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 200; ++attempt) {
    Vec d(n);
    for (int i = 0; i < n; ++i) d[i] = gauss(rng);
    d *= region.radius * std::pow(unif(rng), 1.0 / n) / d.norm();
    const Vec x = region.center + d;
    try {
      if (convexity_margin(spec, x) > 0.2 * region.center_margin) return x;
    } catch (const DomainError&) {
    }
  }
  throw ConvexityError("sample region rejection loop exhausted", region.center_margin);
}

Vec sample_unit_vector(const Mat& g, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vec u(dim);
    for (int i = 0; i < dim; ++i) u[i] = gauss(rng);
    const double n2 = u.dot(g * u);
    if (n2 > 1e-12) return u / std::sqrt(n2);
  }
  throw DegeneracyError("unit vector sampling failed");
}

FlagSample random_flag(const Metric& F, const WindSpec& spec, const SampleRegion& region,
                       std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Vec x = sample_region_point(region, spec, rng);
    const Mat h = metric_at(spec.model, x);
    const Vec y = sample_unit_vector(h, spec.model.dim, rng);
    const Vec V = sample_unit_vector(h, spec.model.dim, rng);
    const Mat g = fundamental_tensor(F, x, y);
    const double gyy = y.dot(g * y);
    const double gVV = V.dot(g * V);
    const double gyV = y.dot(g * V);
    if (gyy * gVV - gyV * gyV <= 1e-6 * gyy * gVV) continue;  // nearly parallel, resample
    return {x, y, V, flag_curvature(F, x, y, V)};
  }
  throw DegeneracyError("flag sampling failed to produce a nondegenerate flag");
}

FlagStats flag_statistics(const WindSpec& spec, const SampleRegion& region, int nflags,
                          std::mt19937_64& rng) {
  const Metric F = randers_metric(spec);
  FlagStats stats;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < nflags; ++i) {
    const FlagSample s = random_flag(F, spec, region, rng);
    sum += s.K_value;
    sumsq += s.K_value * s.K_value;
  }
  stats.count = nflags;
  stats.mean = sum / nflags;
  const double var = std::max(0.0, sumsq / nflags - stats.mean * stats.mean);
  stats.stddev = std::sqrt(var * nflags / std::max(1, nflags - 1));
  return stats;
}

}  // namespace zermelo
