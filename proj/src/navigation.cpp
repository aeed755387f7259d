#include "zermelo/navigation.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace zermelo {

RandersData perturb(const Mat& h, const Vec& W) {
  const Vec w_low = h * W;
  const double w2 = W.dot(w_low);
  const double lambda = 1.0 - w2;
  if (lambda <= 0.0)
    throw ConvexityError("perturb: wind norm must satisfy h(W,W) < 1", lambda);
  RandersData out;
  out.a = h / lambda + (w_low * w_low.transpose()) / (lambda * lambda);
  out.b = -w_low / lambda;
  out.bnorm2 = w2;  // a^{ij} b_i b_j collapses to h(W,W)
  return out;
}

std::pair<Mat, Vec> unperturb(const RandersData& data) {
  Eigen::LLT<Mat> llt(data.a);
  if (llt.info() != Eigen::Success)
    throw ConvexityError("unperturb: a is not positive definite", 0.0);
  Vec b_up = llt.solve(data.b);
  b_up += llt.solve(Vec(data.b - data.a * b_up));  // one refinement step
  const double b2 = data.b.dot(b_up);
  const double eps = 1.0 - b2;
  if (eps <= 0.0) throw ConvexityError("unperturb: ||b|| must be < 1", eps);
  Mat h = eps * (data.a - data.b * data.b.transpose());
  Vec W = -b_up / eps;
  return {std::move(h), std::move(W)};
}

double randers_norm(const Mat& h, const Vec& W, const Vec& y) {
  const double w2 = W.dot(h * W);
  const double lambda = 1.0 - w2;
  if (lambda <= 0.0)
    throw ConvexityError("randers_norm: h(W,W) must be < 1", lambda);
  const double wy = W.dot(h * y);
  const double y2 = y.dot(h * y);
  return (std::sqrt(wy * wy + y2 * lambda) - wy) / lambda;
}

double randers_norm(const RandersData& data, const Vec& y) {
  if (data.bnorm2 >= 1.0)
    throw ConvexityError("randers_norm: ||b|| must be < 1", 1.0 - data.bnorm2);
  return std::sqrt(y.dot(data.a * y)) + data.b.dot(y);
}

}  // namespace zermelo
