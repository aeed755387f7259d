#pragma once

#include <utility>

#include "zermelo/jet.hpp"

namespace zermelo {

/// Pointwise Randers data (a_ij, b_i) with ||b||^2 = a^{ij} b_i b_j.
struct RandersData {
  Mat a;
  Vec b;
  double bnorm2;
};

/// (h, W) -> (a, b):  a = h/lambda + (W_low W_low^t)/lambda^2,
/// b = -W_low/lambda, lambda = 1 - h(W,W).  Requires h(W,W) < 1.
RandersData perturb(const Mat& h, const Vec& W);

/// (a, b) -> (h, W):  h = eps (a - b b^t), W = -b_sharp/eps, eps = 1 - ||b||^2.
std::pair<Mat, Vec> unperturb(const RandersData& data);

/// F(y) = (sqrt(h(W,y)^2 + |y|^2 lambda) - h(W,y)) / lambda.
double randers_norm(const Mat& h, const Vec& W, const Vec& y);

/// F(y) = sqrt(a(y,y)) + b(y); equal to the navigation form.
double randers_norm(const RandersData& data, const Vec& y);

}  // namespace zermelo
