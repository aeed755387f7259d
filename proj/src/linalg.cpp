#include "zermelo/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace zermelo {

double skew_defect(const Mat& Omega) {
  return (Omega + Omega.transpose()).cwiseAbs().maxCoeff();
}

SpdResult spd_check(const Mat& M, double tol) {
  if (M.rows() != M.cols()) throw ValidationError("spd_check: matrix is not square");
  const double sym_tol = std::max(tol, 0.0) + 1e-14 * (1.0 + M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > sym_tol)
    throw ValidationError("spd_check: matrix is not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig > tol, min_eig};
}

double default_skew_tol(const Mat& Omega) { return 1e-9 * (1.0 + Omega.norm()); }

Mat EigenPairing::reconstruct(int dim) const {
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Vec& u = planes[k].first;
    const Vec& v = planes[k].second;
    out += values[k] * (u * v.transpose() - v * u.transpose());
  }
  return out;
}

EigenPairing skew_eigen(const Mat& Omega, double tol_eig) {
  const int n = static_cast<int>(Omega.rows());
  if (Omega.cols() != n) throw ValidationError("skew_eigen: matrix is not square");
  if (n == 0) {
    EigenPairing empty;
    empty.kernel.resize(0, 0);
    return empty;
  }
  if (skew_defect(Omega) > 1e-10 * (1.0 + Omega.cwiseAbs().maxCoeff()))
    throw ValidationError("skew_eigen: matrix is not skew-symmetric within tolerance");
  const double tol = tol_eig >= 0.0 ? tol_eig : default_skew_tol(Omega);

  const Mat S = 0.5 * (Omega - Omega.transpose());
  // S^t S = -S^2 is symmetric PSD with eigenvalues a_k^2, and its eigenspaces
  // are S-invariant, so planes can be extracted eigenspace by eigenspace.
  Eigen::SelfAdjointEigenSolver<Mat> es(S.transpose() * S);
  if (es.info() != Eigen::Success) throw DegeneracyError("skew_eigen: eigensolver failed");

  struct Cand {
    double a;
    Vec w;
  };
  std::vector<Cand> cand;
  EigenPairing out;
  std::vector<Vec> kernel;
  for (int i = n - 1; i >= 0; --i) {  // Eigen sorts ascending
    const Vec w = es.eigenvectors().col(i);
    // |S w| decides zero-ness; sqrt of the eigenvalue would inflate the
    // roundoff floor of an exact zero to ~sqrt(eps).
    const double a = (S * w).norm();
    if (a > tol)
      cand.push_back({a, w});
    else
      kernel.push_back(w);
  }
  std::stable_sort(cand.begin(), cand.end(),
                   [](const Cand& l, const Cand& r) { return l.a > r.a; });

  // Group candidates into eigenvalue clusters; within a cluster, extract the
  // remaining column of largest residual first for stability.  Ties in a are
  // resolved by first appearance.
  std::size_t lo = 0;
  while (lo < cand.size()) {
    std::size_t hi = lo + 1;
    while (hi < cand.size() && cand[hi - 1].a - cand[hi].a <= tol) ++hi;
    const std::size_t dim = hi - lo;
    if (dim % 2 != 0)
      throw DegeneracyError("skew_eigen: odd-dimensional spinning eigenspace cluster");
    std::vector<Vec> dirs;  // u,v pairs already taken from this cluster
    for (std::size_t k = 0; k < dim / 2; ++k) {
      int best = -1;
      double best_norm = -1.0;
      std::vector<Vec> residual(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        Vec r = cand[lo + j].w;
        for (const auto& d : dirs) r -= d.dot(r) * d;
        residual[j] = r;
        if (r.norm() > best_norm + 1e-12) {
          best_norm = r.norm();
          best = static_cast<int>(j);
        }
      }
      if (best_norm < 1e-6)
        throw DegeneracyError("skew_eigen: cluster exhausted before all planes were found");
      Vec u = residual[best].normalized();
      const Vec su = S * u;
      const double a = su.norm();
      Vec v = -su / a;
      out.values.push_back(a);
      out.planes.emplace_back(u, v);
      dirs.push_back(u);
      dirs.push_back(v);
    }
    lo = hi;
  }

  out.kernel.resize(n, static_cast<int>(kernel.size()));
  for (std::size_t i = 0; i < kernel.size(); ++i) out.kernel.col(static_cast<int>(i)) = kernel[i];
  return out;
}

}  // namespace zermelo
