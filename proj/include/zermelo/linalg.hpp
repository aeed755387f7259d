#pragma once

#include <utility>
#include <vector>

#include "zermelo/jet.hpp"

namespace zermelo {

struct SpdResult {
  bool positive_definite;
  double min_eigenvalue;
};

/// True iff all eigenvalues of the symmetric matrix M exceed tol.  The input
/// must be symmetric within tol; otherwise a ValidationError is raised.
SpdResult spd_check(const Mat& M, double tol);

/// Eigenstructure of a real skew-symmetric matrix: rotation rates a_k > 0
/// with orthonormal plane bases (u_k, v_k) satisfying
///   Omega u = -a v,  Omega v = a u,
/// plus an orthonormal kernel basis.  With that convention
///   Omega = sum_k a_k (u_k v_k^t - v_k u_k^t).
struct EigenPairing {
  std::vector<double> values;                 // descending, all > tol
  std::vector<std::pair<Vec, Vec>> planes;    // (u_k, v_k)
  Mat kernel;                                 // columns
  Mat reconstruct(int dim) const;
};

double default_skew_tol(const Mat& Omega);

/// tol_eig < 0 selects default_skew_tol.  Values below tol_eig are treated as
/// zero and their directions reported in the kernel.  Ties keep the
/// first-appearance order of planes.
EigenPairing skew_eigen(const Mat& Omega, double tol_eig = -1.0);

/// max |(Omega + Omega^t)_{ij}|
double skew_defect(const Mat& Omega);

}  // namespace zermelo
