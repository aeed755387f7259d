#pragma once

#include <string>

#include "zermelo/linalg.hpp"

namespace zermelo {

enum class NormalFamily { Orthogonal, Euclidean, Lorentz };
enum class NormalSubtype { None, J, S, T, FlatSigmaZero, FlatSigmaNonzero };
enum class FlatBranch { None, Rotation, Translation };

std::string to_string(NormalFamily f);
std::string to_string(NormalSubtype s);
std::string to_string(FlatBranch b);

/// Canonical adjoint-orbit representative: block parameters a_1 >= ... (with
/// the family's labeling conventions), an extra translation residue xi for
/// the Euclidean sigma = 0 family, and the group element g realizing
/// g Omega g^{-1} = normal_matrix().
struct BlockNormalForm {
  NormalFamily family = NormalFamily::Orthogonal;
  NormalSubtype subtype = NormalSubtype::None;
  FlatBranch branch = FlatBranch::None;
  Vec a;
  double extra = 0.0;  // xi
  double sigma = 0.0;  // Euclidean homothety constant
  Mat conjugator;
  int ambient = 0;  // matrix side of the input Omega
  int n = 0;        // underlying space dimension

  Mat normal_matrix() const;
  /// || g Omega g^{-1} - normal_matrix() ||_F
  double reconstruction_residual(const Mat& omega) const;
  /// Deviation of the conjugator from its group: orthogonality, affine block
  /// structure, or the Lorentz relation g^{-1} = E g^t E with g^0_0 >= 1.
  double group_residual() const;
};

/// O(l)-conjugation of a skew matrix into a_1 J (+) ... (+) a_m J ((+) 0).
BlockNormalForm skew_normal_form(const Mat& omega);

/// E(n) reduction of the affine representative of W = -sigma/2 x + Qx + C.
/// For sigma = 0 the parameters follow the rotation/translation branch
/// labeling; for sigma != 0 the translation part is absorbed completely.
BlockNormalForm euclidean_normal_form(const Mat& Q, const Vec& C, double sigma);

/// Subtype of Omega in o(1,n): J if ker Omega contains a timelike vector,
/// S if Omega has a nonzero real eigenvalue, T for the nilpotent-like rest.
NormalSubtype lorentz_classify(const Mat& omega);

/// O_+(1,n) normal form of types J, S, T.
BlockNormalForm lorentz_normal_form(const Mat& omega);

/// Minkowski form matrix E = diag(-1, 1, ..., 1).
Mat minkowski_form(int n_plus_1);
/// max | (Omega^t + E Omega E)_{ij} |
double lorentz_defect(const Mat& omega);

}  // namespace zermelo
