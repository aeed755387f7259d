#pragma once

#include <optional>
#include <span>

#include "zermelo/finsler.hpp"
#include "zermelo/normal_form.hpp"

namespace zermelo {

enum class ModuliCase { SpherePlus, FlatZero, FlatNegative, KleinJ, KleinS, KleinT };

std::string to_string(ModuliCase c);

/// Classified point of the moduli space: flag curvature, homothety constant,
/// case tag, block parameters and admissibility flags.
struct ModuliPoint {
  double K = 0.0;
  double sigma = 0.0;
  ModuliCase case_ = ModuliCase::FlatZero;
  FlatBranch branch = FlatBranch::None;  // Euclidean sigma = 0 bookkeeping
  Vec a;
  bool locally_admissible = false;
  bool globally_admissible = false;
  BlockNormalForm form;
};

/// Dispatches the spec onto its family, computes the adjoint-orbit normal
/// form and fills the admissibility flags.  Raises ConvexityError when no
/// strongly convex open set exists and ClassificationError on inconsistent
/// (sigma, K) data.
ModuliPoint classify(const WindSpec& spec);

/// Pointwise Randers data as a field over the chart.
using RandersField = std::function<RandersData(const Vec&)>;
RandersField randers_field(const WindSpec& spec);

struct CfcResiduals {
  double basic = 0.0;      // Lie-derivative equation residual (max over points)
  double curvature = 0.0;  // curvature equation residual (max over points)
  double xi = 0.0;         // xi at the first sample point
  double theta_norm = 0.0; // max ||theta||_a over points
  double sampled_flag_std = std::numeric_limits<double>::quiet_NaN();
  double sigma_dev = 0.0;  // max |sigma recomputed - sigma|
};

/// Verifies the two constant-flag-curvature equations numerically on the
/// given (a, b) field at the sample points.  All derivatives of the field are
/// taken by finite differences.
CfcResiduals cfc_residuals(const RandersField& field, int dim, double K, double sigma,
                           std::span<const Vec> points);

/// theta_j = b^i (d_j b_i - d_i b_j), indices via a, from field derivatives.
Vec theta_numeric(const RandersField& field, const Vec& x);

/// |sigma (K + sigma^2/16)| <= 1e-12
bool matsumoto_check(double K, double sigma);

/// Algebraic theta = 0 criterion: Q = 0 on flat space; QC = 0 and
/// Q^2 = psi (C C^t - |C|^2 I) on the curved models.
bool theta_zero_check(const WindSpec& spec);

/// Residual of the identity (1 - |W|^2) theta_j = (|W|^2)_{:j} + sigma W_j.
double theta_navigation_residual(const WindSpec& spec, const Vec& x);

/// Closed 1-form criterion: Q = 0 on flat space, W == 0 on curved models.
bool projectively_flat_check(const WindSpec& spec);

/// Moduli-space dimension; k_sign in {-1, 0, +1}.
int moduli_dimension(int n, int k_sign, bool sigma_nonzero);

/// Push the spec forward through an isometry of its model, given as the
/// ambient matrix representative (orthogonal / affine / Lorentz).
WindSpec pushforward(const WindSpec& spec, const Mat& g);

}  // namespace zermelo
