#pragma once

#include <random>

#include "zermelo/navigation.hpp"
#include "zermelo/wind.hpp"

namespace zermelo {

/// A Finsler metric on a chart, presented through F^2 with the fiber variable
/// carried as jets (so all y-derivatives up to second order are exact).
/// Base-point derivatives are taken by finite differences over this handle.
struct Metric {
  int dim = 0;
  std::function<Jet2(const Vec& x, const std::vector<Jet2>& y)> fsq;

  double fsq_value(const Vec& x, const Vec& y) const;
  double value(const Vec& x, const Vec& y) const;
};

/// Randers metric solving Zermelo navigation for the given spec.
Metric randers_metric(const WindSpec& spec);

/// Riemannian metric F = sqrt(a(y,y)) for a matrix field a.
Metric riemannian_metric(int dim, MatrixField a_field);
Metric riemannian_metric(const SpaceFormModel& model);

/// g_ij = (F^2)_{y^i y^j} / 2.
Mat fundamental_tensor(const Metric& F, const Vec& x, const Vec& y);

/// G^i = g^{il} [ (F^2)_{x^k y^l} y^k - (F^2)_{x^l} ] / 4.
Vec spray_coefficients(const Metric& F, const Vec& x, const Vec& y);

/// Spray difference zeta^i with a-spray = h-spray + zeta for the Randers
/// metric generated by the spec, in closed form from the wind tensors.
Vec zeta_at(const WindSpec& spec, const Vec& x, const Vec& y);

/// K^i_j = 2 d_{x^j} G^i - y^s d^2 G^i/dx^s dy^j + 2 G^s d^2 G^i/dy^s dy^j
///         - (dG^i/dy^s)(dG^s/dy^j),  satisfying K^i_j y^j = 0.
Mat spray_curvature(const Metric& F, const Vec& x, const Vec& y);

/// K(x,y,V) = g(V, K.V) / (g(y,y) g(V,V) - g(y,V)^2); the sign is calibrated
/// so the unit round sphere returns +1.
double flag_curvature(const Metric& F, const Vec& x, const Vec& y, const Vec& V);

struct FlagSample {
  Vec x, y, V;
  double K_value;
};

/// A chart ball on which the spec stays strongly convex with margin.
struct SampleRegion {
  Vec center;
  double radius;
  double center_margin;
};

SampleRegion find_sample_region(const WindSpec& spec, std::mt19937_64& rng);

/// Random chart point in the region with positive convexity margin.
Vec sample_region_point(const SampleRegion& region, const WindSpec& spec, std::mt19937_64& rng);

/// Unit vector with respect to the positive-definite form g.
Vec sample_unit_vector(const Mat& g, int dim, std::mt19937_64& rng);

/// Draws one admissible flag (x, y, V) for the spec and evaluates K.
FlagSample random_flag(const Metric& F, const WindSpec& spec, const SampleRegion& region,
                       std::mt19937_64& rng);

struct FlagStats {
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

FlagStats flag_statistics(const WindSpec& spec, const SampleRegion& region, int nflags,
                          std::mt19937_64& rng);

}  // namespace zermelo
