#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "zermelo/geodesic.hpp"
#include "zermelo/spec_io.hpp"

using namespace zermelo;

namespace {

double conservation_drift(const Trajectory& t) {
  double lo = t.F_values.front(), hi = lo;
  for (double f : t.F_values) {
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return hi - lo;
}

Metric constant_wind_metric(const Vec& w) {
  const int n = static_cast<int>(w.size());
  auto spec = WindSpec::make(SpaceFormModel::euclidean(n), 0.0, Mat::Zero(n, n), w);
  return randers_metric(spec);
}

}  // namespace

TEST_CASE("minkowski trajectories are straight lines") {
  const Fixture fx = example_fixture("3.2.3");
  const Metric F = randers_metric(fx.spec);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const Vec x0 = zermelo::test::random_vec(3, rng, 0.3);
    Vec y0 = zermelo::test::random_vec(3, rng);
    y0.normalize();
    const Trajectory traj = geodesic_ivp(F, x0, y0, 1.0, 1e-2);
    REQUIRE_FALSE(traj.exited);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const Vec expect = x0 + traj.times[i] * y0;
      CHECK((traj.states[i].first - expect).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("round-sphere geodesics stay on great circles") {
  const auto model = SpaceFormModel::sphere(1.0, 3);
  const Metric F = riemannian_metric(model);
  std::mt19937_64 rng(2);
  const Vec x0 = zermelo::test::random_vec(3, rng, 0.3);
  Vec y0 = zermelo::test::random_vec(3, rng);
  y0.normalize();
  const Trajectory traj = geodesic_ivp(F, x0, y0, 1.0, 1e-3);
  REQUIRE_FALSE(traj.exited);

  // The embedded curve must stay in the plane spanned by p(0), p'(0).
  const Vec p0 = sphere_embed_point(x0, +1);
  const Vec t0 = sphere_embed_tangent(x0, +1, y0).normalized();
  for (std::size_t i = 0; i < traj.states.size(); i += 50) {
    const Vec p = sphere_embed_point(traj.states[i].first, +1);
    const Vec off = p - p.dot(p0) * p0 - p.dot(t0) * t0;
    CHECK(off.norm() < 1e-6);
    CHECK(std::abs(p.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("F is conserved along rotating-tank geodesics") {
  const Fixture fx = example_fixture("3.2.1");
  const Metric F = randers_metric(fx.spec);
  Vec x0(3), y0(3);
  x0 << 0.2, -0.1, 0.0;
  y0 << 0.3, 0.2, 0.1;
  const Trajectory traj = geodesic_ivp(F, x0, y0, 1.0, 1e-3);
  REQUIRE_FALSE(traj.exited);
  CHECK(conservation_drift(traj) <= 1e-6);
}

TEST_CASE("halving dt reduces the drift about sixteen-fold") {
  const auto model = SpaceFormModel::sphere(1.0, 2);
  const Metric F = riemannian_metric(model);
  Vec x0(2), y0(2);
  x0 << 0.4, -0.2;
  y0 << 0.9, 0.5;
  const double d1 = conservation_drift(geodesic_ivp(F, x0, y0, 1.0, 8e-3));
  const double d2 = conservation_drift(geodesic_ivp(F, x0, y0, 1.0, 4e-3));
  const double ratio = d1 / d2;
  CHECK(ratio > 9.0);
  CHECK(ratio < 26.0);
}

TEST_CASE("leaving the strongly convex domain truncates the trajectory") {
  const Fixture fx = example_fixture("3.2.1");  // convex cylinder x^2+y^2 < 1
  const Metric F = randers_metric(fx.spec);
  Vec x0(3), y0(3);
  x0 << 0.0, 0.0, 0.0;
  y0 << 1.0, 0.0, 0.0;
  const Trajectory traj = geodesic_ivp(F, x0, y0, 10.0, 1e-2);
  CHECK(traj.exited);
  CHECK(traj.times.back() < 10.0);
}

TEST_CASE("constant-wind shortest times match the navigation norm") {
  Vec w(2);
  w << 0.5, 0.0;
  const Metric F = constant_wind_metric(w);
  Vec start = Vec::Zero(2), goal_plus(2), goal_minus(2);
  goal_plus << 1.0, 0.0;
  goal_minus << -1.0, 0.0;
  const auto forward = shortest_time(F, start, goal_plus, 1e-5);
  CHECK(forward.time == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  const auto backward = shortest_time(F, start, goal_minus, 1e-5);
  CHECK(backward.time == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(std::abs(forward.time - backward.time) > 1e-3);  // reversal asymmetry
}

TEST_CASE("zero wind reduces to the euclidean distance, n = 3") {
  const Metric F = constant_wind_metric(Vec::Zero(3));
  Vec start(3), goal(3);
  start << 0.1, 0.0, -0.2;
  goal << 0.8, 0.4, 0.3;
  const auto r = shortest_time(F, start, goal, 1e-4);
  CHECK(r.time == doctest::Approx((goal - start).norm()).epsilon(1e-3));
}

TEST_CASE("rotating tank: shooting beats the straight-line crossing") {
  const Fixture fx = example_fixture("3.2.1");
  const Metric F = randers_metric(fx.spec);
  Vec start(3), goal(3);
  start << -0.4, 0.0, 0.0;
  goal << 0.4, 0.0, 0.0;
  const auto r = shortest_time(F, start, goal, 1e-3);

  // Direct F-integral along the straight segment as an upper bound.
  const Vec seg = goal - start;
  double straight_time = 0.0;
  const int quad = 400;
  for (int i = 0; i < quad; ++i) {
    const Vec x = start + ((i + 0.5) / quad) * seg;
    straight_time += F.value(x, seg) / quad;
  }
  CHECK(r.time <= straight_time + 1e-4);
}

TEST_CASE("trajectory CSV has the documented header") {
  const Metric F = constant_wind_metric(Vec::Zero(2));
  Vec x0(2), y0(2);
  x0 << 0.0, 0.0;
  y0 << 1.0, 0.0;
  const auto csv = trajectory_csv(geodesic_ivp(F, x0, y0, 0.01, 1e-3));
  CHECK(csv.rfind("t,x1,x2,F\n", 0) == 0);
}
