#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "zermelo/fd.hpp"
#include "zermelo/linalg.hpp"

using namespace zermelo;

TEST_CASE("jet of x^2 at 3") {
  Vec p(1);
  p << 3.0;
  const Jet2 j = jet2_eval([](const std::vector<Jet2>& x) { return x[0] * x[0]; }, p);
  CHECK(j.value() == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(j.grad()[0] == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(j.hessian()(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("jet of the Euclidean norm at (3,4)") {
  Vec p(2);
  p << 3.0, 4.0;
  const Jet2 j = jet2_eval(
      [](const std::vector<Jet2>& x) { return sqrt(x[0] * x[0] + x[1] * x[1]); }, p);
  CHECK(j.value() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(j.grad()[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(j.grad()[1] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("jet product and chain rules match hand-expanded polynomials") {
  // f(x,y) = (x^2 + 2xy)(y - 3) has
  //   f_x = (2x + 2y)(y - 3), f_y = 2x(y-3) + x^2 + 2xy
  //   f_xx = 2(y-3), f_xy = 2(y-3) + 2x + 2y, f_yy = 4x
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Vec p = test::random_vec(2, rng, 2.0);
    const double x = p[0], y = p[1];
    const Jet2 j = jet2_eval(
        [](const std::vector<Jet2>& v) {
          return (v[0] * v[0] + 2.0 * (v[0] * v[1])) * (v[1] - 3.0);
        },
        p);
    CHECK(j.value() == doctest::Approx((x * x + 2 * x * y) * (y - 3)).epsilon(1e-13));
    CHECK(j.grad()[0] == doctest::Approx((2 * x + 2 * y) * (y - 3)).epsilon(1e-13));
    CHECK(j.grad()[1] == doctest::Approx(2 * x * (y - 3) + x * x + 2 * x * y).epsilon(1e-13));
    CHECK(j.hessian()(0, 0) == doctest::Approx(2 * (y - 3)).epsilon(1e-13));
    CHECK(j.hessian()(0, 1) == doctest::Approx(2 * (y - 3) + 2 * x + 2 * y).epsilon(1e-13));
    CHECK(j.hessian()(1, 1) == doctest::Approx(4 * x).epsilon(1e-13));
    CHECK(j.hessian()(1, 0) == j.hessian()(0, 1));
  }
}

TEST_CASE("jet quotient rule against rational identity") {
  // f(x) = x^2 / (1 + x^2): f' = 2x/(1+x^2)^2, f'' = (2 - 6x^2)/(1+x^2)^3
  Vec p(1);
  p << 0.7;
  const Jet2 j = jet2_eval(
      [](const std::vector<Jet2>& v) { return (v[0] * v[0]) / (1.0 + v[0] * v[0]); }, p);
  const double x = 0.7, d = 1 + x * x;
  CHECK(j.value() == doctest::Approx(x * x / d).epsilon(1e-14));
  CHECK(j.grad()[0] == doctest::Approx(2 * x / (d * d)).epsilon(1e-14));
  CHECK(j.hessian()(0, 0) == doctest::Approx((2 - 6 * x * x) / (d * d * d)).epsilon(1e-13));
}

TEST_CASE("jet domain errors name the operation") {
  Vec p(1);
  p << -1.0;
  CHECK_THROWS_AS(jet2_eval([](const std::vector<Jet2>& v) { return sqrt(v[0]); }, p),
                  DomainError);
  Vec q(1);
  q << 0.0;
  CHECK_THROWS_AS(jet2_eval([](const std::vector<Jet2>& v) { return 1.0 / v[0]; }, q),
                  DomainError);
}

TEST_CASE("central fd: cubic derivative") {
  Vec p(1);
  p << 2.0;
  const Vec g = central_fd_gradient([](const Vec& x) { return x[0] * x[0] * x[0]; }, p, 1e-3);
  CHECK(g[0] == doctest::Approx(12.0).epsilon(1e-9));
}

TEST_CASE("central fd annotates the offending stencil point") {
  // field defined only for x0 < 1; a stencil at x0 = 1 - 1e-6 steps outside
  auto f = [](const Vec& x) {
    if (x[0] >= 1.0) throw DomainError("field undefined for x0 >= 1");
    return x[0] * x[0];
  };
  Vec p(1);
  p << 1.0 - 1e-6;
  CHECK_THROWS_WITH_AS(central_fd_gradient(f, p), doctest::Contains("stencil point"),
                       DomainError);
}

TEST_CASE("central fd: constant field differentiates to zero") {
  Vec p(3);
  p << 1.0, -2.0, 0.5;
  const Vec g = central_fd_gradient([](const Vec&) { return 4.25; }, p);
  CHECK(g.cwiseAbs().maxCoeff() == 0.0);
  const Mat h = central_fd_hessian([](const Vec&) { return 4.25; }, p);
  CHECK(h.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jet derivatives agree with central fd on a smooth field") {
  std::mt19937_64 rng(11);
  auto f_jet = [](const std::vector<Jet2>& v) {
    return sqrt(1.0 + v[0] * v[0] + 0.5 * (v[1] * v[2]) + v[1] * v[1]) / (2.0 + v[2] * v[2]);
  };
  auto f_val = [&](const Vec& x) { return f_jet(Jet2::seed(x)).value(); };
  for (int t = 0; t < 25; ++t) {
    const Vec p = test::random_vec(3, rng);
    const Jet2 j = jet2_eval(f_jet, p);
    const Vec g = central_fd_gradient(f_val, p);
    const Mat h = central_fd_hessian(f_val, p);
    const double tol = 1e-6 * (1.0 + std::abs(j.value()));
    CHECK((j.grad() - g).cwiseAbs().maxCoeff() < tol);
    CHECK((j.hessian() - h).cwiseAbs().maxCoeff() < tol);
  }
}

TEST_CASE("jet gradient of the Funk-variant metric squared matches central fd") {
  // F = (sqrt(tau^2 (x.y)^2 + |y|^2 (1 - tau^2 |x|^2)) - tau (x.y)) / (1 - tau^2 |x|^2)
  // as a function of y at a fixed interior x, with tau = -1.
  const double tau = -1.0;
  Vec x(3);
  x << 0.2, -0.3, 0.1;
  const double lam = 1.0 - tau * tau * x.squaredNorm();
  auto fsq_jet = [&](const std::vector<Jet2>& y) {
    Jet2 xy = Jet2::constant(0.0, static_cast<int>(y.size()));
    Jet2 yy = xy;
    for (std::size_t i = 0; i < y.size(); ++i) {
      xy += x[static_cast<int>(i)] * y[i];
      yy += y[i] * y[i];
    }
    const Jet2 F = (sqrt(tau * tau * (xy * xy) + lam * yy) - tau * xy) / lam;
    return F * F;
  };
  auto fsq_val = [&](const Vec& y) { return fsq_jet(Jet2::seed(y)).value(); };
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    Vec y = test::random_vec(3, rng);
    while (y.norm() < 0.3) y = test::random_vec(3, rng);
    const Jet2 j = jet2_eval(fsq_jet, y);
    const Vec g = central_fd_gradient(fsq_val, y);
    const Mat h = central_fd_hessian(fsq_val, y);
    const double tol = 1e-6 * (1.0 + std::abs(j.value()));
    CHECK((j.grad() - g).cwiseAbs().maxCoeff() <= tol);
    CHECK((j.hessian() - h).cwiseAbs().maxCoeff() <= tol);
  }
}

TEST_CASE("fd gradient of the rational ball-model norm matches jets") {
  // |y|^2 at fixed y as a rational function of the base point x:
  // ((y.y)(1 - x.x) + (x.y)^2) / (|K| (1 - x.x)^2)
  Vec y(3);
  y << 0.4, -0.1, 0.25;
  const double absK = 2.0;
  auto f_jet = [&](const std::vector<Jet2>& x) {
    Jet2 xx = Jet2::constant(0.0, static_cast<int>(x.size()));
    Jet2 xy = xx;
    for (std::size_t i = 0; i < x.size(); ++i) {
      xx += x[i] * x[i];
      xy += y[static_cast<int>(i)] * x[i];
    }
    const Jet2 one_minus = 1.0 - xx;
    return (y.squaredNorm() * one_minus + xy * xy) / (absK * (one_minus * one_minus));
  };
  auto f_val = [&](const Vec& x) { return f_jet(Jet2::seed(x)).value(); };
  std::mt19937_64 rng(32);
  for (int t = 0; t < 20; ++t) {
    Vec x = test::random_vec(3, rng, 0.3);
    if (x.norm() > 0.7) x *= 0.7 / x.norm();
    const Jet2 j = jet2_eval(f_jet, x);
    const Vec g = central_fd_gradient(f_val, x);
    CHECK((j.grad() - g).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + std::abs(j.value())));
  }
}

TEST_CASE("spd_check basics") {
  const auto r1 = spd_check(Mat::Identity(3, 3), 1e-12);
  CHECK(r1.positive_definite);
  CHECK(r1.min_eigenvalue == doctest::Approx(1.0));

  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  const auto r2 = spd_check(d, 1e-12);
  CHECK_FALSE(r2.positive_definite);

  Mat asym(2, 2);
  asym << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(spd_check(asym, 1e-12), ValidationError);
}

TEST_CASE("spd_check agrees with the principal-minor oracle up to size 4") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const Mat raw = test::random_mat(n, rng);
    Mat m = 0.5 * (raw + raw.transpose());
    if (t % 2 == 0) m += Mat::Identity(n, n) * 1.5;  // bias half the draws positive
    // Sylvester: positive definite iff all leading principal minors positive.
    bool minors_positive = true;
    for (int k = 1; k <= n; ++k)
      if (m.topLeftCorner(k, k).determinant() <= 0.0) minors_positive = false;
    const auto r = spd_check(m, 0.0);
    if (std::abs(r.min_eigenvalue) > 1e-9) CHECK(r.positive_definite == minors_positive);
  }
}

TEST_CASE("skew_eigen: tau J (+) 0 in dimension 3") {
  const double tau = 0.37;
  const Mat omega = test::j_blocks({tau}, 3);
  const auto pairing = skew_eigen(omega);
  REQUIRE(pairing.values.size() == 1);
  CHECK(pairing.values[0] == doctest::Approx(tau).epsilon(1e-12));
  CHECK(pairing.kernel.cols() == 1);
  CHECK((pairing.reconstruct(3) - omega).norm() < 1e-12);
}

TEST_CASE("skew_eigen: zero matrix") {
  const auto pairing = skew_eigen(Mat::Zero(4, 4));
  CHECK(pairing.values.empty());
  CHECK(pairing.kernel.cols() == 4);
}

TEST_CASE("skew_eigen: conjugated 2J (+) 5J recovers (5,2)") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) {
    const Mat b = test::random_orthogonal(4, rng);
    const Mat omega = b * test::j_blocks({2.0, 5.0}, 4) * b.transpose();
    const auto pairing = skew_eigen(omega);
    REQUIRE(pairing.values.size() == 2);
    CHECK(pairing.values[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(pairing.values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK((pairing.reconstruct(4) - omega).norm() < 1e-9 * (1.0 + omega.norm()));
  }
}

TEST_CASE("skew_eigen: reconstruction on random skew matrices incl. degenerate") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Mat omega;
    if (t % 3 == 0) {
      // exact double eigenvalue, kernel too
      const Mat b = test::random_orthogonal(n, rng);
      std::vector<double> a(n / 2, 0.0);
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = (k < 2) ? 1.5 : 0.0;
      omega = b * test::j_blocks(a, n) * b.transpose();
    } else {
      omega = test::random_skew(n, rng);
    }
    const auto pairing = skew_eigen(omega);
    CHECK((pairing.reconstruct(n) - omega).norm() <= 1e-9 * (1.0 + omega.norm()));
    for (std::size_t k = 0; k + 1 < pairing.values.size(); ++k)
      CHECK(pairing.values[k] >= pairing.values[k + 1] - 1e-9);
    // plane relations Omega u = -a v, Omega v = a u
    for (std::size_t k = 0; k < pairing.values.size(); ++k) {
      const auto& [u, v] = pairing.planes[k];
      const double a = pairing.values[k];
      CHECK((omega * u + a * v).norm() < 1e-8 * (1.0 + omega.norm()));
      CHECK((omega * v - a * u).norm() < 1e-8 * (1.0 + omega.norm()));
    }
  }
}

TEST_CASE("skew_eigen rejects non-skew input") {
  Mat m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  CHECK_THROWS_AS(skew_eigen(m), ValidationError);
}
