#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "test_util.hpp"
#include "zermelo/normal_form.hpp"
#include "zermelo/spec_io.hpp"

using namespace zermelo;

namespace {

Mat lorentz_omega(const Mat& Q, const Vec& C) {
  const int n = static_cast<int>(Q.rows());
  Mat omega = Mat::Zero(n + 1, n + 1);
  omega.block(0, 1, 1, n) = C.transpose();
  omega.block(1, 0, n, 1) = C;
  omega.block(1, 1, n, n) = -Q;
  return omega;
}

Mat random_orthochronous(int n, std::mt19937_64& rng, double scale = 0.6) {
  const Mat q = zermelo::test::random_skew(n, rng, scale);
  const Vec c = zermelo::test::random_vec(n, rng, scale);
  const Mat gen = lorentz_omega(q, c);
  return gen.exp();
}

void check_form(const BlockNormalForm& f, const Mat& omega) {
  CHECK(f.group_residual() <= 1e-10);
  CHECK(f.reconstruction_residual(omega) <= 1e-9 * (1.0 + omega.norm()));
}

}  // namespace

TEST_CASE("skew normal form: tau J (+) 0J from the rotational example") {
  const double tau = 0.8;
  const Mat omega = zermelo::test::j_blocks({tau, 0.0}, 4);
  const auto f = skew_normal_form(omega);
  REQUIRE(f.a.size() == 2);
  CHECK(f.a[0] == doctest::Approx(tau).epsilon(1e-12));
  CHECK(f.a[1] == doctest::Approx(0.0));
  check_form(f, omega);
}

TEST_CASE("skew normal form: zero matrix") {
  const auto f = skew_normal_form(Mat::Zero(5, 5));
  CHECK(f.a.cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.conjugator * f.conjugator.transpose() - Mat::Identity(5, 5)).norm() < 1e-12);
}

TEST_CASE("skew normal form: Hopf-fiber Killing embedding has a double rate") {
  const double K = 2.0;
  const double c = std::sqrt(K - 1.0);
  // Omega = [[0, C^t], [-C, -Q]] with Q = 0 (+) cJ, C = (-c, 0, 0).
  Mat omega = Mat::Zero(4, 4);
  omega(0, 1) = -c;
  omega(1, 0) = c;
  omega(2, 3) = -c;
  omega(3, 2) = c;
  const auto f = skew_normal_form(omega);
  REQUIRE(f.a.size() == 2);
  CHECK(f.a[0] == doctest::Approx(c).epsilon(1e-12));
  CHECK(f.a[1] == doctest::Approx(c).epsilon(1e-12));
  check_form(f, omega);
}

TEST_CASE("skew normal form: random construct-then-recover") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const int l = 2 + static_cast<int>(rng() % 6);
    const Mat omega = zermelo::test::random_skew(l, rng);
    const auto f = skew_normal_form(omega);
    check_form(f, omega);
    const Mat g0 = zermelo::test::random_orthogonal(l, rng);
    const auto f2 = skew_normal_form(Mat(g0 * omega * g0.transpose()));
    CHECK((f.a - f2.a).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("euclidean normal form: pure translation") {
  Vec C(3);
  C << 0.3, 0.2, 0.1;
  const auto f = euclidean_normal_form(Mat::Zero(3, 3), C, 0.0);
  CHECK(f.subtype == NormalSubtype::FlatSigmaZero);
  REQUIRE(f.a.size() == 2);
  CHECK(f.a[0] == doctest::Approx(C.norm()).epsilon(1e-12));
  CHECK(f.a[1] == doctest::Approx(0.0));
  CHECK(f.extra == doctest::Approx(C.norm()).epsilon(1e-12));
  Mat omega = Mat::Zero(4, 4);
  omega.block(3, 0, 1, 3) = C.transpose();
  check_form(f, omega);
}

TEST_CASE("euclidean normal form: rotating tank data") {
  const Fixture fx = example_fixture("3.2.1");
  const auto f = euclidean_normal_form(fx.spec.Q, fx.spec.C, 0.0);
  CHECK(f.extra == doctest::Approx(0.0));
  // odd n labeling: a = (xi, rho_1) = (0, 1)
  REQUIRE(f.a.size() == 2);
  CHECK(f.a[0] == doctest::Approx(0.0));
  CHECK(f.a[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("euclidean normal form: radial homothety") {
  const Fixture fx = example_fixture("3.2.2");
  const auto f = euclidean_normal_form(fx.spec.Q, fx.spec.C, fx.spec.sigma);
  CHECK(f.subtype == NormalSubtype::FlatSigmaNonzero);
  CHECK(f.a.cwiseAbs().maxCoeff() == 0.0);
  const Mat m = f.normal_matrix();
  CHECK(m.block(3, 0, 1, 3).cwiseAbs().maxCoeff() == 0.0);  // C-tilde = 0
}

TEST_CASE("euclidean normal form: construct-then-recover across branches") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Mat Q = zermelo::test::random_skew(n, rng);
    const Vec C = zermelo::test::random_vec(n, rng);
    const double sigma = (t % 3 == 0) ? unif(rng) * (t % 2 ? 1.0 : -1.0) : 0.0;
    const auto f = euclidean_normal_form(Q, C, sigma);

    // the affine representative of the field
    Mat omega = Mat::Zero(n + 1, n + 1);
    omega.topLeftCorner(n, n) = -0.5 * sigma * Mat::Identity(n, n) - Q;
    omega.block(n, 0, 1, n) = C.transpose();
    CHECK(f.group_residual() <= 1e-10);
    CHECK(f.reconstruction_residual(omega) <= 1e-8 * (1.0 + omega.norm()));

    // push through a random euclidean isometry and recover the same labels
    const Mat A = zermelo::test::random_orthogonal(n, rng);
    const Vec b = zermelo::test::random_vec(n, rng);
    const Mat Q2 = A * Q * A.transpose();
    const Vec C2 = A * ((Q - 0.5 * sigma * Mat::Identity(n, n)) * b + C);
    const auto f2 = euclidean_normal_form(Q2, C2, sigma);
    CHECK(f2.branch == f.branch);
    CHECK((f.a - f2.a).cwiseAbs().maxCoeff() < 1e-8 * (1.0 + f.a.cwiseAbs().maxCoeff()));
    CHECK(std::abs(f.extra - f2.extra) < 1e-8);
  }
}

TEST_CASE("lorentz subtype of the three hyperbolic examples") {
  const auto f331 = example_fixture("3.3.1");
  const auto f332 = example_fixture("3.3.2");
  const auto f333 = example_fixture("3.3.3");
  CHECK(lorentz_classify(lorentz_omega(f331.spec.Q, f331.spec.C)) == NormalSubtype::J);
  CHECK(lorentz_classify(lorentz_omega(f332.spec.Q, f332.spec.C)) == NormalSubtype::S);
  CHECK(lorentz_classify(lorentz_omega(f333.spec.Q, f333.spec.C)) == NormalSubtype::T);
}

TEST_CASE("lorentz classify rejects non-members") {
  Mat m = Mat::Identity(4, 4);
  CHECK_THROWS_AS(lorentz_classify(m), ValidationError);
}

TEST_CASE("lorentz normal form: zero matrix is J with a = 0") {
  const auto f = lorentz_normal_form(Mat::Zero(4, 4));
  CHECK(f.subtype == NormalSubtype::J);
  CHECK(f.a.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lorentz normal form: type S example recovers (0.3, 0.3)") {
  const auto fx = example_fixture("3.3.2");  // tau = 0.3
  const Mat omega = lorentz_omega(fx.spec.Q, fx.spec.C);
  const auto f = lorentz_normal_form(omega);
  CHECK(f.subtype == NormalSubtype::S);
  REQUIRE(f.a.size() == 2);
  CHECK(f.a[0] == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(f.a[1] == doctest::Approx(0.3).epsilon(1e-10));
  check_form(f, omega);
}

TEST_CASE("lorentz normal form: type T example has a1 = 1") {
  const auto fx = example_fixture("3.3.3");
  const Mat omega = lorentz_omega(fx.spec.Q, fx.spec.C);
  const auto f = lorentz_normal_form(omega);
  CHECK(f.subtype == NormalSubtype::T);
  CHECK(f.a[0] == doctest::Approx(1.0).epsilon(1e-10));
  check_form(f, omega);
}

TEST_CASE("lorentz construct-then-recover over all subtypes") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  int done = 0;
  for (int t = 0; done < 300; ++t) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const int m_j = n / 2;

    BlockNormalForm seed;
    seed.family = NormalFamily::Lorentz;
    seed.ambient = n + 1;
    seed.n = n;
    const int which = t % 3;
    if (which == 0) {
      seed.subtype = NormalSubtype::J;
      seed.a = Vec::Zero(m_j);
      for (int i = 0; i < seed.a.size(); ++i) seed.a[i] = unif(rng);
    } else if (which == 1) {
      seed.subtype = NormalSubtype::S;
      const int m = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
      seed.a = Vec::Zero(m);
      for (int i = 0; i < m; ++i) seed.a[i] = unif(rng);
    } else {
      seed.subtype = NormalSubtype::T;
      const int m = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
      seed.a = Vec::Zero(m);
      for (int i = 0; i < m; ++i) seed.a[i] = unif(rng);
    }
    std::sort(seed.a.data() + 1, seed.a.data() + seed.a.size(), std::greater<double>());
    const Mat omega_ref = seed.normal_matrix();

    const Mat g0 = random_orthochronous(n, rng);
    const Mat omega = g0 * omega_ref * g0.inverse();

    CHECK(lorentz_classify(omega) == seed.subtype);
    const auto f = lorentz_normal_form(omega);
    CHECK(f.subtype == seed.subtype);
    if (seed.subtype == NormalSubtype::J) {
      Vec sorted = seed.a;
      std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
      CHECK((f.a - sorted).cwiseAbs().maxCoeff() < 1e-8);
    } else if (seed.subtype == NormalSubtype::S) {
      CHECK((f.a - seed.a).cwiseAbs().maxCoeff() < 1e-8);
    } else {
      // Boost conjugation rescales the nilpotent block ([B,T] = -T for the
      // (0,2)-plane boost), so a1 is frame-dependent; the J-rates are not.
      CHECK((f.a.tail(f.a.size() - 1) - seed.a.tail(seed.a.size() - 1))
                .cwiseAbs()
                .maxCoeff() < 1e-8);
      CHECK(f.a[0] > 0.0);
    }
    CHECK(f.group_residual() <= 1e-10);
    CHECK(f.reconstruction_residual(omega) <= 1e-9 * (1.0 + omega.norm()));
    ++done;
  }
}

TEST_CASE("lorentz T recovery is deterministic under rotation conjugation") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 3);
    BlockNormalForm seed;
    seed.family = NormalFamily::Lorentz;
    seed.subtype = NormalSubtype::T;
    seed.ambient = n + 1;
    seed.n = n;
    const int m = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
    seed.a = Vec::Zero(m);
    for (int i = 0; i < m; ++i) seed.a[i] = unif(rng);
    std::sort(seed.a.data() + 1, seed.a.data() + seed.a.size(), std::greater<double>());
    const Mat omega_ref = seed.normal_matrix();

    Mat g0 = Mat::Identity(n + 1, n + 1);
    g0.bottomRightCorner(n, n) = zermelo::test::random_orthogonal(n, rng);
    const auto f = lorentz_normal_form(Mat(g0 * omega_ref * g0.transpose()));
    CHECK(f.subtype == NormalSubtype::T);
    CHECK((f.a - seed.a).cwiseAbs().maxCoeff() < 1e-8);
  }
}
