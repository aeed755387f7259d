#include "zermelo/fd.hpp"

#include <sstream>

namespace zermelo {
namespace {

std::string point_str(const Vec& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

template <class F>
auto eval_annotated(const F& f, const Vec& x) {
  try {
    return f(x);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " [stencil point " + point_str(x) + "]");
  }
}

}  // namespace

Vec central_fd_gradient(const ScalarField& f, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  Vec g(n);
  Vec xs = x;
  for (int i = 0; i < n; ++i) {
    const double h = step > 0.0 ? step : fd_step(x[i]);
    auto diff = [&](double hh) {
      xs[i] = x[i] + hh;
      const double fp = eval_annotated(f, xs);
      xs[i] = x[i] - hh;
      const double fm = eval_annotated(f, xs);
      xs[i] = x[i];
      return (fp - fm) / (2.0 * hh);
    };
    const double d1 = diff(h);
    const double d2 = diff(h / 2.0);
    g[i] = (4.0 * d2 - d1) / 3.0;
  }
  return g;
}

Mat central_fd_hessian(const ScalarField& f, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  const double f0 = eval_annotated(f, x);
  Vec xs = x;
  auto at = [&](int i, double hi, int j, double hj) {
    xs[i] += hi;
    xs[j] += hj;
    const double v = eval_annotated(f, xs);
    xs[i] = x[i];
    xs[j] = x[j];
    return v;
  };
  Mat H(n, n);
  for (int i = 0; i < n; ++i) {
    const double hi = step > 0.0 ? step : fd_step(x[i]);
    auto diag = [&](double h) { return (at(i, h, i, 0) + at(i, -h, i, 0) - 2.0 * f0) / (h * h); };
    const double d1 = diag(hi);
    const double d2 = diag(hi / 2.0);
    H(i, i) = (4.0 * d2 - d1) / 3.0;
    for (int j = 0; j < i; ++j) {
      const double hj = step > 0.0 ? step : fd_step(x[j]);
      auto mixed = [&](double a, double b) {
        return (at(i, a, j, b) - at(i, a, j, -b) - at(i, -a, j, b) + at(i, -a, j, -b)) /
               (4.0 * a * b);
      };
      const double m1 = mixed(hi, hj);
      const double m2 = mixed(hi / 2.0, hj / 2.0);
      H(i, j) = H(j, i) = (4.0 * m2 - m1) / 3.0;
    }
  }
  return H;
}

double central_fd_directional(const std::function<double(double)>& g, double step) {
  auto diff = [&](double h) { return (g(h) - g(-h)) / (2.0 * h); };
  const double d1 = diff(step);
  const double d2 = diff(step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

Vec central_fd_directional_vec(const std::function<Vec(double)>& g, double step) {
  auto diff = [&](double h) -> Vec { return (g(h) - g(-h)) / (2.0 * h); };
  const Vec d1 = diff(step);
  const Vec d2 = diff(step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

Mat central_fd_directional_mat(const std::function<Mat(double)>& g, double step) {
  auto diff = [&](double h) -> Mat { return (g(h) - g(-h)) / (2.0 * h); };
  const Mat d1 = diff(step);
  const Mat d2 = diff(step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

Mat central_fd_jacobian(const VectorField& f, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  Vec xs = x;
  Mat J;
  for (int j = 0; j < n; ++j) {
    const double h = step > 0.0 ? step : fd_step(x[j]);
    auto diff = [&](double hh) -> Vec {
      xs[j] = x[j] + hh;
      const Vec fp = eval_annotated(f, xs);
      xs[j] = x[j] - hh;
      const Vec fm = eval_annotated(f, xs);
      xs[j] = x[j];
      return (fp - fm) / (2.0 * hh);
    };
    const Vec d1 = diff(h);
    const Vec d2 = diff(h / 2.0);
    const Vec col = (4.0 * d2 - d1) / 3.0;
    if (J.size() == 0) J.resize(col.size(), n);
    J.col(j) = col;
  }
  return J;
}

std::vector<Mat> central_fd_matrix_partials(const MatrixField& f, const Vec& x, double step) {
  const int n = static_cast<int>(x.size());
  std::vector<Mat> out(n);
  Vec xs = x;
  for (int k = 0; k < n; ++k) {
    const double h = step > 0.0 ? step : fd_step(x[k]);
    auto diff = [&](double hh) -> Mat {
      xs[k] = x[k] + hh;
      const Mat fp = eval_annotated(f, xs);
      xs[k] = x[k] - hh;
      const Mat fm = eval_annotated(f, xs);
      xs[k] = x[k];
      return (fp - fm) / (2.0 * hh);
    };
    const Mat d1 = diff(h);
    const Mat d2 = diff(h / 2.0);
    out[k] = (4.0 * d2 - d1) / 3.0;
  }
  return out;
}

}  // namespace zermelo
