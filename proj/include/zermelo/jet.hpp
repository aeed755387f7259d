#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <vector>

#include "zermelo/error.hpp"

namespace zermelo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Second-order forward-mode jet: value, gradient and Hessian with respect to
/// a fixed set of active variables.  The Hessian is stored as a packed lower
/// triangle, so symmetry holds to exact equality by construction.
///
/// Supported operations: +, -, *, / and sqrt, mixed freely with doubles.
/// Division by zero and sqrt of a non-positive value raise DomainError naming
/// the operation.
class Jet2 {
 public:
  Jet2() : val_(0.0) {}

  static Jet2 constant(double v, int nvars) {
    Jet2 j;
    j.val_ = v;
    j.grad_ = Vec::Zero(nvars);
    j.hess_ = Vec::Zero(packed_size(nvars));
    return j;
  }

  /// One jet per coordinate of `point`, each seeded as an active variable.
  static std::vector<Jet2> seed(const Vec& point) {
    const int n = static_cast<int>(point.size());
    std::vector<Jet2> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
      Jet2 j = constant(point[i], n);
      j.grad_[i] = 1.0;
      out.push_back(std::move(j));
    }
    return out;
  }

  double value() const { return val_; }
  const Vec& grad() const { return grad_; }
  int vars() const { return static_cast<int>(grad_.size()); }

  Mat hessian() const {
    const int n = vars();
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) h(i, j) = h(j, i) = hess_[pidx(i, j)];
    return h;
  }

  double hess(int i, int j) const { return i >= j ? hess_[pidx(i, j)] : hess_[pidx(j, i)]; }

  Jet2 operator-() const {
    Jet2 r = *this;
    r.val_ = -r.val_;
    r.grad_ = -r.grad_;
    r.hess_ = -r.hess_;
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    check_vars(o);
    val_ += o.val_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    check_vars(o);
    val_ -= o.val_;
    grad_ -= o.grad_;
    hess_ -= o.hess_;
    return *this;
  }
  Jet2& operator+=(double c) {
    val_ += c;
    return *this;
  }
  Jet2& operator-=(double c) {
    val_ -= c;
    return *this;
  }
  Jet2& operator*=(double c) {
    val_ *= c;
    grad_ *= c;
    hess_ *= c;
    return *this;
  }
  Jet2& operator/=(double c) {
    if (c == 0.0) throw DomainError("jet arithmetic: division by zero");
    val_ /= c;
    grad_ /= c;
    hess_ /= c;
    return *this;
  }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator+(Jet2 a, double c) { return a += c; }
  friend Jet2 operator+(double c, Jet2 a) { return a += c; }
  friend Jet2 operator-(Jet2 a, double c) { return a -= c; }
  friend Jet2 operator-(double c, const Jet2& a) { return -a + c; }
  friend Jet2 operator*(Jet2 a, double c) { return a *= c; }
  friend Jet2 operator*(double c, Jet2 a) { return a *= c; }
  friend Jet2 operator/(Jet2 a, double c) { return a /= c; }

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    a.check_vars(b);
    Jet2 r;
    r.val_ = a.val_ * b.val_;
    r.grad_ = a.val_ * b.grad_ + b.val_ * a.grad_;
    r.hess_.resize(a.hess_.size());
    const int n = a.vars();
    for (int i = 0, p = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j, ++p)
        r.hess_[p] = a.hess_[p] * b.val_ + a.grad_[i] * b.grad_[j] +
                     a.grad_[j] * b.grad_[i] + a.val_ * b.hess_[p];
    return r;
  }

  friend Jet2 operator/(const Jet2& a, const Jet2& b) {
    a.check_vars(b);
    if (b.val_ == 0.0) throw DomainError("jet arithmetic: division by zero");
    Jet2 r;
    r.val_ = a.val_ / b.val_;
    r.grad_ = (a.grad_ - r.val_ * b.grad_) / b.val_;
    r.hess_.resize(a.hess_.size());
    const int n = a.vars();
    for (int i = 0, p = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j, ++p)
        r.hess_[p] = (a.hess_[p] - r.grad_[i] * b.grad_[j] - b.grad_[i] * r.grad_[j] -
                      r.val_ * b.hess_[p]) /
                     b.val_;
    return r;
  }

  friend Jet2 operator/(double c, const Jet2& b) {
    return Jet2::constant(c, b.vars()) / b;
  }

  friend Jet2 sqrt(const Jet2& a) {
    if (a.val_ <= 0.0) throw DomainError("jet arithmetic: sqrt of a non-positive value");
    Jet2 r;
    r.val_ = std::sqrt(a.val_);
    r.grad_ = a.grad_ / (2.0 * r.val_);
    r.hess_.resize(a.hess_.size());
    const int n = a.vars();
    for (int i = 0, p = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j, ++p)
        r.hess_[p] = (a.hess_[p] - 2.0 * r.grad_[i] * r.grad_[j]) / (2.0 * r.val_);
    return r;
  }

 private:
  static int packed_size(int n) { return n * (n + 1) / 2; }
  static int pidx(int i, int j) { return i * (i + 1) / 2 + j; }  // i >= j

  void check_vars(const Jet2& o) const {
    if (vars() != o.vars())
      throw ValidationError("jet arithmetic: mismatched active-variable counts");
  }

  double val_;
  Vec grad_;
  Vec hess_;  // packed lower triangle, row-major
};

using JetField = std::function<Jet2(const std::vector<Jet2>&)>;

/// Evaluates a scalar field together with its exact gradient and Hessian at
/// `point` by running the field on seeded jets.
inline Jet2 jet2_eval(const JetField& f, const Vec& point) {
  return f(Jet2::seed(point));
}

}  // namespace zermelo
