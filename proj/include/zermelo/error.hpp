#pragma once

#include <stdexcept>
#include <string>

namespace zermelo {

/// Bad input data: wrong shapes, non-skew matrices, malformed spec files.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation outside a chart or of an undefined arithmetic operation.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Strong convexity lost: |W| >= 1, ||b|| >= 1, or a singular fundamental tensor.
class ConvexityError : public std::runtime_error {
 public:
  ConvexityError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

/// Inconsistent (K, sigma) data or an unclassifiable configuration.
class ClassificationError : public std::runtime_error {
 public:
  explicit ClassificationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical margins too small to decide between discrete alternatives.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate flag (transverse edge parallel to the flagpole).
class FlagError : public std::runtime_error {
 public:
  explicit FlagError(const std::string& what) : std::runtime_error(what) {}
};

/// A search (shooting, region scan) exhausted its budget without converging.
class SearchError : public std::runtime_error {
 public:
  SearchError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace zermelo
