#pragma once

#include <functional>

#include "zermelo/jet.hpp"

namespace zermelo {

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;
using MatrixField = std::function<Mat(const Vec&)>;

/// Default finite-difference step near a coordinate value.
inline double fd_step(double coord) { return 1e-4 * (1.0 + std::abs(coord)); }

/// Central differences with one level of Richardson extrapolation, so the
/// truncation error is O(step^4).  A step of 0 selects fd_step per coordinate.
/// Stencil evaluations falling outside the field's domain rethrow the
/// DomainError annotated with the offending stencil point.
Vec central_fd_gradient(const ScalarField& f, const Vec& x, double step = 0.0);
Mat central_fd_hessian(const ScalarField& f, const Vec& x, double step = 0.0);

/// d/dt g(t) at t = 0, central + Richardson.
double central_fd_directional(const std::function<double(double)>& g, double step);
Vec central_fd_directional_vec(const std::function<Vec(double)>& g, double step);
Mat central_fd_directional_mat(const std::function<Mat(double)>& g, double step);

/// Jacobian d f_i / d x_j of a vector field.
Mat central_fd_jacobian(const VectorField& f, const Vec& x, double step = 0.0);

/// Per-slot partial derivatives of a matrix field: out[k] = d M / d x_k.
std::vector<Mat> central_fd_matrix_partials(const MatrixField& f, const Vec& x,
                                            double step = 0.0);

}  // namespace zermelo
