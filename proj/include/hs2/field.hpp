/// \file field.hpp
/// \brief Scalar fields on R^{2n+1} with optional exact Euclidean derivatives.
///
/// A ScalarField carries the evaluation callable and, when available,
/// closed-form Euclidean gradient and Hessian. Horizontal quantities are
/// assembled from these by the chain rule (exact mode) or by central
/// differences on `eval` (FD mode). User-supplied callables must be
/// reentrant: fields are evaluated concurrently from quadrature loops.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hs2/group.hpp"

namespace hs2 {

struct ScalarField {
    int n = 1;
    std::function<double(const Point&)> eval;
    /// Optional: Euclidean gradient, length 2n+1, ordered (x, y, t).
    std::function<Eigen::VectorXd(const Point&)> grad;
    /// Optional: Euclidean Hessian, (2n+1) x (2n+1), symmetric.
    std::function<Eigen::MatrixXd(const Point&)> hess;
    /// Central-difference step used when exact derivatives are absent.
    double fd_step = 1e-4;

    bool has_exact() const { return static_cast<bool>(grad) && static_cast<bool>(hess); }
    double operator()(const Point& p) const { return eval(p); }
};

/// A polynomial in the 2n+1 Euclidean coordinates, used for exact-mode
/// test fields and the built-in catalogue.
struct Monomial {
    double coeff = 0.0;
    std::vector<int> exponents;  // length 2n+1
};

ScalarField polynomial_field(int n, std::vector<Monomial> terms);

// Built-in catalogue (see also make_builtin_field for name-based lookup).
ScalarField field_t(int n);        ///< u(xi) = t
ScalarField field_sq(int n);       ///< u(xi) = |x|^2 + |y|^2
ScalarField field_gauge(int n);    ///< u(xi) = rho(xi); derivatives valid away from 0
ScalarField field_gauge4(int n);   ///< u(xi) = rho(xi)^4
ScalarField field_constant(int n, double c);

/// u(xi) = rho(center^{-1} o xi)^4, with exact derivatives by affine pullback.
ScalarField field_gauge4_at(const Point& center);

/// Pointwise linear combination; exact derivatives when both inputs have them.
ScalarField field_axpy(double a, const ScalarField& u, double b, const ScalarField& v);
ScalarField field_shift(const ScalarField& u, double c);

/// Left translation xi |-> u(eta o xi); exact derivatives by affine pullback.
ScalarField field_left_translate(const ScalarField& u, const Point& eta);

/// Precomposition with a dilation, xi |-> u(delta_lambda(xi)).
ScalarField field_dilate_arg(const ScalarField& u, double lambda);

/// Resolves the CLI field grammar: "t", "sq", "gauge", "gauge4",
/// "barrier(R,sigma,m0)".
ScalarField make_builtin_field(int n, const std::string& spec);

}  // namespace hs2
