/// \file jet.hpp
/// \brief Horizontal derivatives on H^n: X_j u, X_i X_j u, the symmetrized
///        horizontal Hessian, d/dt, and the weighted second-order Taylor
///        polynomial in exponential coordinates.
#pragma once

#include "hs2/field.hpp"

namespace hs2 {

enum class DerivMode {
    Auto,   ///< exact when the field carries derivatives, FD otherwise
    Exact,
    FiniteDifference,
};

struct HorizontalJet {
    double value = 0.0;
    Eigen::VectorXd Xu;    ///< length 2n
    Eigen::MatrixXd X2u;   ///< 2n x 2n, nonsymmetric
    Eigen::MatrixXd H;     ///< (X2u + X2u^T)/2
    double ut = 0.0;       ///< d u / dt
};

/// Assembles the full horizontal jet at p. In FD mode second-order central
/// differences with step field.fd_step are used, accuracy O(fd_step^2).
HorizontalJet horizontal_jet(const ScalarField& field, const Point& p,
                             DerivMode mode = DerivMode::Auto);

/// H_c(u) = X^2 u + c u_t [0 I; -I 0]; symmetric iff c = 2.
Eigen::MatrixXd hessian_c(const ScalarField& field, const Point& p, double c,
                          DerivMode mode = DerivMode::Auto);

/// Degree-<=2 polynomial in the exponential coordinates
/// eta = (x - x0, y - y0, (t0 - t + 2(x . y0 - y . x0))/4), with eta_{2n+1}
/// carrying homogeneous weight 2.
struct WeightedPolynomial {
    Point base;
    double constant = 0.0;
    Eigen::VectorXd linear;      ///< X_j u(p0), length 2n
    Eigen::MatrixXd quadratic;   ///< (1/2) H(u)(p0)
    double vertical = 0.0;       ///< coefficient on eta_{2n+1}: -4 u_t(p0)

    Eigen::VectorXd exp_coords(const Point& p) const;  ///< eta, length 2n+1
    double operator()(const Point& p) const;
};

WeightedPolynomial taylor_polynomial(const ScalarField& field, const Point& p0,
                                     DerivMode mode = DerivMode::Auto);

/// r^{-2} times the average of |u - P| over the gauge ball B_r(p0), for each
/// radius. cells_per_axis controls the midpoint quadrature resolution.
std::vector<double> taylor_decay(const ScalarField& field, const Point& p0,
                                 const std::vector<double>& radii,
                                 int cells_per_axis = 24);

}  // namespace hs2
