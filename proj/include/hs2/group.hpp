/// \file group.hpp
/// \brief Exact arithmetic of the Heisenberg group H^n: composition,
///        inverse, anisotropic dilations, gauge and gauge distance.
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace hs2 {

/// A group element xi = (x, y, t) of H^n, stored in the global chart.
struct Point {
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    double t = 0.0;

    Point() = default;
    Point(Eigen::VectorXd x_, Eigen::VectorXd y_, double t_);
    /// Convenience constructor for n = 1.
    Point(double x1, double y1, double t_);
    /// Origin of H^n.
    static Point zero(int n);

    int n() const { return static_cast<int>(x.size()); }
    int dim() const { return 2 * n() + 1; }

    /// Packs into a flat vector (x_1..x_n, y_1..y_n, t).
    Eigen::VectorXd coords() const;
    static Point from_coords(const Eigen::VectorXd& c);

    bool finite() const;
};

struct GaugeBall {
    Point center;
    double radius = 1.0;

    GaugeBall(Point c, double r);
    int n() const { return center.n(); }
};

/// Group law: a o b = (x_a + x_b, y_a + y_b, t_a + t_b + 2(x_b . y_a - y_b . x_a)).
Point compose(const Point& a, const Point& b);

/// Group inverse, xi^{-1} = -xi.
Point inverse(const Point& a);

/// Dilation delta_lambda(xi) = (lambda x, lambda y, lambda^2 t), lambda > 0.
Point dilate(double lambda, const Point& a);

/// Gauge rho(xi) = ((|x|^2 + |y|^2)^2 + t^2)^{1/4}.
double gauge(const Point& a);

/// Left-invariant gauge distance d(a, b) = rho(b^{-1} o a).
double distance(const Point& a, const Point& b);

}  // namespace hs2
