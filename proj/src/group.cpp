#include "hs2/group.hpp"

#include <cmath>

namespace hs2 {

namespace {
void check_same_n(const Point& a, const Point& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("Point dimension mismatch");
}
}  // namespace

Point::Point(Eigen::VectorXd x_, Eigen::VectorXd y_, double t_)
    : x(std::move(x_)), y(std::move(y_)), t(t_) {
    if (x.size() < 1 || x.size() != y.size())
        throw std::invalid_argument("Point requires n >= 1 and |x| == |y|");
    if (!finite())
        throw std::invalid_argument("Point entries must be finite");
}

Point::Point(double x1, double y1, double t_) {
    x = Eigen::VectorXd::Constant(1, x1);
    y = Eigen::VectorXd::Constant(1, y1);
    t = t_;
    if (!finite())
        throw std::invalid_argument("Point entries must be finite");
}

Point Point::zero(int n) {
    Point p;
    p.x = Eigen::VectorXd::Zero(n);
    p.y = Eigen::VectorXd::Zero(n);
    p.t = 0.0;
    return p;
}

Eigen::VectorXd Point::coords() const {
    Eigen::VectorXd c(dim());
    c.head(n()) = x;
    c.segment(n(), n()) = y;
    c(2 * n()) = t;
    return c;
}

Point Point::from_coords(const Eigen::VectorXd& c) {
    const int d = static_cast<int>(c.size());
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("coordinate vector must have odd length 2n+1 >= 3");
    const int n = (d - 1) / 2;
    Point p;
    p.x = c.head(n);
    p.y = c.segment(n, n);
    p.t = c(2 * n);
    return p;
}

bool Point::finite() const {
    return x.allFinite() && y.allFinite() && std::isfinite(t);
}

GaugeBall::GaugeBall(Point c, double r) : center(std::move(c)), radius(r) {
    if (!(r > 0.0))
        throw std::invalid_argument("GaugeBall radius must be positive");
}

Point compose(const Point& a, const Point& b) {
    check_same_n(a, b);
    Point r;
    r.x = a.x + b.x;
    r.y = a.y + b.y;
    r.t = a.t + b.t + 2.0 * (b.x.dot(a.y) - b.y.dot(a.x));
    return r;
}

Point inverse(const Point& a) {
    Point r;
    r.x = -a.x;
    r.y = -a.y;
    r.t = -a.t;
    return r;
}

Point dilate(double lambda, const Point& a) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("dilation parameter must be positive");
    Point r;
    r.x = lambda * a.x;
    r.y = lambda * a.y;
    r.t = lambda * lambda * a.t;
    return r;
}

double gauge(const Point& a) {
    const double q = a.x.squaredNorm() + a.y.squaredNorm();
    return std::pow(q * q + a.t * a.t, 0.25);
}

double distance(const Point& a, const Point& b) {
    check_same_n(a, b);
    return gauge(compose(inverse(b), a));
}

}  // namespace hs2
