#include "hs2/jet.hpp"

#include <cmath>

namespace hs2 {

namespace {

/// Coefficient of d/dt in X_j at p: a_j = 2 y_j, a_{n+j} = -2 x_j.
double vf_t_coeff(const Point& p, int j) {
    const int n = p.n();
    return (j < n) ? 2.0 * p.y(j) : -2.0 * p.x(j - n);
}

/// X_i applied to the coefficient function a_j; constant in t, so this is
/// just the Euclidean partial along coordinate i.
double vf_t_coeff_deriv(int n, int i, int j) {
    if (j < n) return (i == n + j) ? 2.0 : 0.0;
    return (i == j - n) ? -2.0 : 0.0;
}

Point shifted(const Point& p, int coord, double h) {
    Point q = p;
    if (coord < q.n())
        q.x(coord) += h;
    else if (coord < 2 * q.n())
        q.y(coord - q.n()) += h;
    else
        q.t += h;
    return q;
}

void fd_derivatives(const ScalarField& f, const Point& p,
                    Eigen::VectorXd& g, Eigen::MatrixXd& E) {
    const int d = 2 * f.n + 1;
    const double h = f.fd_step;
    if (!(h > 0.0)) throw std::invalid_argument("fd_step must be positive");
    const double f0 = f.eval(p);
    if (!std::isfinite(f0)) throw std::runtime_error("field evaluation failed in FD stencil");
    g.resize(d);
    E.resize(d, d);
    std::vector<double> fp(d), fm(d);
    for (int i = 0; i < d; ++i) {
        fp[i] = f.eval(shifted(p, i, h));
        fm[i] = f.eval(shifted(p, i, -h));
        g(i) = (fp[i] - fm[i]) / (2.0 * h);
        E(i, i) = (fp[i] - 2.0 * f0 + fm[i]) / (h * h);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double fpp = f.eval(shifted(shifted(p, i, h), j, h));
            const double fpm = f.eval(shifted(shifted(p, i, h), j, -h));
            const double fmp = f.eval(shifted(shifted(p, i, -h), j, h));
            const double fmm = f.eval(shifted(shifted(p, i, -h), j, -h));
            E(i, j) = E(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
        }
    if (!g.allFinite() || !E.allFinite())
        throw std::runtime_error("field evaluation failed in FD stencil");
}

}  // namespace

HorizontalJet horizontal_jet(const ScalarField& field, const Point& p, DerivMode mode) {
    if (p.n() != field.n) throw std::invalid_argument("point/field dimension mismatch");
    const int n = field.n;
    const int m = 2 * n;

    Eigen::VectorXd g;
    Eigen::MatrixXd E;
    const bool exact = (mode == DerivMode::Exact) ||
                       (mode == DerivMode::Auto && field.has_exact());
    if (exact) {
        if (!field.has_exact())
            throw std::invalid_argument("exact mode requested but field has no derivatives");
        g = field.grad(p);
        E = field.hess(p);
        if ((E - E.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + E.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("supplied Euclidean Hessian is not symmetric");
    } else {
        fd_derivatives(field, p, g, E);
    }

    HorizontalJet jet;
    jet.value = field.eval(p);
    jet.ut = g(m);
    jet.Xu.resize(m);
    jet.X2u.resize(m, m);
    for (int j = 0; j < m; ++j)
        jet.Xu(j) = g(j) + vf_t_coeff(p, j) * g(m);
    for (int i = 0; i < m; ++i) {
        const double ai = vf_t_coeff(p, i);
        for (int j = 0; j < m; ++j) {
            const double aj = vf_t_coeff(p, j);
            jet.X2u(i, j) = E(i, j) + aj * E(i, m) + ai * E(m, j) + ai * aj * E(m, m)
                          + vf_t_coeff_deriv(n, i, j) * g(m);
        }
    }
    jet.H = 0.5 * (jet.X2u + jet.X2u.transpose());
    return jet;
}

Eigen::MatrixXd hessian_c(const ScalarField& field, const Point& p, double c, DerivMode mode) {
    const HorizontalJet jet = horizontal_jet(field, p, mode);
    const int n = field.n;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return jet.X2u + c * jet.ut * J;
}

Eigen::VectorXd WeightedPolynomial::exp_coords(const Point& p) const {
    const int n = base.n();
    Eigen::VectorXd eta(2 * n + 1);
    eta.head(n) = p.x - base.x;
    eta.segment(n, n) = p.y - base.y;
    eta(2 * n) = (base.t - p.t + 2.0 * (p.x.dot(base.y) - p.y.dot(base.x))) / 4.0;
    return eta;
}

double WeightedPolynomial::operator()(const Point& p) const {
    const int m = 2 * base.n();
    const Eigen::VectorXd eta = exp_coords(p);
    const Eigen::VectorXd h = eta.head(m);
    return constant + linear.dot(h) + h.dot(quadratic * h) + vertical * eta(m);
}

WeightedPolynomial taylor_polynomial(const ScalarField& field, const Point& p0, DerivMode mode) {
    const HorizontalJet jet = horizontal_jet(field, p0, mode);
    WeightedPolynomial P;
    P.base = p0;
    P.constant = jet.value;
    P.linear = jet.Xu;
    P.quadratic = 0.5 * jet.H;
    P.vertical = -4.0 * jet.ut;
    return P;
}

std::vector<double> taylor_decay(const ScalarField& field, const Point& p0,
                                 const std::vector<double>& radii, int cells_per_axis) {
    const WeightedPolynomial P = taylor_polynomial(field, p0);
    const int n = field.n;
    const int d = 2 * n + 1;
    std::vector<double> out;
    out.reserve(radii.size());
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
        // Midpoint rule over the enclosing box of B_r(0) in the zeta chart,
        // masked by the gauge-ball indicator; the group translation
        // zeta |-> p0 o zeta has unit Jacobian.
        Eigen::VectorXd lo = Eigen::VectorXd::Constant(d, -r);
        Eigen::VectorXd hi = Eigen::VectorXd::Constant(d, r);
        lo(d - 1) = -r * r;
        hi(d - 1) = r * r;
        std::vector<int> idx(d, 0);
        Eigen::VectorXd step = (hi - lo) / cells_per_axis;
        double mass = 0.0, total = 0.0;
        const long ncells = static_cast<long>(std::pow(cells_per_axis, d));
        for (long cell = 0; cell < ncells; ++cell) {
            long c = cell;
            Eigen::VectorXd zc(d);
            for (int k = 0; k < d; ++k) {
                zc(k) = lo(k) + (c % cells_per_axis + 0.5) * step(k);
                c /= cells_per_axis;
            }
            Point zeta = Point::from_coords(zc);
            if (gauge(zeta) > r) continue;
            const Point p = compose(p0, zeta);
            total += std::abs(field.eval(p) - P(p));
            mass += 1.0;
        }
        out.push_back(mass > 0.0 ? total / mass / (r * r) : 0.0);
    }
    return out;
}

}  // namespace hs2
