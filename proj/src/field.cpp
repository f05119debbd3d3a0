#include "hs2/field.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace hs2 {

namespace {

double ipow(double v, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= v;
    return r;
}

double mono_eval(const Monomial& m, const Eigen::VectorXd& c) {
    double r = m.coeff;
    for (int k = 0; k < static_cast<int>(m.exponents.size()); ++k)
        r *= ipow(c(k), m.exponents[k]);
    return r;
}

double mono_d1(const Monomial& m, const Eigen::VectorXd& c, int i) {
    const int ei = m.exponents[i];
    if (ei == 0) return 0.0;
    double r = m.coeff * ei;
    for (int k = 0; k < static_cast<int>(m.exponents.size()); ++k) {
        const int e = (k == i) ? m.exponents[k] - 1 : m.exponents[k];
        r *= ipow(c(k), e);
    }
    return r;
}

double mono_d2(const Monomial& m, const Eigen::VectorXd& c, int i, int j) {
    std::vector<int> e = m.exponents;
    double scale = m.coeff;
    for (int idx : {i, j}) {
        if (e[idx] == 0) return 0.0;
        scale *= e[idx];
        --e[idx];
    }
    double r = scale;
    for (int k = 0; k < static_cast<int>(e.size()); ++k) r *= ipow(c(k), e[k]);
    return r;
}

/// Pullback of a field through the affine map xi |-> J xi + b given as a
/// point map plus its (constant) Jacobian.
ScalarField affine_pullback(const ScalarField& u,
                            std::function<Point(const Point&)> map,
                            const Eigen::MatrixXd& jac) {
    ScalarField f;
    f.n = u.n;
    f.fd_step = u.fd_step;
    f.eval = [u, map](const Point& p) { return u.eval(map(p)); };
    if (u.has_exact()) {
        f.grad = [u, map, jac](const Point& p) -> Eigen::VectorXd {
            return jac.transpose() * u.grad(map(p));
        };
        f.hess = [u, map, jac](const Point& p) -> Eigen::MatrixXd {
            return jac.transpose() * u.hess(map(p)) * jac;
        };
    }
    return f;
}

}  // namespace

ScalarField polynomial_field(int n, std::vector<Monomial> terms) {
    const int d = 2 * n + 1;
    for (const auto& m : terms)
        if (static_cast<int>(m.exponents.size()) != d)
            throw std::invalid_argument("monomial exponent list must have length 2n+1");
    auto tp = std::make_shared<std::vector<Monomial>>(std::move(terms));
    ScalarField f;
    f.n = n;
    f.eval = [tp](const Point& p) {
        const Eigen::VectorXd c = p.coords();
        double s = 0.0;
        for (const auto& m : *tp) s += mono_eval(m, c);
        return s;
    };
    f.grad = [tp, d](const Point& p) {
        const Eigen::VectorXd c = p.coords();
        Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
        for (const auto& m : *tp)
            for (int i = 0; i < d; ++i) g(i) += mono_d1(m, c, i);
        return g;
    };
    f.hess = [tp, d](const Point& p) {
        const Eigen::VectorXd c = p.coords();
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
        for (const auto& m : *tp)
            for (int i = 0; i < d; ++i)
                for (int j = i; j < d; ++j) {
                    const double v = mono_d2(m, c, i, j);
                    h(i, j) += v;
                    if (i != j) h(j, i) += v;
                }
        return h;
    };
    return f;
}

ScalarField field_t(int n) {
    Monomial m;
    m.coeff = 1.0;
    m.exponents.assign(2 * n + 1, 0);
    m.exponents[2 * n] = 1;
    return polynomial_field(n, {m});
}

ScalarField field_sq(int n) {
    std::vector<Monomial> terms;
    for (int k = 0; k < 2 * n; ++k) {
        Monomial m;
        m.coeff = 1.0;
        m.exponents.assign(2 * n + 1, 0);
        m.exponents[k] = 2;
        terms.push_back(m);
    }
    return polynomial_field(n, terms);
}

ScalarField field_gauge4(int n) {
    // rho^4 = (sum_k c_k^2)^2 + t^2 over the 2n horizontal coordinates.
    std::vector<Monomial> terms;
    const int d = 2 * n + 1;
    for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b) {
            Monomial m;
            m.coeff = 1.0;
            m.exponents.assign(d, 0);
            m.exponents[a] += 2;
            m.exponents[b] += 2;
            terms.push_back(m);
        }
    Monomial mt;
    mt.coeff = 1.0;
    mt.exponents.assign(d, 0);
    mt.exponents[2 * n] = 2;
    terms.push_back(mt);
    return polynomial_field(n, terms);
}

ScalarField field_gauge(int n) {
    ScalarField g4 = field_gauge4(n);
    ScalarField f;
    f.n = n;
    f.eval = [g4](const Point& p) { return std::pow(g4.eval(p), 0.25); };
    f.grad = [g4](const Point& p) -> Eigen::VectorXd {
        const double v = g4.eval(p);
        return 0.25 * std::pow(v, -0.75) * g4.grad(p);
    };
    f.hess = [g4](const Point& p) -> Eigen::MatrixXd {
        const double v = g4.eval(p);
        const Eigen::VectorXd g = g4.grad(p);
        return 0.25 * std::pow(v, -0.75) * g4.hess(p)
             - 0.1875 * std::pow(v, -1.75) * g * g.transpose();
    };
    return f;
}

ScalarField field_constant(int n, double c) {
    Monomial m;
    m.coeff = c;
    m.exponents.assign(2 * n + 1, 0);
    return polynomial_field(n, {m});
}

ScalarField field_gauge4_at(const Point& center) {
    const int n = center.n();
    const int d = 2 * n + 1;
    const Point ci = inverse(center);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(d, d);
    // t-row of the Jacobian of xi |-> center^{-1} o xi.
    for (int j = 0; j < n; ++j) {
        jac(2 * n, j) = -2.0 * center.y(j);
        jac(2 * n, n + j) = 2.0 * center.x(j);
    }
    auto map = [ci](const Point& p) { return compose(ci, p); };
    return affine_pullback(field_gauge4(n), map, jac);
}

ScalarField field_axpy(double a, const ScalarField& u, double b, const ScalarField& v) {
    if (u.n != v.n) throw std::invalid_argument("field dimension mismatch");
    ScalarField f;
    f.n = u.n;
    f.fd_step = std::min(u.fd_step, v.fd_step);
    f.eval = [a, u, b, v](const Point& p) { return a * u.eval(p) + b * v.eval(p); };
    if (u.has_exact() && v.has_exact()) {
        f.grad = [a, u, b, v](const Point& p) -> Eigen::VectorXd {
            return a * u.grad(p) + b * v.grad(p);
        };
        f.hess = [a, u, b, v](const Point& p) -> Eigen::MatrixXd {
            return a * u.hess(p) + b * v.hess(p);
        };
    }
    return f;
}

ScalarField field_shift(const ScalarField& u, double c) {
    return field_axpy(1.0, u, 1.0, field_constant(u.n, c));
}

ScalarField field_left_translate(const ScalarField& u, const Point& eta) {
    const int n = u.n;
    if (eta.n() != n) throw std::invalid_argument("field dimension mismatch");
    const int d = 2 * n + 1;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(d, d);
    // t-row of the Jacobian of xi |-> eta o xi.
    for (int j = 0; j < n; ++j) {
        jac(2 * n, j) = 2.0 * eta.y(j);
        jac(2 * n, n + j) = -2.0 * eta.x(j);
    }
    auto map = [eta](const Point& p) { return compose(eta, p); };
    return affine_pullback(u, map, jac);
}

ScalarField field_dilate_arg(const ScalarField& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilation parameter must be positive");
    const int d = 2 * u.n + 1;
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(d, lambda);
    diag(2 * u.n) = lambda * lambda;
    auto map = [lambda](const Point& p) { return dilate(lambda, p); };
    return affine_pullback(u, map, diag.asDiagonal().toDenseMatrix());
}

ScalarField make_builtin_field(int n, const std::string& spec) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (spec == "t") return field_t(n);
    if (spec == "sq") return field_sq(n);
    if (spec == "gauge") return field_gauge(n);
    if (spec == "gauge4") return field_gauge4(n);
    if (spec.rfind("barrier(", 0) == 0 && spec.back() == ')') {
        std::string args = spec.substr(8, spec.size() - 9);
        std::istringstream is(args);
        double R, sigma, m0;
        char c1, c2;
        if (!(is >> R >> c1 >> sigma >> c2 >> m0) || c1 != ',' || c2 != ',')
            throw std::invalid_argument("expected barrier(R,sigma,m0)");
        if (!(R > 0.0) || !(sigma > 0.0 && sigma < 1.0) || !(m0 < 0.0))
            throw std::invalid_argument("barrier requires R>0, 0<sigma<1, m0<0");
        const double K = m0 / ((1.0 - ipow(sigma, 4)) * ipow(R, 4));
        // v = K (R^4 - rho^4).
        return field_shift(field_axpy(-K, field_gauge4(n), 0.0, field_constant(n, 0.0)),
                           K * ipow(R, 4));
    }
    throw std::invalid_argument("unknown field spec: " + spec);
}

}  // namespace hs2
