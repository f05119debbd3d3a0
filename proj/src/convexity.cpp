#include "hs2/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace hs2 {

void check_symmetric(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("matrix must be square");
    if (!A.allFinite())
        throw std::invalid_argument("matrix entries must be finite");
    const double scale = 1.0 + A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix is not symmetric");
}

double sigma2(const Eigen::MatrixXd& A) {
    check_symmetric(A);
    const double tr = A.trace();
    const double tr2 = (A * A).trace();
    return 0.5 * (tr * tr - tr2);
}

Eigen::VectorXd jacobi_eigenvalues(const Eigen::MatrixXd& A) {
    check_symmetric(A);
    const int m = static_cast<int>(A.rows());
    Eigen::MatrixXd B = A;
    const double scale = std::max(1.0, B.cwiseAbs().maxCoeff());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) off += B(p, q) * B(p, q);
        if (std::sqrt(off) <= 1e-14 * scale * m) {
            Eigen::VectorXd lam = B.diagonal();
            std::sort(lam.data(), lam.data() + m);
            return lam;
        }
        for (int p = 0; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
                if (std::abs(B(p, q)) <= 1e-300) continue;
                const double theta = (B(q, q) - B(p, p)) / (2.0 * B(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < m; ++k) {
                    const double bkp = B(k, p), bkq = B(k, q);
                    B(k, p) = c * bkp - s * bkq;
                    B(k, q) = s * bkp + c * bkq;
                }
                for (int k = 0; k < m; ++k) {
                    const double bpk = B(p, k), bqk = B(q, k);
                    B(p, k) = c * bpk - s * bqk;
                    B(q, k) = s * bpk + c * bqk;
                }
            }
    }
    throw std::runtime_error("Jacobi iteration did not converge in 100 sweeps");
}

double sigma2_from_eigenvalues(const Eigen::VectorXd& lambda) {
    double s = 0.0;
    for (int j = 0; j < lambda.size(); ++j)
        for (int k = j + 1; k < lambda.size(); ++k) s += lambda(j) * lambda(k);
    return s;
}

double sigma2_horizontal(const ScalarField& field, const Point& p, DerivMode mode) {
    return sigma2(horizontal_jet(field, p, mode).H);
}

Eigen::MatrixXd sigma2_gradient_matrix(const Eigen::MatrixXd& A) {
    check_symmetric(A);
    return A.trace() * Eigen::MatrixXd::Identity(A.rows(), A.cols()) - A;
}

Eigen::VectorXd lemma_partial_s(const Eigen::VectorXd& lambda) {
    const double sum = lambda.sum();
    return Eigen::VectorXd::Constant(lambda.size(), sum) - lambda;
}

Box::Box(Eigen::VectorXd l, Eigen::VectorXd h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size() || lo.size() < 3 || lo.size() % 2 == 0)
        throw std::invalid_argument("Box bounds must both have length 2n+1");
    if ((hi - lo).minCoeff() <= 0.0)
        throw std::invalid_argument("Box must have positive extent on every axis");
}

Box Box::centered(int n, double half_horizontal, double half_vertical) {
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(2 * n + 1, half_horizontal);
    hi(2 * n) = half_vertical;
    return Box(-hi, hi);
}

Box Box::unit(int n) {
    return Box(Eigen::VectorXd::Zero(2 * n + 1), Eigen::VectorXd::Ones(2 * n + 1));
}

double Box::volume() const { return (hi - lo).prod(); }

std::vector<Point> sample_region(const Region& region, int n, const SamplePlan& plan) {
    std::mt19937_64 rng(plan.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(plan.count);
    if (const Box* box = std::get_if<Box>(&region)) {
        if (box->dim() != 2 * n + 1)
            throw std::invalid_argument("Box dimension does not match n");
        for (long k = 0; k < plan.count; ++k) {
            Eigen::VectorXd c(box->dim());
            for (int i = 0; i < box->dim(); ++i)
                c(i) = box->lo(i) + (box->hi(i) - box->lo(i)) * unit(rng);
            pts.push_back(Point::from_coords(c));
        }
    } else {
        const GaugeBall& ball = std::get<GaugeBall>(region);
        if (ball.n() != n)
            throw std::invalid_argument("GaugeBall dimension does not match n");
        const double r = ball.radius;
        const int d = 2 * n + 1;
        while (static_cast<long>(pts.size()) < plan.count) {
            Eigen::VectorXd c(d);
            for (int i = 0; i < 2 * n; ++i) c(i) = r * (2.0 * unit(rng) - 1.0);
            c(2 * n) = r * r * (2.0 * unit(rng) - 1.0);
            const Point zeta = Point::from_coords(c);
            if (gauge(zeta) <= r) pts.push_back(compose(ball.center, zeta));
        }
    }
    return pts;
}

ConvexityReport classify(const ScalarField& field, const Region& region,
                         const SamplePlan& plan, double tol) {
    const auto pts = sample_region(region, field.n, plan);
    ConvexityReport rep;
    rep.samples = static_cast<long>(pts.size());
    rep.min_eigenvalue = rep.min_trace = rep.min_sigma2 =
        std::numeric_limits<double>::infinity();
    double worst_scale = 1.0;
    for (const Point& p : pts) {
        const HorizontalJet jet = horizontal_jet(field, p);
        const Eigen::VectorXd lam = jacobi_eigenvalues(jet.H);
        const double scale = 1.0 + jet.H.cwiseAbs().maxCoeff();
        worst_scale = std::max(worst_scale, scale);
        const double mineig = lam(0);
        const double tr = jet.H.trace();
        const double s2 = sigma2(jet.H);
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, mineig);
        rep.min_trace = std::min(rep.min_trace, tr);
        rep.min_sigma2 = std::min(rep.min_sigma2, s2);
        if (mineig < -tol * scale && rep.failing_points.size() < 16)
            rep.failing_points.push_back(p);
    }
    const double eps = tol * worst_scale;
    const double m = 2.0 * field.n;
    if (rep.min_eigenvalue >= -eps) {
        rep.verdict = ConvexityVerdict::H_CONVEX;
        // PSD at every sample forces nonnegative trace and sigma_2, up to
        // the eigenvalue tolerance accumulated over 2n terms.
        if (rep.min_trace < -m * eps || rep.min_sigma2 < -m * m * eps * worst_scale)
            throw std::logic_error("H-convex sample with negative trace/sigma2");
    } else if (rep.min_trace >= -eps && rep.min_sigma2 >= -eps * worst_scale) {
        rep.verdict = ConvexityVerdict::SIGMA2_CONVEX_ONLY;
    } else {
        rep.verdict = ConvexityVerdict::NEITHER;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// SmoothMax: the 2-D convolution against a radial bump collapses to a 1-D
// integral of the marginal G along the kink direction,
//   f_h(a,b) = (a+b)/2 + (1/2) int_{-1}^{1} G(w) |a - b - sqrt(2) h w| dw.

namespace {

constexpr int kGlNodes = 48;
constexpr int kTableSize = 4097;

struct GaussLegendre {
    std::array<double, kGlNodes> x{}, w{};
    GaussLegendre() {
        // Newton iteration on Legendre polynomials, nodes on (-1, 1).
        for (int i = 0; i < kGlNodes; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (kGlNodes + 0.5));
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = xi;
                for (int k = 2; k <= kGlNodes; ++k) {
                    const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = kGlNodes * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            x[i] = xi;
            double p0 = 1.0, p1 = xi;
            for (int k = 2; k <= kGlNodes; ++k) {
                const double p2 = ((2 * k - 1) * xi * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = kGlNodes * (xi * p1 - p0) / (xi * xi - 1.0);
            w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

const GaussLegendre& gl() {
    static const GaussLegendre g;
    return g;
}

double bump_profile(double r2) {  // unnormalized, radius^2 argument
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

/// Tabulated marginal G(w) = int rho2(w, v) dv of the normalized bump,
/// linear interpolation on |w| in [0, 1].
struct Marginal {
    std::array<double, kTableSize> table{};
    Marginal() {
        // Normalization: integral of the bump over the unit disc.
        double mass = 0.0;
        for (int i = 0; i < kGlNodes; ++i) {
            const double r = 0.5 * (gl().x[i] + 1.0);
            mass += 0.5 * gl().w[i] * 2.0 * M_PI * r * bump_profile(r * r);
        }
        for (int k = 0; k < kTableSize; ++k) {
            const double w = static_cast<double>(k) / (kTableSize - 1);
            const double half = std::sqrt(std::max(0.0, 1.0 - w * w));
            double g = 0.0;
            for (int i = 0; i < kGlNodes; ++i) {
                const double v = half * gl().x[i];
                g += half * gl().w[i] * bump_profile(w * w + v * v);
            }
            table[k] = g / mass;
        }
    }
    double operator()(double w) const {
        const double a = std::abs(w);
        if (a >= 1.0) return 0.0;
        const double s = a * (kTableSize - 1);
        const int k = std::min(static_cast<int>(s), kTableSize - 2);
        const double f = s - k;
        return table[k] * (1.0 - f) + table[k + 1] * f;
    }
};

const Marginal& marginal() {
    static const Marginal m;
    return m;
}

/// int_{lo}^{hi} G(w) phi(w) dw by a single Gauss-Legendre panel.
template <class F>
double gl_panel(double lo, double hi, F&& phi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < kGlNodes; ++i) {
        const double w = mid + half * gl().x[i];
        s += half * gl().w[i] * marginal()(w) * phi(w);
    }
    return s;
}

double kink_integral(double d, double h) {  // int G(w) |d - sqrt(2) h w| dw
    const double ws = d / (std::sqrt(2.0) * h);
    auto abs_term = [d, h](double w) { return std::abs(d - std::sqrt(2.0) * h * w); };
    if (ws <= -1.0 || ws >= 1.0) return gl_panel(-1.0, 1.0, abs_term);
    return gl_panel(-1.0, ws, abs_term) + gl_panel(ws, 1.0, abs_term);
}

double sign_integral(double d, double h) {  // int G(w) sgn(d - sqrt(2) h w) dw
    const double ws = d / (std::sqrt(2.0) * h);
    auto one = [](double) { return 1.0; };
    if (ws <= -1.0) return -gl_panel(-1.0, 1.0, one);
    if (ws >= 1.0) return gl_panel(-1.0, 1.0, one);
    return gl_panel(-1.0, ws, one) - gl_panel(ws, 1.0, one);
}

}  // namespace

SmoothMax::SmoothMax(double h) : h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("smooth max requires h > 0");
}

double SmoothMax::alpha() {
    static std::once_flag flag;
    static double a = 0.0;
    std::call_once(flag, [] { a = 0.5 * kink_integral(0.0, 1.0); });
    return a;
}

double SmoothMax::value(double a, double b) const {
    const double d = a - b;
    if (std::abs(d) >= std::sqrt(2.0) * h_) return std::max(a, b);
    return 0.5 * (a + b) + 0.5 * kink_integral(d, h_);
}

void SmoothMax::derivatives(double a, double b, double& fa, double& fb,
                            double& faa, double& fab, double& fbb) const {
    const double d = a - b;
    const double ws = d / (std::sqrt(2.0) * h_);
    const double Fp = 0.5 * sign_integral(d, h_);
    const double Fpp = std::abs(ws) < 1.0 ? marginal()(ws) / (std::sqrt(2.0) * h_) : 0.0;
    fa = 0.5 + Fp;
    fb = 0.5 - Fp;
    faa = Fpp;
    fab = -Fpp;
    fbb = Fpp;
}

ScalarField compose_convex(const BivariateC2& f, const ScalarField& u1,
                           const ScalarField& u2) {
    if (u1.n != u2.n) throw std::invalid_argument("field dimension mismatch");
    ScalarField w;
    w.n = u1.n;
    w.fd_step = std::min(u1.fd_step, u2.fd_step);
    w.eval = [f, u1, u2](const Point& p) { return f.value(u1.eval(p), u2.eval(p)); };
    if (u1.has_exact() && u2.has_exact()) {
        w.grad = [f, u1, u2](const Point& p) -> Eigen::VectorXd {
            double fa, fb, faa, fab, fbb;
            f.derivatives(u1.eval(p), u2.eval(p), fa, fb, faa, fab, fbb);
            return fa * u1.grad(p) + fb * u2.grad(p);
        };
        w.hess = [f, u1, u2](const Point& p) -> Eigen::MatrixXd {
            double fa, fb, faa, fab, fbb;
            f.derivatives(u1.eval(p), u2.eval(p), fa, fb, faa, fab, fbb);
            const Eigen::VectorXd g1 = u1.grad(p), g2 = u2.grad(p);
            return fa * u1.hess(p) + fb * u2.hess(p)
                 + faa * g1 * g1.transpose() + fbb * g2 * g2.transpose()
                 + fab * (g1 * g2.transpose() + g2 * g1.transpose());
        };
    }
    return w;
}

ScalarField compose_smooth_max(const ScalarField& u1, const ScalarField& u2, double h) {
    auto sm = std::make_shared<SmoothMax>(h);
    BivariateC2 f;
    f.value = [sm](double a, double b) { return sm->value(a, b); };
    f.derivatives = [sm](double a, double b, double& fa, double& fb, double& faa,
                         double& fab, double& fbb) {
        sm->derivatives(a, b, fa, fb, faa, fab, fbb);
    };
    return compose_convex(f, u1, u2);
}

}  // namespace hs2
