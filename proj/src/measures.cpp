#include "hs2/measures.hpp"

#include <cmath>
#include <memory>
#include <sstream>

namespace hs2 {

namespace {

double pow_int(double v, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= v;
    return r;
}

/// Chart-space box of a gauge ball of radius r centered at the origin.
Box ball_cover(int n, double r) {
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(2 * n + 1, r);
    hi(2 * n) = r * r;
    return Box(-hi, hi);
}

enum class CellClass { Inside, Outside, Boundary };

CellClass classify_cell(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, double r) {
    const int d = static_cast<int>(lo.size());
    bool all_in = true, all_out = true;
    for (long mask = 0; mask < (1L << d); ++mask) {
        Eigen::VectorXd c(d);
        for (int k = 0; k < d; ++k) c(k) = (mask >> k) & 1 ? hi(k) : lo(k);
        const double g = gauge(Point::from_coords(c));
        (g <= r ? all_out : all_in) = false;
    }
    if (all_in) return CellClass::Inside;
    if (all_out) {
        // A cell with all corners outside may still clip the ball; the
        // center decides at this resolution.
        const double g = gauge(Point::from_coords(((lo + hi) / 2).eval()));
        return g <= r ? CellClass::Boundary : CellClass::Outside;
    }
    return CellClass::Boundary;
}

/// Recursive midpoint integration of one chart cell against the gauge-ball
/// indicator, with `levels` of boundary refinement left.
double ball_cell(const std::function<double(const Point&)>& integrand,
                 const Point& center, double r,
                 const Eigen::VectorXd& lo, const Eigen::VectorXd& hi, int levels) {
    const int d = static_cast<int>(lo.size());
    const CellClass cls = classify_cell(lo, hi, r);
    if (cls == CellClass::Outside) return 0.0;
    const Eigen::VectorXd mid = (lo + hi) / 2;
    const double vol = (hi - lo).prod();
    if (cls == CellClass::Inside || levels == 0) {
        const Point zeta = Point::from_coords(mid);
        if (cls == CellClass::Boundary && gauge(zeta) > r) return 0.0;
        return vol * integrand(compose(center, zeta));
    }
    double s = 0.0;
    for (long mask = 0; mask < (1L << d); ++mask) {
        Eigen::VectorXd clo(d), chi(d);
        for (int k = 0; k < d; ++k) {
            if ((mask >> k) & 1) {
                clo(k) = mid(k);
                chi(k) = hi(k);
            } else {
                clo(k) = lo(k);
                chi(k) = mid(k);
            }
        }
        s += ball_cell(integrand, center, r, clo, chi, levels - 1);
    }
    return s;
}

double integrate_once(const std::function<double(const Point&)>& integrand,
                      const Region& region, int n, int cells) {
    if (const Box* box = std::get_if<Box>(&region)) {
        const int d = box->dim();
        const Eigen::VectorXd step = (box->hi - box->lo) / cells;
        const double cell_vol = step.prod();
        const long ncells = static_cast<long>(std::pow(cells, d));
        double s = 0.0;
        for (long cell = 0; cell < ncells; ++cell) {
            long c = cell;
            Eigen::VectorXd mc(d);
            for (int k = 0; k < d; ++k) {
                mc(k) = box->lo(k) + (c % cells + 0.5) * step(k);
                c /= cells;
            }
            s += integrand(Point::from_coords(mc));
        }
        return s * cell_vol;
    }
    const GaugeBall& ball = std::get<GaugeBall>(region);
    const Box cover = ball_cover(n, ball.radius);
    const int d = cover.dim();
    const Eigen::VectorXd step = (cover.hi - cover.lo) / cells;
    const long ncells = static_cast<long>(std::pow(cells, d));
    double s = 0.0;
    for (long cell = 0; cell < ncells; ++cell) {
        long c = cell;
        Eigen::VectorXd lo(d);
        for (int k = 0; k < d; ++k) {
            lo(k) = cover.lo(k) + (c % cells) * step(k);
            c /= cells;
        }
        s += ball_cell(integrand, ball.center, ball.radius, lo,
                       (lo + step).eval(), 2);
    }
    return s;
}

std::string region_descriptor(const Region& region) {
    std::ostringstream os;
    if (const Box* box = std::get_if<Box>(&region)) {
        os << "box[";
        for (int k = 0; k < box->dim(); ++k)
            os << (k ? "," : "") << box->lo(k) << ":" << box->hi(k);
        os << "]";
    } else {
        const GaugeBall& b = std::get<GaugeBall>(region);
        os << "gauge_ball(r=" << b.radius << ")";
    }
    return os.str();
}

int region_n(const Region& region) {
    if (const Box* box = std::get_if<Box>(&region)) return (box->dim() - 1) / 2;
    return std::get<GaugeBall>(region).n();
}

}  // namespace

double measure_density(const ScalarField& field, const Point& p, DerivMode mode) {
    const HorizontalJet jet = horizontal_jet(field, p, mode);
    return sigma2(jet.H) + 12.0 * field.n * jet.ut * jet.ut;
}

MeasureEstimate integrate_region(const std::function<double(const Point&)>& integrand,
                                 const Region& region, int n, int cells_per_axis) {
    if (cells_per_axis < 2)
        throw std::invalid_argument("resolution too coarse: need >= 2 cells per axis");
    const int coarse = std::max(2, cells_per_axis / 2);
    const double fine_val = integrate_once(integrand, region, n, cells_per_axis);
    const double coarse_val = integrate_once(integrand, region, n, coarse);
    MeasureEstimate est;
    est.value = fine_val;
    est.error_estimate = std::abs(fine_val - coarse_val) / 3.0;
    est.resolution = cells_per_axis;
    est.region = region_descriptor(region);
    return est;
}

MeasureEstimate measure_of_region(const ScalarField& field, const Region& region,
                                  int cells_per_axis) {
    if (region_n(region) != field.n)
        throw std::invalid_argument("region/field dimension mismatch");
    auto integrand = [&field](const Point& p) { return measure_density(field, p); };
    return integrate_region(integrand, region, field.n, cells_per_axis);
}

MeasureEstimate trace_integral(const ScalarField& field, const Region& region,
                               int cells_per_axis) {
    if (region_n(region) != field.n)
        throw std::invalid_argument("region/field dimension mismatch");
    auto integrand = [&field](const Point& p) {
        return horizontal_jet(field, p).H.trace();
    };
    return integrate_region(integrand, region, field.n, cells_per_axis);
}

CompareResult compare_pair(const ScalarField& u, const ScalarField& v,
                           const GaugeBall& region, int cells_per_axis,
                           std::uint64_t seed, long boundary_samples) {
    CompareResult res;
    if (u.n != v.n || u.n != region.n()) {
        res.detail = "dimension mismatch";
        return res;
    }

    // Precondition 1: u + v is sigma_2(H)-convex on the region.
    const ScalarField sum = field_axpy(1.0, u, 1.0, v);
    const ConvexityReport rep = classify(sum, region, SamplePlan{400, seed});
    if (rep.verdict == ConvexityVerdict::NEITHER) {
        res.detail = "u + v is not sigma_2(H)-convex";
        return res;
    }

    // Precondition 2: v = u on the boundary (seeded boundary samples reached
    // by dilating random chart points onto the gauge sphere).
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    double scale = 1.0;
    for (long k = 0; k < boundary_samples; ++k) {
        Eigen::VectorXd c(2 * u.n + 1);
        for (int i = 0; i < c.size(); ++i) c(i) = sym(rng);
        Point zeta = Point::from_coords(c);
        const double g = gauge(zeta);
        if (g < 1e-8) continue;
        zeta = dilate(region.radius / g, zeta);
        const Point p = compose(region.center, zeta);
        const double uv = u.eval(p), vv = v.eval(p);
        scale = std::max({scale, std::abs(uv), std::abs(vv)});
        if (std::abs(uv - vv) > 1e-8 * scale) {
            res.detail = "v != u on the boundary";
            return res;
        }
    }

    // Precondition 3: v < u strictly at interior samples.
    for (const Point& p : sample_region(region, u.n, SamplePlan{400, seed + 1})) {
        if (distance(p, region.center) > 0.999 * region.radius) continue;
        if (!(v.eval(p) < u.eval(p))) {
            res.detail = "v < u fails at an interior sample";
            return res;
        }
    }

    res.mu_u = measure_of_region(u, region, cells_per_axis);
    res.mu_v = measure_of_region(v, region, cells_per_axis);
    res.trace_u = trace_integral(u, region, cells_per_axis);
    res.trace_v = trace_integral(v, region, cells_per_axis);
    res.measure_margin = res.mu_v.value - res.mu_u.value;
    res.trace_margin = res.trace_v.value - res.trace_u.value;
    const double mu_err = res.mu_u.error_estimate + res.mu_v.error_estimate;
    const double tr_err = res.trace_u.error_estimate + res.trace_v.error_estimate;
    if (res.measure_margin >= -mu_err && res.trace_margin >= -tr_err) {
        res.status = CompareStatus::PASS;
        res.detail = "ok";
    } else {
        res.status = CompareStatus::FAIL_INEQUALITY;
        res.detail = "comparison inequality violated on verified preconditions";
    }
    return res;
}

double Barrier::coefficient() const {
    return m0 / ((1.0 - pow_int(sigma, 4)) * pow_int(R, 4));
}

double barrier_sigma2_constant(int n) { return 16.0 * n * (2.0 * n + 7.0); }

double barrier_trace_constant(int n) { return 8.0 * n + 16.0; }

Barrier barrier(const Point& center, double R, double sigma, double m0) {
    if (!(R > 0.0)) throw std::invalid_argument("barrier requires R > 0");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("barrier requires sigma in (0,1)");
    if (!(m0 < 0.0)) throw std::invalid_argument("barrier requires m0 < 0");
    Barrier b;
    b.center = center;
    b.R = R;
    b.sigma = sigma;
    b.m0 = m0;
    const double K = b.coefficient();
    // v = K (R^4 - rho(center^{-1} o xi)^4)
    ScalarField g4 = field_gauge4_at(center);
    b.field = field_shift(field_axpy(-K, g4, 0.0, field_constant(center.n(), 0.0)),
                          K * pow_int(R, 4));
    return b;
}

double oscillation(const ScalarField& field, const Region& region,
                   const SamplePlan& plan) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point& p : sample_region(region, field.n, plan)) {
        const double v = field.eval(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

OscillationRatios oscillation_bound_check(const ScalarField& field,
                                          const GaugeBall& outer, double sigma,
                                          int cells_per_axis, std::uint64_t seed) {
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("sigma must lie in (0,1)");
    const ConvexityReport rep = classify(field, outer, SamplePlan{400, seed});
    if (rep.verdict == ConvexityVerdict::NEITHER)
        throw std::invalid_argument("oscillation bound requires a sigma_2(H)-convex field");
    const GaugeBall inner(outer.center, sigma * outer.radius);
    OscillationRatios out;
    out.osc = oscillation(field, outer, SamplePlan{4000, seed + 1});
    out.mu = measure_of_region(field, inner, cells_per_axis);
    out.trace = trace_integral(field, inner, cells_per_axis);
    const int n = field.n;
    const double R = outer.radius;
    out.measure_ratio = out.mu.value / (out.osc * out.osc * pow_int(R, 2 * n - 2));
    out.trace_ratio = out.trace.value / (pow_int(R, 2 * n) * out.osc);
    return out;
}

ScalarField mollify(const ScalarField& field, double eps, int nodes_per_axis) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollification scale must be positive");
    const int d = 2 * field.n + 1;

    // Per-axis Gauss-Legendre nodes against the 1-D bump, discretely
    // normalized so constants (and by symmetry affine functions) are
    // reproduced exactly.
    const int m = nodes_per_axis;
    std::vector<double> node(m), weight(m);
    {
        Eigen::VectorXd xs(m), ws(m);
        for (int i = 0; i < m; ++i) {
            // Chebyshev initial guess + Newton, as in the smooth-max rule.
            double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= m; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = m * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = m * (x * p1 - p0) / (x * x - 1.0);
            xs(i) = x;
            ws(i) = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        double z = 0.0;
        for (int i = 0; i < m; ++i) {
            const double b = xs(i) * xs(i) < 1.0
                                 ? std::exp(-1.0 / (1.0 - xs(i) * xs(i)))
                                 : 0.0;
            node[i] = xs(i);
            weight[i] = ws(i) * b;
            z += weight[i];
        }
        for (double& w : weight) w /= z;
    }

    // Flattened tensor rule: offsets scaled (eps, ..., eps, eps^2).
    struct Stencil {
        std::vector<Eigen::VectorXd> offsets;
        std::vector<double> weights;
    };
    auto st = std::make_shared<Stencil>();
    const long total = static_cast<long>(std::pow(m, d));
    st->offsets.reserve(total);
    st->weights.reserve(total);
    for (long cell = 0; cell < total; ++cell) {
        long c = cell;
        Eigen::VectorXd off(d);
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            const int i = static_cast<int>(c % m);
            c /= m;
            off(k) = (k == d - 1 ? eps * eps : eps) * node[i];
            w *= weight[i];
        }
        st->offsets.push_back(off);
        st->weights.push_back(w);
    }

    ScalarField base = field;
    ScalarField out;
    out.n = field.n;
    out.fd_step = std::min(1e-4, eps / 16.0);
    out.eval = [base, st](const Point& p) {
        const Eigen::VectorXd c = p.coords();
        double s = 0.0;
        for (std::size_t k = 0; k < st->weights.size(); ++k)
            s += st->weights[k] * base.eval(Point::from_coords(c - st->offsets[k]));
        return s;
    };
    return out;
}

std::vector<double> geometric_schedule(double eps0, int steps) {
    std::vector<double> s;
    for (int k = 0; k < steps; ++k) s.push_back(eps0 * std::pow(2.0, -k));
    return s;
}

double dt_l2_norm(const ScalarField& field, const Region& K, int cells_per_axis) {
    auto integrand = [&field](const Point& p) {
        double ut;
        if (field.has_exact()) {
            ut = field.grad(p)(2 * field.n);
        } else {
            const double h = field.fd_step;
            Point pp = p, pm = p;
            pp.t += h;
            pm.t -= h;
            ut = (field.eval(pp) - field.eval(pm)) / (2.0 * h);
        }
        return ut * ut;
    };
    return std::sqrt(integrate_region(integrand, K, field.n, cells_per_axis).value);
}

WeakConvergenceTable weak_convergence_test(const ScalarField& u,
                                           const std::vector<double>& eps_schedule,
                                           const ScalarField& test_fn,
                                           const Region& region, int cells_per_axis) {
    if (eps_schedule.empty())
        throw std::invalid_argument("empty epsilon schedule");

    // The test function must be supported strictly inside the region: check
    // it vanishes near the boundary.
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const int d = 2 * u.n + 1;
        for (int k = 0; k < 200; ++k) {
            Eigen::VectorXd c(d);
            Point p = Point::zero(u.n);
            if (const Box* box = std::get_if<Box>(&region)) {
                for (int i = 0; i < d; ++i)
                    c(i) = box->lo(i) + (box->hi(i) - box->lo(i)) * unit(rng);
                const int face = k % d;
                c(face) = (k / d) % 2 ? box->hi(face) : box->lo(face);
                p = Point::from_coords(c);
            } else {
                const GaugeBall& ball = std::get<GaugeBall>(region);
                for (int i = 0; i < d; ++i) c(i) = 2.0 * unit(rng) - 1.0;
                Point zeta = Point::from_coords(c);
                const double g = gauge(zeta);
                if (g < 1e-8) continue;
                p = compose(ball.center, dilate(ball.radius / g, zeta));
            }
            if (std::abs(test_fn.eval(p)) > 1e-10)
                throw std::invalid_argument(
                    "test function is not compactly supported inside the region");
        }
    }

    auto weighted_mu = [&](const ScalarField& f) {
        auto integrand = [&](const Point& p) {
            const double w = test_fn.eval(p);
            return w == 0.0 ? 0.0 : w * measure_density(f, p);
        };
        return integrate_region(integrand, region, u.n, cells_per_axis).value;
    };

    WeakConvergenceTable table;
    if (u.has_exact()) {
        table.reference = weighted_mu(u);
        table.reference_exact = true;
    } else {
        const double eps_min = *std::min_element(eps_schedule.begin(), eps_schedule.end());
        table.reference = weighted_mu(mollify(u, eps_min / 2.0));
        table.reference_exact = false;
    }
    for (double eps : eps_schedule) {
        WeakConvergenceRow row;
        row.eps = eps;
        row.integral = weighted_mu(mollify(u, eps));
        row.discrepancy = std::abs(row.integral - table.reference);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace hs2
