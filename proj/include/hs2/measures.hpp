/// \file measures.hpp
/// \brief sigma_2(H)-measure quadrature, the comparison principle, the
///        oscillation estimate, the explicit barrier, mollification, and
///        weak-convergence experiments.
#pragma once

#include "hs2/convexity.hpp"

namespace hs2 {

struct MeasureEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    int resolution = 0;       ///< cells per axis at the finer level
    std::string region;       ///< human-readable domain descriptor
};

/// sigma_2(H(u))(p) + 12 n (d_t u(p))^2; nonnegative on sigma_2(H)-convex fields.
double measure_density(const ScalarField& field, const Point& p,
                       DerivMode mode = DerivMode::Auto);

/// Midpoint-rule integral of `integrand` over the region, with a Richardson
/// error estimate from a coarse/fine pair. Gauge balls are integrated by a
/// box cover with two levels of boundary-cell refinement.
MeasureEstimate integrate_region(const std::function<double(const Point&)>& integrand,
                                 const Region& region, int n, int cells_per_axis);

/// mu(u)(region) by quadrature of the measure density.
MeasureEstimate measure_of_region(const ScalarField& field, const Region& region,
                                  int cells_per_axis);

/// Integral of trace H(u) over the region.
MeasureEstimate trace_integral(const ScalarField& field, const Region& region,
                               int cells_per_axis);

enum class CompareStatus { PASS, FAIL_INEQUALITY, FAIL_PRECONDITION };

struct CompareResult {
    CompareStatus status = CompareStatus::FAIL_PRECONDITION;
    std::string detail;
    MeasureEstimate mu_u, mu_v;        ///< mu integrals of u and v
    MeasureEstimate trace_u, trace_v;  ///< trace integrals
    double measure_margin = 0.0;       ///< mu_v - mu_u (>= -error for PASS)
    double trace_margin = 0.0;
};

/// Verifies mu(u)(region) <= mu(v)(region) and the trace inequality on a
/// pair with v = u on the boundary, v < u inside, and u + v
/// sigma_2(H)-convex. Precondition violations are reported distinctly: an
/// inequality failure on verified preconditions signals a defect.
CompareResult compare_pair(const ScalarField& u, const ScalarField& v,
                           const GaugeBall& region, int cells_per_axis,
                           std::uint64_t seed = 1, long boundary_samples = 200);

struct Barrier {
    Point center;
    double R = 1.0;
    double sigma = 0.5;
    double m0 = -1.0;
    ScalarField field;  ///< v = m0 / ((1 - sigma^4) R^4) (R^4 - rho^4), exact derivatives

    double coefficient() const;  ///< m0 / ((1 - sigma^4) R^4), negative
};

/// Closed-form constants of the barrier (frozen from a pre-build symbolic
/// oracle; see also tests/oracles):
///   sigma_2(H(v)) = c_n q^2 K^2 with c_n = 16 n (2n + 7),
///   trace H(v)    = -(8n + 16) q K,
/// where q = |x'|^2 + |y'|^2 in the coordinates translated to the center
/// and K is the (negative) barrier coefficient.
double barrier_sigma2_constant(int n);
double barrier_trace_constant(int n);

Barrier barrier(const Point& center, double R, double sigma, double m0);

/// max - min over seeded samples; a lower bound of the true oscillation.
double oscillation(const ScalarField& field, const Region& region,
                   const SamplePlan& plan);

struct OscillationRatios {
    double measure_ratio = 0.0;  ///< mu(u)(B_{sigma R}) / ((osc_{B_R} u)^2 R^{2n-2})
    double trace_ratio = 0.0;    ///< trace integral over B_{sigma R} / (R^{2n} osc_{B_R} u)
    double osc = 0.0;
    MeasureEstimate mu, trace;
};

OscillationRatios oscillation_bound_check(const ScalarField& field,
                                          const GaugeBall& outer, double sigma,
                                          int cells_per_axis,
                                          std::uint64_t seed = 1);

/// Euclidean convolution with an anisotropy-aware product bump scaled
/// (eps, eps, eps^2); returns an evaluate-only field (jets via FD).
ScalarField mollify(const ScalarField& field, double eps, int nodes_per_axis = 10);

struct WeakConvergenceRow {
    double eps = 0.0;
    double integral = 0.0;     ///< int f dmu(u_eps)
    double discrepancy = 0.0;  ///< |integral - reference|
};

struct WeakConvergenceTable {
    double reference = 0.0;  ///< int f dmu(u), or the finest-eps proxy
    bool reference_exact = false;
    std::vector<WeakConvergenceRow> rows;
};

/// Tracks int f dmu(u_eps) over the epsilon schedule. When u has exact
/// derivatives the reference is int f dmu(u); otherwise the proxy is the
/// value at eps_min / 2.
WeakConvergenceTable weak_convergence_test(const ScalarField& u,
                                           const std::vector<double>& eps_schedule,
                                           const ScalarField& test_fn,
                                           const Region& region, int cells_per_axis);

/// Geometric default schedule eps_k = eps0 * 2^{-k}.
std::vector<double> geometric_schedule(double eps0, int steps);

/// ||d_t u_eps||_{L^2(K)} used by the uniform L^2 bound experiment.
double dt_l2_norm(const ScalarField& field, const Region& K, int cells_per_axis);

}  // namespace hs2
