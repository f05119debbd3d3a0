/// \file convexity.hpp
/// \brief sigma_2 of symmetric matrices, eigenvalue machinery, H-convexity
///        classification, and convex composition with a smooth max.
#pragma once

#include <optional>
#include <random>
#include <variant>

#include "hs2/jet.hpp"

namespace hs2 {

/// Asserts symmetry (to 1e-12 relative) and finiteness.
void check_symmetric(const Eigen::MatrixXd& A);

/// sigma_2(A) = (1/2)((tr A)^2 - tr(A^2)) = sum_{j<k} lambda_j lambda_k.
double sigma2(const Eigen::MatrixXd& A);

/// Ascending eigenvalues by cyclic Jacobi rotations. Throws after 100
/// sweeps without convergence.
Eigen::VectorXd jacobi_eigenvalues(const Eigen::MatrixXd& A);

/// sigma_2 computed from the eigenvalues as a pairwise sum; the independent
/// cross-check route for sigma2().
double sigma2_from_eigenvalues(const Eigen::VectorXd& lambda);

/// sigma_2 of the horizontal Hessian of `field` at p.
double sigma2_horizontal(const ScalarField& field, const Point& p,
                         DerivMode mode = DerivMode::Auto);

/// d sigma_2 / d a_{ij} as a matrix: tr(A) I - A.
Eigen::MatrixXd sigma2_gradient_matrix(const Eigen::MatrixXd& A);

/// (d s / d lambda_j)_j = (sum_{k != j} lambda_k)_j.
Eigen::VectorXd lemma_partial_s(const Eigen::VectorXd& lambda);

enum class ConvexityVerdict { H_CONVEX, SIGMA2_CONVEX_ONLY, NEITHER };

struct ConvexityReport {
    long samples = 0;
    double min_eigenvalue = 0.0;
    double min_trace = 0.0;
    double min_sigma2 = 0.0;
    std::vector<Point> failing_points;
    ConvexityVerdict verdict = ConvexityVerdict::NEITHER;
};

struct Box {
    Eigen::VectorXd lo, hi;  ///< length 2n+1 each
    Box() = default;
    Box(Eigen::VectorXd l, Eigen::VectorXd h);
    int dim() const { return static_cast<int>(lo.size()); }
    static Box centered(int n, double half_horizontal, double half_vertical);
    static Box unit(int n);  ///< [0,1]^{2n+1}
    double volume() const;
};

using Region = std::variant<Box, GaugeBall>;

struct SamplePlan {
    long count = 1000;
    std::uint64_t seed = 0;
};

/// Uniform seeded samples of a region (rejection sampling for gauge balls).
std::vector<Point> sample_region(const Region& region, int n, const SamplePlan& plan);

/// PSD/trace/sigma_2 diagnostics of the horizontal Hessian over sampled
/// points; tolerance scales as tol * (1 + ||H||).
ConvexityReport classify(const ScalarField& field, const Region& region,
                         const SamplePlan& plan, double tol = 1e-8);

/// The mollified max f_h(a, b) = h^{-2} int rho((x-y)/h) max{y1, y2} dy with
/// the standard radial bump on the unit disc. Exactly max{a, b} when
/// |a - b| > 2h... in fact as soon as |a - b| >= sqrt(2) h.
class SmoothMax {
public:
    explicit SmoothMax(double h);
    double h() const { return h_; }
    /// First absolute moment alpha: f_h(a, a) = a + alpha * h.
    static double alpha();

    double value(double a, double b) const;
    void derivatives(double a, double b, double& fa, double& fb, double& faa,
                     double& fab, double& fbb) const;

private:
    double h_;
};

/// w = f_h(u1, u2); carries exact Euclidean derivatives when both inputs do.
ScalarField compose_smooth_max(const ScalarField& u1, const ScalarField& u2, double h);

/// General convex nondecreasing composition w = f(u1, u2); f supplied with
/// value/gradient/Hessian, convexity caller-asserted.
struct BivariateC2 {
    std::function<double(double, double)> value;
    std::function<void(double, double, double&, double&, double&, double&, double&)> derivatives;
};
ScalarField compose_convex(const BivariateC2& f, const ScalarField& u1, const ScalarField& u2);

}  // namespace hs2
