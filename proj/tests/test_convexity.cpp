#include <doctest.h>

#include "hs2/convexity.hpp"
#include "test_support.hpp"

using namespace hs2;

namespace {

Eigen::MatrixXd random_symmetric(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd A(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) A(i, j) = A(j, i) = gauss(rng);
    return A;
}

Eigen::MatrixXd diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(static_cast<int>(d.size()));
    int k = 0;
    for (double x : d) v(k++) = x;
    return v.asDiagonal().toDenseMatrix();
}

}  // namespace

TEST_CASE("sigma2 hand values") {
    CHECK(sigma2(diag({1, 2, 3})) == doctest::Approx(11.0));
    CHECK(sigma2(Eigen::MatrixXd::Zero(3, 3)) == doctest::Approx(0.0));
    for (int n : {1, 2, 3}) {
        const Eigen::MatrixXd A = 2.0 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
        CHECK(sigma2(A) == doctest::Approx(4.0 * n * (2 * n - 1)));
    }
    CHECK_THROWS_AS(sigma2((Eigen::MatrixXd(2, 2) << 0, 1, 0, 0).finished()),
                    std::invalid_argument);
}

TEST_CASE("jacobi eigenvalues: hand values and reconstruction quality") {
    const Eigen::VectorXd l1 = jacobi_eigenvalues(diag({3, 1, 2}));
    CHECK(l1(0) == doctest::Approx(1.0));
    CHECK(l1(1) == doctest::Approx(2.0));
    CHECK(l1(2) == doctest::Approx(3.0));
    Eigen::MatrixXd offdiag(2, 2);
    offdiag << 0, 1, 1, 0;
    const Eigen::VectorXd l2 = jacobi_eigenvalues(offdiag);
    CHECK(l2(0) == doctest::Approx(-1.0));
    CHECK(l2(1) == doctest::Approx(1.0));
    CHECK((jacobi_eigenvalues(Eigen::MatrixXd::Identity(5, 5)).array() - 1.0)
              .abs()
              .maxCoeff() <= 1e-14);

    // Trace/Frobenius preservation on random matrices is the cheap
    // reconstruction certificate for a rotation-based solver.
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 200; ++rep) {
        const int dim = 2 + rep % 5;
        const Eigen::MatrixXd A = random_symmetric(dim, rng);
        const Eigen::VectorXd lam = jacobi_eigenvalues(A);
        CHECK(lam.sum() == doctest::Approx(A.trace()).epsilon(1e-10));
        CHECK(lam.squaredNorm() ==
              doctest::Approx((A * A).trace()).epsilon(1e-10));
        for (int k = 0; k + 1 < dim; ++k) REQUIRE(lam(k) <= lam(k + 1));
    }
}

TEST_CASE("sigma2: trace identity vs eigenvalue pairwise sum, 1000 matrices") {
    std::mt19937_64 rng(101);
    for (int dim : {2, 4, 6}) {
        for (int rep = 0; rep < 334; ++rep) {
            const Eigen::MatrixXd A = random_symmetric(dim, rng);
            const double s_tr = sigma2(A);
            const double s_eig = sigma2_from_eigenvalues(jacobi_eigenvalues(A));
            REQUIRE(std::abs(s_tr - s_eig) <= 1e-10 * (1.0 + std::abs(s_tr)));
        }
    }
}

TEST_CASE("sigma2_horizontal flagship values") {
    CHECK(sigma2_horizontal(field_sq(1), Point(0.2, 0.3, -0.1)) == doctest::Approx(4.0));
    CHECK(sigma2_horizontal(field_t(1), Point(0.2, 0.3, -0.1)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // u = x^2 has a rank-one horizontal Hessian.
    Monomial m;
    m.coeff = 1.0;
    m.exponents = {2, 0, 0};
    CHECK(sigma2_horizontal(polynomial_field(1, {m}), Point(1, 2, 3)) ==
          doctest::Approx(0.0));
}

TEST_CASE("sigma2_gradient_matrix: closed form, PSD under the hypotheses, FD check") {
    CHECK((sigma2_gradient_matrix(diag({2, 1, 0})) - diag({1, 2, 3})).norm() <= 1e-14);
    CHECK(sigma2_gradient_matrix(Eigen::MatrixXd::Zero(4, 4)).norm() == 0.0);

    std::mt19937_64 rng(202);
    int accepted = 0, fd_checked = 0;
    while (accepted < 1000) {
        const Eigen::MatrixXd A = random_symmetric(4, rng);
        if (sigma2(A) < 0.0 || A.trace() < 0.0) continue;
        ++accepted;
        const Eigen::MatrixXd M = sigma2_gradient_matrix(A);
        CHECK((M - M.transpose()).norm() <= 1e-14);
        const Eigen::VectorXd lam = jacobi_eigenvalues(M);
        REQUIRE(lam(0) >= -1e-10);

        // delta(A) = (1/2) min_j ds/dlambda_j lower-bounds the quadratic form.
        const Eigen::VectorXd evs = jacobi_eigenvalues(A);
        const double delta = 0.5 * lemma_partial_s(evs).minCoeff();
        REQUIRE(delta >= -1e-12);
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        Eigen::VectorXd x(4);
        for (int k = 0; k < 4; ++k) x(k) = unif(rng);
        REQUIRE(x.dot(M * x) >= delta * x.squaredNorm() - 1e-9);

        if (fd_checked < 100) {
            ++fd_checked;
            const double h = 1e-6;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    Eigen::MatrixXd Ap = A, Am = A;
                    Ap(i, j) += h;
                    Ap(j, i) = Ap(i, j);
                    Am(i, j) -= h;
                    Am(j, i) = Am(i, j);
                    double fd = (sigma2(Ap) - sigma2(Am)) / (2.0 * h);
                    if (i != j) fd /= 2.0;  // symmetric entries move in pairs
                    REQUIRE(std::abs(fd - M(i, j)) <= 1e-6);
                }
        }
    }
}

TEST_CASE("lemma_partial_s values and hypothesis behaviour") {
    Eigen::VectorXd l(3);
    l << 2, 1, 0;
    const Eigen::VectorXd p = lemma_partial_s(l);
    CHECK(p(0) == doctest::Approx(1.0));
    CHECK(p(1) == doctest::Approx(2.0));
    CHECK(p(2) == doctest::Approx(3.0));
    Eigen::VectorXd l2(2);
    l2 << 1, 1;
    CHECK(lemma_partial_s(l2)(0) == doctest::Approx(1.0));
    // Hypothesis failure: s < 0, the raw value is still returned.
    Eigen::VectorXd l3(2);
    l3 << 3, -1;
    const Eigen::VectorXd p3 = lemma_partial_s(l3);
    CHECK(p3(0) == doctest::Approx(-1.0));
    CHECK(p3(1) == doctest::Approx(3.0));
    CHECK(sigma2_from_eigenvalues(l3) < 0.0);  // NOT_APPLICABLE regime
}

TEST_CASE("classify: quadratics and the gauge remark") {
    // u = |x|^2 + |y|^2 + lambda t stays H-convex for any small lambda.
    for (double lambda : {-0.5, 0.0, 0.5}) {
        const ScalarField u =
            field_axpy(1.0, field_sq(1), lambda, field_t(1));
        const ConvexityReport rep =
            classify(u, Box::centered(1, 1.0, 1.0), SamplePlan{500, 4});
        CHECK(rep.verdict == ConvexityVerdict::H_CONVEX);
    }
    // u = -|x|^2 is neither (negative trace).
    const ScalarField neg = field_axpy(-1.0, field_sq(1), 0.0, field_t(1));
    CHECK(classify(neg, Box::centered(1, 1.0, 1.0), SamplePlan{200, 4}).verdict ==
          ConvexityVerdict::NEITHER);

    // The gauge is H-convex on an annulus although its Euclidean Hessian has
    // a negative eigenvalue somewhere.
    for (int n : {1, 2}) {
        const ScalarField rho = field_gauge(n);
        const auto pts = sample_region(GaugeBall(Point::zero(n), 2.0), n,
                                       SamplePlan{4000, 11});
        bool euclidean_negative = false;
        double min_eig = 1e300;
        for (const Point& p : pts) {
            if (gauge(p) < 0.3) continue;  // stay on the annulus
            const HorizontalJet jet = horizontal_jet(rho, p);
            min_eig = std::min(min_eig, jacobi_eigenvalues(jet.H)(0));
            if (jacobi_eigenvalues(rho.hess(p))(0) <= -1e-3)
                euclidean_negative = true;
        }
        CHECK(min_eig >= -1e-8);
        CHECK(euclidean_negative);
    }
}

TEST_CASE("H-convex implies sigma2(H)-convex at every sample") {
    std::mt19937_64 rng(71);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + rep % 2;
        const ScalarField u = test::random_polynomial(n, rng);
        const Point p = test::random_point(n, rng);
        const HorizontalJet jet = horizontal_jet(u, p);
        const Eigen::VectorXd lam = jacobi_eigenvalues(jet.H);
        if (lam(0) >= 0.0) {
            CHECK(jet.H.trace() >= -1e-12);
            CHECK(sigma2(jet.H) >= -1e-12);
        }
    }
}
