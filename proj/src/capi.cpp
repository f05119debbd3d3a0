#include "hs2/hs2_c.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "hs2/campaign.hpp"
#include "hs2/measures.hpp"

struct hs2_field {
    hs2::ScalarField f;
};

namespace {

thread_local std::string g_last_error;

hs2_status fail(hs2_status code, const char* what) {
    g_last_error = what;
    return code;
}

hs2_status classify_exception(const std::exception& e) {
    g_last_error = e.what();
    if (dynamic_cast<const std::invalid_argument*>(&e)) return HS2_ERR_INVALID_ARG;
    return HS2_ERR_INTERNAL;
}

hs2::Point to_point(int n, const double* c) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(c, 2 * n + 1);
    return hs2::Point::from_coords(v);
}

void from_point(const hs2::Point& p, double* out) {
    Eigen::Map<Eigen::VectorXd>(out, p.dim()) = p.coords();
}

template <class F>
hs2_status guarded(F&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return classify_exception(e);
    } catch (...) {
        return fail(HS2_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* hs2_version(void) { return "hs2 0.1.0"; }

const char* hs2_last_error(void) { return g_last_error.c_str(); }

hs2_status hs2_compose(int n, const double* a, const double* b, double* out) {
    if (n < 1 || !a || !b || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        from_point(hs2::compose(to_point(n, a), to_point(n, b)), out);
        return HS2_OK;
    });
}

hs2_status hs2_inverse(int n, const double* a, double* out) {
    if (n < 1 || !a || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        from_point(hs2::inverse(to_point(n, a)), out);
        return HS2_OK;
    });
}

hs2_status hs2_dilate(int n, double lambda, const double* a, double* out) {
    if (n < 1 || !a || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        from_point(hs2::dilate(lambda, to_point(n, a)), out);
        return HS2_OK;
    });
}

hs2_status hs2_gauge(int n, const double* a, double* out) {
    if (n < 1 || !a || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = hs2::gauge(to_point(n, a));
        return HS2_OK;
    });
}

hs2_status hs2_distance(int n, const double* a, const double* b, double* out) {
    if (n < 1 || !a || !b || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = hs2::distance(to_point(n, a), to_point(n, b));
        return HS2_OK;
    });
}

hs2_status hs2_field_create_builtin(int n, const char* name, hs2_field** out) {
    if (n < 1 || !name || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = new hs2_field{hs2::make_builtin_field(n, name)};
        return HS2_OK;
    });
}

hs2_status hs2_field_create_callback(int n, hs2_eval_fn eval, void* user_data,
                                     double fd_step, hs2_field** out) {
    if (n < 1 || !eval || !out || !(fd_step > 0.0))
        return fail(HS2_ERR_INVALID_ARG, "bad callback-field argument");
    hs2::ScalarField f;
    f.n = n;
    f.fd_step = fd_step;
    f.eval = [eval, user_data](const hs2::Point& p) {
        const Eigen::VectorXd c = p.coords();
        return eval(c.data(), user_data);
    };
    *out = new hs2_field{std::move(f)};
    return HS2_OK;
}

hs2_status hs2_field_create_barrier(int n, const double* center, double R,
                                    double sigma, double m0, hs2_field** out) {
    if (n < 1 || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const hs2::Point c = center ? to_point(n, center) : hs2::Point::zero(n);
        *out = new hs2_field{hs2::barrier(c, R, sigma, m0).field};
        return HS2_OK;
    });
}

hs2_status hs2_field_smooth_max(const hs2_field* u1, const hs2_field* u2, double h,
                                hs2_field** out) {
    if (!u1 || !u2 || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = new hs2_field{hs2::compose_smooth_max(u1->f, u2->f, h)};
        return HS2_OK;
    });
}

hs2_status hs2_field_mollify(const hs2_field* u, double eps, hs2_field** out) {
    if (!u || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = new hs2_field{hs2::mollify(u->f, eps)};
        return HS2_OK;
    });
}

hs2_status hs2_field_eval(const hs2_field* f, const double* point, double* out) {
    if (!f || !point || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = f->f.eval(to_point(f->f.n, point));
        return HS2_OK;
    });
}

void hs2_field_destroy(hs2_field* f) { delete f; }

hs2_status hs2_horizontal_jet(const hs2_field* f, const double* point, double* value,
                              double* Xu, double* X2u, double* H, double* ut) {
    if (!f || !point) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const hs2::HorizontalJet jet =
            hs2::horizontal_jet(f->f, to_point(f->f.n, point));
        const int m = 2 * f->f.n;
        if (value) *value = jet.value;
        if (ut) *ut = jet.ut;
        if (Xu) Eigen::Map<Eigen::VectorXd>(Xu, m) = jet.Xu;
        using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        if (X2u) Eigen::Map<RowMat>(X2u, m, m) = jet.X2u;
        if (H) Eigen::Map<RowMat>(H, m, m) = jet.H;
        return HS2_OK;
    });
}

hs2_status hs2_measure_density(const hs2_field* f, const double* point, double* out) {
    if (!f || !point || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = hs2::measure_density(f->f, to_point(f->f.n, point));
        return HS2_OK;
    });
}

namespace {

hs2_status box_integral(const hs2_field* f, const double* lo, const double* hi,
                        int cells, double* value, double* error, bool trace) {
    if (!f || !lo || !hi || !value) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const int d = 2 * f->f.n + 1;
        hs2::Box box(Eigen::Map<const Eigen::VectorXd>(lo, d),
                     Eigen::Map<const Eigen::VectorXd>(hi, d));
        const hs2::MeasureEstimate est =
            trace ? hs2::trace_integral(f->f, box, cells)
                  : hs2::measure_of_region(f->f, box, cells);
        *value = est.value;
        if (error) *error = est.error_estimate;
        return HS2_OK;
    });
}

}  // namespace

hs2_status hs2_measure_box(const hs2_field* f, const double* lo, const double* hi,
                           int cells_per_axis, double* value, double* error) {
    return box_integral(f, lo, hi, cells_per_axis, value, error, false);
}

hs2_status hs2_trace_integral_box(const hs2_field* f, const double* lo,
                                  const double* hi, int cells_per_axis,
                                  double* value, double* error) {
    return box_integral(f, lo, hi, cells_per_axis, value, error, true);
}

hs2_status hs2_measure_ball(const hs2_field* f, const double* center, double radius,
                            int cells_per_axis, double* value, double* error) {
    if (!f || !value) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const hs2::Point c =
            center ? to_point(f->f.n, center) : hs2::Point::zero(f->f.n);
        const hs2::MeasureEstimate est =
            hs2::measure_of_region(f->f, hs2::GaugeBall(c, radius), cells_per_axis);
        *value = est.value;
        if (error) *error = est.error_estimate;
        return HS2_OK;
    });
}

namespace {

Eigen::MatrixXd to_matrix(int dim, const double* A) {
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                          Eigen::RowMajor>>(A, dim, dim);
}

}  // namespace

hs2_status hs2_sigma2(int dim, const double* A, double* out) {
    if (dim < 1 || !A || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        *out = hs2::sigma2(to_matrix(dim, A));
        return HS2_OK;
    });
}

hs2_status hs2_eigenvalues(int dim, const double* A, double* out) {
    if (dim < 1 || !A || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        try {
            Eigen::Map<Eigen::VectorXd>(out, dim) =
                hs2::jacobi_eigenvalues(to_matrix(dim, A));
        } catch (const std::runtime_error& e) {
            return fail(HS2_ERR_NO_CONVERGENCE, e.what());
        }
        return HS2_OK;
    });
}

hs2_status hs2_sigma2_gradient(int dim, const double* A, double* out) {
    if (dim < 1 || !A || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        Eigen::Map<RowMat>(out, dim, dim) = hs2::sigma2_gradient_matrix(to_matrix(dim, A));
        return HS2_OK;
    });
}

hs2_status hs2_partial_s(int dim, const double* lambda, double* out) {
    if (dim < 1 || !lambda || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    Eigen::Map<Eigen::VectorXd>(out, dim) =
        hs2::lemma_partial_s(Eigen::Map<const Eigen::VectorXd>(lambda, dim));
    return HS2_OK;
}

namespace {

hs2_status classify_impl(const hs2_field* f, const hs2::Region& region, long samples,
                         uint64_t seed, hs2_convexity_report* out) {
    const hs2::ConvexityReport rep =
        hs2::classify(f->f, region, hs2::SamplePlan{samples, seed});
    out->samples = rep.samples;
    out->min_eigenvalue = rep.min_eigenvalue;
    out->min_trace = rep.min_trace;
    out->min_sigma2 = rep.min_sigma2;
    out->verdict = static_cast<int>(rep.verdict);
    return HS2_OK;
}

}  // namespace

hs2_status hs2_classify_box(const hs2_field* f, const double* lo, const double* hi,
                            long samples, uint64_t seed, hs2_convexity_report* out) {
    if (!f || !lo || !hi || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const int d = 2 * f->f.n + 1;
        hs2::Box box(Eigen::Map<const Eigen::VectorXd>(lo, d),
                     Eigen::Map<const Eigen::VectorXd>(hi, d));
        return classify_impl(f, box, samples, seed, out);
    });
}

hs2_status hs2_classify_ball(const hs2_field* f, const double* center, double radius,
                             long samples, uint64_t seed, hs2_convexity_report* out) {
    if (!f || !out) return fail(HS2_ERR_INVALID_ARG, "null argument");
    return guarded([&] {
        const hs2::Point c =
            center ? to_point(f->f.n, center) : hs2::Point::zero(f->f.n);
        return classify_impl(f, hs2::GaugeBall(c, radius), samples, seed, out);
    });
}

hs2_status hs2_run_campaign(const char* config_json, char** report_json, char** csv,
                            int* exit_code) {
    if (!config_json) return fail(HS2_ERR_INVALID_ARG, "null config");
    return guarded([&] {
        const hs2::CampaignOutcome outcome = hs2::run_campaign(config_json);
        if (exit_code) *exit_code = static_cast<int>(outcome.status);
        if (outcome.status == hs2::CampaignStatus::ConfigError) {
            g_last_error = outcome.message;
            return HS2_ERR_PARSE;
        }
        if (report_json) *report_json = dup_string(outcome.summary_json);
        if (csv) *csv = dup_string(outcome.csv);
        return HS2_OK;
    });
}

void hs2_string_free(char* s) { std::free(s); }

}  // extern "C"
