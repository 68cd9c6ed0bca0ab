#include "tfade/tfade.h"

#include "tfade/error.hpp"
#include "tfade/mesh.hpp"
#include "tfade/pde_solver.hpp"
#include "tfade/problems.hpp"
#include "tfade/soe.hpp"
#include "tfade/special.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct tfade_soe {
    tfade::SoeApprox soe;
};

struct tfade_run {
    tfade::Trajectory traj;
    std::optional<tfade::ManufacturedCase> mc;
};

namespace {

thread_local std::string last_error;

tfade_status to_status(tfade::ErrorCode code) {
    switch (code) {
    case tfade::ErrorCode::invalid_argument: return TFADE_ERR_INVALID_ARGUMENT;
    case tfade::ErrorCode::domain: return TFADE_ERR_DOMAIN;
    case tfade::ErrorCode::out_of_range: return TFADE_ERR_OUT_OF_RANGE;
    case tfade::ErrorCode::certification: return TFADE_ERR_CERTIFICATION;
    case tfade::ErrorCode::numerical: return TFADE_ERR_NUMERICAL;
    }
    return TFADE_ERR_INTERNAL;
}

// Runs body, mapping exceptions onto status codes.
template <typename Body>
tfade_status guarded(Body&& body) {
    try {
        body();
        last_error.clear();
        return TFADE_OK;
    } catch (const tfade::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TFADE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TFADE_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown exception";
        return TFADE_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    tfade::require(p != nullptr, std::string(what) + " must not be null");
}

tfade::SchemeConfig to_config(const tfade_config* c) {
    need(c, "config");
    tfade::require(c->method == TFADE_METHOD_FAST || c->method == TFADE_METHOD_DIRECT,
                   "unknown method");
    tfade::SchemeConfig out;
    out.alpha = c->alpha;
    out.lam = c->lambda;
    out.T = c->T;
    out.L = c->L;
    out.M = c->M;
    out.N = c->N;
    out.r = c->r;
    out.epsilon = c->epsilon;
    out.method = c->method == TFADE_METHOD_FAST ? tfade::Method::fast : tfade::Method::direct;
    return out;
}

tfade::Norm to_norm(tfade_norm norm) {
    tfade::require(norm == TFADE_NORM_L2 || norm == TFADE_NORM_H1, "unknown norm");
    return norm == TFADE_NORM_L2 ? tfade::Norm::l2 : tfade::Norm::h1;
}

}  // namespace

extern "C" {

const char* tfade_last_error(void) { return last_error.c_str(); }

const char* tfade_status_name(tfade_status status) {
    switch (status) {
    case TFADE_OK: return "ok";
    case TFADE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TFADE_ERR_DOMAIN: return "domain error";
    case TFADE_ERR_OUT_OF_RANGE: return "out of range";
    case TFADE_ERR_CERTIFICATION: return "certification failure";
    case TFADE_ERR_NUMERICAL: return "numerical failure";
    case TFADE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* tfade_version(void) { return "0.1.0"; }

tfade_status tfade_gamma(double x, double* out) {
    return guarded([&] {
        need(out, "out");
        *out = tfade::gamma_fn(x);
    });
}

tfade_status tfade_soe_build(double alpha, double epsilon, double t_min, double t_max,
                             tfade_soe** out) {
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        *out = new tfade_soe{tfade::build_soe(alpha, epsilon, t_min, t_max)};
    });
}

void tfade_soe_free(tfade_soe* soe) { delete soe; }

size_t tfade_soe_size(const tfade_soe* soe) { return soe ? soe->soe.n_exp() : 0; }

tfade_status tfade_soe_term(const tfade_soe* soe, size_t index, double* weight,
                            double* exponent) {
    return guarded([&] {
        need(soe, "soe");
        tfade::require(index < soe->soe.n_exp(), "term index out of range",
                       tfade::ErrorCode::out_of_range);
        const tfade::SoeTerm& term = soe->soe.terms()[index];
        if (weight) *weight = term.weight;
        if (exponent) *exponent = term.exponent;
    });
}

tfade_status tfade_soe_eval(const tfade_soe* soe, double t, double* out) {
    return guarded([&] {
        need(soe, "soe");
        need(out, "out");
        *out = soe->soe.eval(t);
    });
}

tfade_status tfade_soe_certify(const tfade_soe* soe, size_t n_samples,
                               tfade_soe_report* report) {
    return guarded([&] {
        need(soe, "soe");
        need(report, "report");
        const tfade::SoeReport r = tfade::certify_soe(soe->soe, n_samples);
        *report = {r.max_rel_error, r.argmax_t, r.abs_bound_at_t_min, r.abs_error_at_argmax};
    });
}

tfade_status tfade_soe_interval(double T, int N, double r, double* t_min, double* t_max) {
    return guarded([&] {
        need(t_min, "t_min");
        need(t_max, "t_max");
        const tfade::KernelInterval range = tfade::soe_interval(tfade::graded_mesh(T, N, r));
        *t_min = range.t_min;
        *t_max = range.t_max;
    });
}

tfade_config tfade_config_default(void) {
    const tfade::SchemeConfig d;
    return {d.alpha, d.lam, d.T, d.L, d.M, d.N, d.r, d.epsilon, TFADE_METHOD_FAST};
}

tfade_status tfade_run_case(const tfade_config* config, int case_id, double delta,
                            tfade_run** out) {
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        const tfade::SchemeConfig cfg = to_config(config);
        tfade::require(cfg.L == 1.0, "manufactured cases are posed on L = 1");
        tfade::ManufacturedCase mc = tfade::make_case(case_id, cfg.alpha, cfg.lam, delta);
        auto run = std::make_unique<tfade_run>();
        run->traj = tfade::run(cfg, mc.problem());
        run->mc = std::move(mc);
        *out = run.release();
    });
}

tfade_status tfade_run_custom(const tfade_config* config, tfade_initial_fn initial,
                              tfade_forcing_fn forcing, void* user, tfade_run** out) {
    return guarded([&] {
        need(out, "out");
        *out = nullptr;
        tfade::require(initial != nullptr && forcing != nullptr,
                       "initial and forcing callbacks are required");
        const tfade::SchemeConfig cfg = to_config(config);
        tfade::ProblemData problem{[=](double x) { return initial(x, user); },
                                   [=](double x, double t) { return forcing(x, t, user); }};
        auto run = std::make_unique<tfade_run>();
        run->traj = tfade::run(cfg, problem);
        *out = run.release();
    });
}

void tfade_run_free(tfade_run* run) { delete run; }

tfade_status tfade_run_info_get(const tfade_run* run, tfade_run_info* info) {
    return guarded([&] {
        need(run, "run");
        need(info, "info");
        info->wall_time = run->traj.wall_time;
        info->n_exp = run->traj.n_exp_used;
        info->n_snapshots = run->traj.snapshots.size();
        info->tau_power = run->traj.tau_power;
        info->interior_points = static_cast<size_t>(run->traj.config.M - 1);
    });
}

size_t tfade_run_warning_count(const tfade_run* run) {
    return run ? run->traj.warnings.size() : 0;
}

const char* tfade_run_warning(const tfade_run* run, size_t index) {
    if (!run || index >= run->traj.warnings.size()) return nullptr;
    return run->traj.warnings[index].c_str();
}

tfade_status tfade_run_snapshot(const tfade_run* run, size_t index, int* step, double* t,
                                const double** values) {
    return guarded([&] {
        need(run, "run");
        tfade::require(index < run->traj.snapshots.size(), "snapshot index out of range",
                       tfade::ErrorCode::out_of_range);
        const tfade::Snapshot& snap = run->traj.snapshots[index];
        if (step) *step = snap.step;
        if (t) *t = snap.t;
        if (values) *values = snap.values.data();
    });
}

tfade_status tfade_run_max_error(const tfade_run* run, tfade_norm norm, double* out) {
    return guarded([&] {
        need(run, "run");
        need(out, "out");
        tfade::require(run->mc.has_value(), "run has no exact solution attached");
        *out = tfade::max_error(run->traj, *run->mc, to_norm(norm));
    });
}

tfade_status tfade_run_exact(const tfade_run* run, double x, double t, double* out) {
    return guarded([&] {
        need(run, "run");
        need(out, "out");
        tfade::require(run->mc.has_value(), "run has no exact solution attached");
        *out = run->mc->exact(x, t);
    });
}

tfade_status tfade_stability_probe(const tfade_config* config, tfade_initial_fn phi_a,
                                   tfade_initial_fn phi_b, tfade_forcing_fn forcing,
                                   void* user, double* max_ratio) {
    return guarded([&] {
        need(max_ratio, "max_ratio");
        tfade::require(phi_a && phi_b && forcing, "callbacks are required");
        const tfade::StabilityReport r = tfade::stability_probe(
            to_config(config), [=](double x) { return phi_a(x, user); },
            [=](double x) { return phi_b(x, user); },
            [=](double x, double t) { return forcing(x, t, user); });
        *max_ratio = r.max_ratio;
    });
}

tfade_status tfade_l2_norm(const double* v, size_t n, double h, double* out) {
    return guarded([&] {
        need(out, "out");
        tfade::require(n == 0 || v != nullptr, "v must not be null");
        *out = tfade::l2_norm({v, n}, h);
    });
}

tfade_status tfade_h1_norm(const double* v, size_t n, double h, double* out) {
    return guarded([&] {
        need(out, "out");
        tfade::require(n == 0 || v != nullptr, "v must not be null");
        *out = tfade::h1_norm({v, n}, h);
    });
}

tfade_status tfade_order_table(const int* knobs, const double* errors, size_t n,
                               double* orders) {
    return guarded([&] {
        tfade::require(n == 0 || (knobs && errors && orders), "arrays must not be null");
        std::vector<tfade::KnobError> errs(n);
        for (size_t k = 0; k < n; ++k) errs[k] = {knobs[k], errors[k]};
        const std::vector<tfade::ErrorRow> rows = tfade::order_table(errs);
        for (size_t k = 0; k < n; ++k) {
            orders[k] = rows[k].order.value_or(std::numeric_limits<double>::quiet_NaN());
        }
    });
}

}  // extern "C"
