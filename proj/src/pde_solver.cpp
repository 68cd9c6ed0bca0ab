#include "tfade/pde_solver.hpp"

#include "tfade/error.hpp"
#include "tfade/problems.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace tfade {

const char* method_name(Method method) noexcept {
    return method == Method::fast ? "fast" : "direct";
}

void validate(const SchemeConfig& c) {
    require(c.alpha > 0.0 && c.alpha < 1.0, "alpha must lie in (0, 1)");
    require(c.lam >= 0.0 && std::isfinite(c.lam), "lambda must be nonnegative");
    require(c.T > 0.0 && std::isfinite(c.T), "T must be positive");
    require(c.L > 0.0 && std::isfinite(c.L), "L must be positive");
    require(c.M >= 2, "M must be at least 2");
    require(c.N >= 2, "N must be at least 2");
    require(c.r >= 1.0, "r must be at least 1");
    require(c.epsilon > 0.0, "epsilon must be positive");
}

double max_tau_power(const TemporalMesh& mesh, double alpha) {
    double worst = 0.0;
    for (int n = 1; n <= mesh.steps(); ++n) {
        worst = std::max(worst, std::pow(mesh.tau(n), 2.0 - 2.0 * alpha));
    }
    return worst;
}

TridiagonalSystem assemble_step(std::span<const double> u_n, std::span<const double> explicit_part,
                                std::span<const double> f_bar, double implicit_coeff,
                                double tau_np1, double h) {
    const std::size_t m = u_n.size();
    require(m >= 1, "assemble_step: no interior points");
    require(explicit_part.size() == m && f_bar.size() == m, "assemble_step: size mismatch");
    const double inv_h2 = 1.0 / (h * h);
    const double adv = 1.0 / (4.0 * h);
    const double inv_tau = 1.0 / tau_np1;

    TridiagonalSystem sys;
    sys.lower.assign(m, -0.5 * inv_h2 - adv);
    sys.diag.assign(m, inv_tau + implicit_coeff + inv_h2);
    sys.upper.assign(m, -0.5 * inv_h2 + adv);
    sys.lower[0] = 0.0;
    sys.upper[m - 1] = 0.0;
    sys.rhs.resize(m);

    const double c_up = 0.5 * inv_h2 - adv;
    const double c_mid = inv_tau - inv_h2;
    const double c_lo = 0.5 * inv_h2 + adv;
    for (std::size_t j = 0; j < m; ++j) {
        const double right = (j + 1 < m) ? u_n[j + 1] : 0.0;
        const double left = (j > 0) ? u_n[j - 1] : 0.0;
        sys.rhs[j] = c_up * right + c_mid * u_n[j] + c_lo * left - explicit_part[j] + f_bar[j];
    }
    return sys;
}

std::vector<double> thomas_solve(const TridiagonalSystem& sys, int step) {
    const std::size_t m = sys.size();
    require(sys.lower.size() == m && sys.upper.size() == m && sys.rhs.size() == m,
            "thomas_solve: inconsistent system");
    const auto breakdown = [&](std::size_t row) {
        std::ostringstream msg;
        msg << "thomas_solve: pivot breakdown at row " << row;
        if (step >= 0) msg << " (step " << step << ")";
        fail(ErrorCode::numerical, msg.str());
    };
    std::vector<double> c(m);
    std::vector<double> x(m);
    double pivot = sys.diag[0];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) breakdown(0);
    c[0] = sys.upper[0] / pivot;
    x[0] = sys.rhs[0] / pivot;
    for (std::size_t j = 1; j < m; ++j) {
        pivot = sys.diag[j] - sys.lower[j] * c[j - 1];
        if (!(std::abs(pivot) > 1e-300) || !std::isfinite(pivot)) breakdown(j);
        c[j] = sys.upper[j] / pivot;
        x[j] = (sys.rhs[j] - sys.lower[j] * x[j - 1]) / pivot;
    }
    for (std::size_t j = m - 1; j-- > 0;) x[j] -= c[j] * x[j + 1];
    return x;
}

namespace {

int pick_stride(const SchemeConfig& c, const RunOptions& options) {
    if (options.stride > 0) return options.stride;
    const auto entries = static_cast<std::size_t>(c.M - 1) * static_cast<std::size_t>(c.N + 1);
    if (entries <= options.max_entries) return 1;
    const std::size_t levels = std::max<std::size_t>(2, options.max_entries / static_cast<std::size_t>(c.M - 1));
    return static_cast<int>((static_cast<std::size_t>(c.N) + levels - 1) / levels);
}

void check_finite(std::span<const double> v, int step) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!std::isfinite(v[j])) {
            fail(ErrorCode::numerical, "non-finite value at interior point " + std::to_string(j + 1) +
                                           " after step " + std::to_string(step));
        }
    }
}

}  // namespace

Trajectory run(const SchemeConfig& config, const ProblemData& problem, const RunOptions& options) {
    validate(config);
    require(static_cast<bool>(problem.initial) && static_cast<bool>(problem.forcing),
            "run: initial data and forcing are required");
    const auto started = std::chrono::steady_clock::now();

    const TemporalMesh mesh = graded_mesh(config.T, config.N, config.r);
    const SpatialGrid grid = uniform_grid(config.L, config.M);
    const std::size_t m = static_cast<std::size_t>(config.M - 1);
    const double alpha = config.alpha;
    const double lam = config.lam;

    Trajectory traj;
    traj.config = config;
    traj.grid = grid;
    traj.tau_power = max_tau_power(mesh, alpha);
    if (traj.tau_power >= 1.0 / 3.0) {
        std::ostringstream msg;
        msg << "max tau^(2-2alpha) = " << traj.tau_power
            << " >= 1/3; the sufficient stability condition does not hold";
        traj.warnings.push_back(msg.str());
    }
    const int stride = pick_stride(config, options);

    std::vector<double> u0(m);
    for (std::size_t j = 0; j < m; ++j) u0[j] = problem.initial(grid.x[j + 1]);
    check_finite(u0, 0);
    traj.snapshots.push_back({0, 0.0, u0});

    std::vector<double> explicit_part(m);
    std::vector<double> f_bar(m);

    const auto evaluate_forcing = [&](int n) {
        const double tb = mesh.tbar(n);
        for (std::size_t j = 0; j < m; ++j) f_bar[j] = problem.forcing(grid.x[j + 1], tb);
    };
    const auto keep = [&](int step, const std::vector<double>& values) {
        if (step % stride == 0 || step == config.N) {
            traj.snapshots.push_back({step, mesh.t(step), values});
        }
    };

    if (config.method == Method::fast) {
        const KernelInterval range = soe_interval(mesh);
        const SoeApprox soe = build_soe(alpha, config.epsilon, range.t_min, range.t_max);
        traj.n_exp_used = soe.n_exp();
        const std::size_t n_exp = soe.n_exp();
        std::vector<double> weights(n_exp);
        for (std::size_t i = 0; i < n_exp; ++i) weights[i] = soe.terms()[i].weight;

        HistoryState history(m, n_exp);
        std::vector<double> prev = u0;
        std::vector<double> cur = u0;
        for (int n = 0; n < config.N; ++n) {
            const StepWeights w = step_weights(mesh, soe, lam, alpha, n);
            if (n >= 1) history.advance(cur, prev, w);
            for (std::size_t j = 0; j < m; ++j) {
                const std::span<const double> row = history.row(j);
                double hist = 0.0;
                for (std::size_t i = 0; i < n_exp; ++i) hist += weights[i] * row[i];
                explicit_part[j] = w.explicit_coeff * cur[j] - w.inv_gamma * (alpha * hist + w.boundary * u0[j]);
            }
            evaluate_forcing(n);
            const TridiagonalSystem sys =
                assemble_step(cur, explicit_part, f_bar, w.implicit_coeff, mesh.tau(n + 1), grid.h);
            std::vector<double> next = thomas_solve(sys, n);
            check_finite(next, n + 1);
            prev = std::move(cur);
            cur = std::move(next);
            keep(n + 1, cur);
        }
    } else {
        std::vector<std::vector<double>> levels;
        levels.reserve(static_cast<std::size_t>(config.N) + 1);
        levels.push_back(u0);
        for (int n = 0; n < config.N; ++n) {
            const StepWeights w = local_step_weights(mesh, lam, alpha, n);
            const std::vector<double> c = direct_history_weights(mesh, lam, alpha, n);
            const std::vector<double>& cur = levels.back();
            for (std::size_t j = 0; j < m; ++j) explicit_part[j] = w.explicit_coeff * cur[j];
            std::vector<double> hist(m, 0.0);
            for (int l = 0; l <= n; ++l) {
                const double cl = c[l];
                const std::vector<double>& level = levels[l];
                for (std::size_t j = 0; j < m; ++j) hist[j] += cl * level[j];
            }
            for (std::size_t j = 0; j < m; ++j) {
                explicit_part[j] -= w.inv_gamma * (hist[j] + w.boundary * u0[j]);
            }
            evaluate_forcing(n);
            const TridiagonalSystem sys =
                assemble_step(cur, explicit_part, f_bar, w.implicit_coeff, mesh.tau(n + 1), grid.h);
            std::vector<double> next = thomas_solve(sys, n);
            check_finite(next, n + 1);
            levels.push_back(std::move(next));
            keep(n + 1, levels.back());
        }
    }

    traj.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return traj;
}

StabilityReport stability_probe(const SchemeConfig& config,
                                const std::function<double(double)>& phi_a,
                                const std::function<double(double)>& phi_b,
                                const std::function<double(double, double)>& forcing) {
    RunOptions all_levels;
    all_levels.stride = 1;
    const Trajectory a = run(config, {phi_a, forcing}, all_levels);
    const Trajectory b = run(config, {phi_b, forcing}, all_levels);
    const double h = a.grid.h;
    const auto gap = [&](std::size_t k) {
        std::vector<double> d(a.snapshots[k].values.size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = a.snapshots[k].values[j] - b.snapshots[k].values[j];
        return l2_norm(d, h);
    };
    const double initial = gap(0);
    require(initial > 0.0, "stability_probe: initial data must differ");
    StabilityReport report;
    for (std::size_t k = 1; k < a.snapshots.size(); ++k) {
        const double ratio = gap(k) / initial;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.argmax_step = a.snapshots[k].step;
        }
    }
    return report;
}

}  // namespace tfade
