#include "tfade/tempered_ops.hpp"

#include "tfade/error.hpp"
#include "tfade/special.hpp"

#include <cmath>
#include <string>

namespace tfade {

namespace {

constexpr double kSeriesThreshold = 1.0;
constexpr int kSeriesTerms = 24;
constexpr int kDirectNodes = 32;

// (e^{-z} - 1 + z) / z^2 and (1 - e^{-z} - z e^{-z}) / z^2
void hat_moments(double z, double& f1, double& f2) {
    if (z < kSeriesThreshold) {
        double term = 0.5;  // z^k / (k+2)!
        f1 = 0.0;
        f2 = 0.0;
        double sign = 1.0;
        for (int k = 0; k < kSeriesTerms; ++k) {
            f1 += sign * term;
            f2 += sign * (k + 1) * term;
            term *= z / (k + 3);
            sign = -sign;
        }
        return;
    }
    const double em1 = std::expm1(-z);  // e^{-z} - 1
    const double z2 = z * z;
    f1 = (em1 + z) / z2;
    f2 = (-em1 - z * std::exp(-z)) / z2;
}

void check_step(const TemporalMesh& mesh, int n) {
    require(n >= 0 && n < mesh.steps(),
            "step index " + std::to_string(n) + " outside [0, N-1]", ErrorCode::out_of_range);
}

}  // namespace

LambdaWeights lambda_weights(double lam, double s, double tau_n, double tau_np1) {
    require(tau_n > 0.0 && tau_np1 > 0.0, "lambda_weights: step sizes must be positive");
    const double mu = lam + s;
    const double z = mu * tau_n;
    double f1 = 0.0;
    double f2 = 0.0;
    hat_moments(z, f1, f2);
    const double pref = std::exp(-0.5 * mu * tau_np1) * tau_n;
    return {pref * f1, pref * f2};
}

StepWeights local_step_weights(const TemporalMesh& mesh, double lam, double alpha, int n) {
    check_step(mesh, n);
    const double tau = mesh.tau(n + 1);
    const double tbar = mesh.tbar(n);
    StepWeights w;
    w.n = n;
    w.implicit_coeff = std::pow(tau, -alpha) / (std::pow(2.0, 1.0 - alpha) * gamma_fn(2.0 - alpha));
    w.explicit_coeff = (1.0 - 2.0 * alpha * std::exp(-0.5 * lam * tau)) * w.implicit_coeff;
    w.boundary = std::exp(-lam * tbar) * std::pow(tbar, -alpha);
    w.inv_gamma = 1.0 / gamma_fn(1.0 - alpha);
    return w;
}

StepWeights step_weights(const TemporalMesh& mesh, const SoeApprox& soe, double lam,
                         double alpha, int n) {
    StepWeights w = local_step_weights(mesh, lam, alpha, n);
    const std::size_t n_exp = soe.n_exp();
    w.lam1.assign(n_exp, 0.0);
    w.lam2.assign(n_exp, 0.0);
    w.decay.assign(n_exp, 0.0);
    if (n == 0) return w;
    const double tau_n = mesh.tau(n);
    const double tau_np1 = mesh.tau(n + 1);
    const double shift = 0.5 * (tau_n + tau_np1);
    for (std::size_t i = 0; i < n_exp; ++i) {
        const double s = soe.terms()[i].exponent;
        const LambdaWeights lw = lambda_weights(lam, s, tau_n, tau_np1);
        w.lam1[i] = lw.first;
        w.lam2[i] = lw.second;
        w.decay[i] = std::exp(-(lam + s) * shift);
    }
    return w;
}

HistoryState::HistoryState(std::size_t points, std::size_t n_exp)
    : points_(points), n_exp_(n_exp), values_(points * n_exp, 0.0) {}

void HistoryState::advance(std::span<const double> u_n, std::span<const double> u_nm1,
                           const StepWeights& w) {
    require(w.n == n_last_ + 1,
            "history_advance: expected step " + std::to_string(n_last_ + 1) + ", got " +
                std::to_string(w.n),
            ErrorCode::out_of_range);
    require(u_n.size() == points_ && u_nm1.size() == points_,
            "history_advance: vector length does not match the history state");
    require(w.lam1.size() == n_exp_, "history_advance: weights built for another SOE");
    const double* l1 = w.lam1.data();
    const double* l2 = w.lam2.data();
    const double* dk = w.decay.data();
    for (std::size_t j = 0; j < points_; ++j) {
        double* h = values_.data() + j * n_exp_;
        const double un = u_n[j];
        const double unm1 = u_nm1[j];
        for (std::size_t i = 0; i < n_exp_; ++i) {
            h[i] = dk[i] * h[i] + l1[i] * un + l2[i] * unm1;
        }
    }
    n_last_ = w.n;
}

ABCoeffs ab_coeffs(const TemporalMesh& mesh, const SoeApprox& soe, double lam, double alpha,
                   int n) {
    check_step(mesh, n);
    require(n >= 1, "ab_coeffs: n must be at least 1");
    ABCoeffs ab;
    ab.n = n;
    ab.a.assign(static_cast<std::size_t>(n), 0.0);
    ab.b.assign(static_cast<std::size_t>(n), 0.0);
    const double tbar_n = mesh.tbar(n);
    for (int j = 0; j < n; ++j) {
        const int k = n - j;
        const double gap = tbar_n - mesh.tbar(k);
        double a = 0.0;
        double b = 0.0;
        for (const SoeTerm& term : soe.terms()) {
            const LambdaWeights lw = lambda_weights(lam, term.exponent, mesh.tau(k), mesh.tau(k + 1));
            const double scale = term.weight * std::exp(-(lam + term.exponent) * gap);
            a += scale * lw.first;
            b += scale * lw.second;
        }
        ab.a[j] = alpha * a;
        ab.b[j] = alpha * b;
    }
    return ab;
}

double fast_caputo_explicit(std::span<const double> u_hist, std::span<const double> h_row,
                            const SoeApprox& soe, const StepWeights& w, double alpha) {
    require(!u_hist.empty(), "fast_caputo_explicit: empty history");
    require(h_row.size() == soe.n_exp(), "fast_caputo_explicit: accumulator row size mismatch");
    double hist = 0.0;
    const auto& terms = soe.terms();
    for (std::size_t i = 0; i < h_row.size(); ++i) hist += terms[i].weight * h_row[i];
    return w.explicit_coeff * u_hist.back() -
           w.inv_gamma * (alpha * hist + w.boundary * u_hist.front());
}

double fast_caputo_from_ab(std::span<const double> u_hist, const ABCoeffs& ab,
                           const StepWeights& w) {
    const int n = w.n;
    require(static_cast<int>(u_hist.size()) == n + 2, "fast_caputo_from_ab: need u^0..u^{n+1}");
    const auto at = [&](int l) { return u_hist[static_cast<std::size_t>(l)]; };
    double bracket = w.boundary * at(0);
    if (n >= 1) {
        require(ab.n == n, "fast_caputo_from_ab: coefficient step mismatch");
        bracket += ab.a[0] * at(n);
        for (int l = 1; l <= n - 1; ++l) bracket += (ab.a[n - l] + ab.b[n - 1 - l]) * at(l);
        bracket += ab.b[n - 1] * at(0);
    }
    return w.implicit_coeff * at(n + 1) + w.explicit_coeff * at(n) - w.inv_gamma * bracket;
}

std::vector<double> direct_history_weights(const TemporalMesh& mesh, double lam, double alpha,
                                           int n) {
    check_step(mesh, n);
    const QuadratureRule& rule = gauss_legendre_cached(kDirectNodes);
    const double tbar = mesh.tbar(n);
    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) {
        const double lo = mesh.t(k);
        const double hi = mesh.t(k + 1);
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double upper = 0.0;  // weight of u^{k+1}
        double lower = 0.0;  // weight of u^k
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double xi = rule.nodes[q];
            const double s = mid + half * xi;
            const double v = tbar - s;
            const double kern = rule.weights[q] * half * std::exp(-lam * v) * std::pow(v, -1.0 - alpha);
            upper += kern * 0.5 * (1.0 + xi);
            lower += kern * 0.5 * (1.0 - xi);
        }
        c[k + 1] += alpha * upper;
        c[k] += alpha * lower;
    }
    return c;
}

double direct_caputo_explicit(std::span<const double> u_hist, const TemporalMesh& mesh,
                              double lam, double alpha, int n) {
    require(static_cast<int>(u_hist.size()) >= n + 1, "direct_caputo_explicit: need u^0..u^n");
    const StepWeights w = local_step_weights(mesh, lam, alpha, n);
    const std::vector<double> c = direct_history_weights(mesh, lam, alpha, n);
    double hist = 0.0;
    for (int l = 0; l <= n; ++l) hist += c[l] * u_hist[l];
    return w.explicit_coeff * u_hist[n] - w.inv_gamma * (hist + w.boundary * u_hist[0]);
}

std::vector<double> fast_operator_series(const TemporalMesh& mesh, const SoeApprox& soe,
                                         double lam, double alpha,
                                         std::span<const double> samples) {
    const int steps = mesh.steps();
    require(static_cast<int>(samples.size()) == steps + 1, "fast_operator_series: need N+1 samples");
    HistoryState history(1, soe.n_exp());
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) {
        const StepWeights w = step_weights(mesh, soe, lam, alpha, n);
        if (n >= 1) history.advance(samples.subspan(n, 1), samples.subspan(n - 1, 1), w);
        const double e = fast_caputo_explicit(samples.first(n + 1), history.row(0), soe, w, alpha);
        out[n] = w.implicit_coeff * samples[n + 1] + e;
    }
    return out;
}

std::vector<double> direct_operator_series(const TemporalMesh& mesh, double lam, double alpha,
                                           std::span<const double> samples) {
    const int steps = mesh.steps();
    require(static_cast<int>(samples.size()) == steps + 1, "direct_operator_series: need N+1 samples");
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int n = 0; n < steps; ++n) {
        const StepWeights w = local_step_weights(mesh, lam, alpha, n);
        out[n] = w.implicit_coeff * samples[n + 1] +
                 direct_caputo_explicit(samples.first(n + 1), mesh, lam, alpha, n);
    }
    return out;
}

double oracle_caputo(const ScalarFn& u, const ScalarFn& du, double t, double alpha, double lam) {
    require(t > 0.0, "oracle_caputo: t must be positive");
    require(alpha > 0.0 && alpha < 1.0, "oracle_caputo: alpha must lie in (0, 1)");
    // (e^{lam s} u)' e^{-lam t} (t - s)^{-alpha}; the exponential is folded in
    // as e^{-lam (t - s)} to avoid overflow for large lam t.
    const auto integrand = [&](double s, double v) {
        return std::exp(-lam * v) * (lam * u(s) + du(s)) * std::pow(v, -alpha);
    };
    const QuadratureRule& rule = gauss_legendre_cached(24);
    const auto panel = [&](double lo, double hi, auto&& f) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
        return acc * half;
    };
    // 100 dyadic panels towards each endpoint.
    constexpr int kPanelsPerSide = 100;
    const double mid = 0.5 * t;
    double total = 0.0;
    for (int k = 0; k < kPanelsPerSide; ++k) {
        // [0, t/2]: panels [mid 2^{-k-1}, mid 2^{-k}]; the innermost one reaches 0.
        const double hi = std::ldexp(mid, -k);
        const double lo = (k == kPanelsPerSide - 1) ? 0.0 : std::ldexp(mid, -k - 1);
        total += panel(lo, hi, [&](double s) { return integrand(s, t - s); });
        // [t/2, t] in the reflected variable v = t - s.
        total += panel(lo, hi, [&](double v) { return integrand(t - v, v); });
    }
    return total / gamma_fn(1.0 - alpha);
}

}  // namespace tfade
