#include "tfade/soe.hpp"

#include "tfade/error.hpp"
#include "tfade/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tfade {

namespace {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    std::vector<double> t(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    t.front() = lo;
    t.back() = hi;
    return t;
}

std::size_t samples_for(double lo, double hi, std::size_t per_decade, std::size_t floor) {
    const double decades = std::log10(hi / lo);
    return std::max(floor, static_cast<std::size_t>(std::ceil(decades * per_decade)) + 2);
}

// Gauss-Legendre nodes on [lo, 2 lo] mapped to SOE terms.
std::vector<SoeTerm> panel_terms(double lo, int nodes, double beta, double gamma_beta) {
    const QuadratureRule& rule = gauss_legendre_cached(nodes);
    const double half = 0.5 * lo;
    const double mid = 1.5 * lo;
    std::vector<SoeTerm> terms(rule.nodes.size());
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double s = mid + half * rule.nodes[k];
        terms[k] = {half * rule.weights[k] * std::pow(s, beta - 1.0) / gamma_beta, s};
    }
    return terms;
}

double partial_sum(const std::vector<SoeTerm>& terms, double t) {
    double acc = 0.0;
    for (const auto& term : terms) acc += term.weight * std::exp(-term.exponent * t);
    return acc;
}

// Smallest x >= ln(4/eps) with Gamma(beta, x) / Gamma(beta) <= eps/4, using
// Gamma(beta, x) <= x^(beta-1) e^(-x) / (1 - (beta-1)/x) for 1 < beta < 2.
double upper_tail_cut(double beta, double gamma_beta, double eps) {
    double x = std::max(std::log(4.0 / eps), 2.0);
    for (;;) {
        const double bound = std::pow(x, beta - 1.0) * std::exp(-x) /
                             ((1.0 - (beta - 1.0) / x) * gamma_beta);
        if (bound <= 0.25 * eps) return x;
        x += 0.25;
    }
}

}  // namespace

SoeApprox::SoeApprox(double alpha, double epsilon, double t_min, double t_max,
                     std::vector<SoeTerm> terms)
    : alpha_(alpha), epsilon_(epsilon), t_min_(t_min), t_max_(t_max), terms_(std::move(terms)) {
    require(!terms_.empty(), "SoeApprox: at least one term required");
    for (std::size_t l = 0; l < terms_.size(); ++l) {
        require(terms_[l].weight > 0.0, "SoeApprox: weights must be positive");
        require(terms_[l].exponent >= 0.0, "SoeApprox: exponents must be nonnegative");
        if (l > 0) {
            require(terms_[l].exponent > terms_[l - 1].exponent,
                    "SoeApprox: exponents must be strictly increasing");
        }
    }
}

double SoeApprox::eval_unchecked(double t) const noexcept { return partial_sum(terms_, t); }

double SoeApprox::eval(double t) const {
    const double slack = 1e-12;
    if (!(t >= t_min_ * (1.0 - slack) && t <= t_max_ * (1.0 + slack))) {
        fail(ErrorCode::out_of_range, "eval_soe: t = " + std::to_string(t) +
                                          " outside certified interval [" +
                                          std::to_string(t_min_) + ", " +
                                          std::to_string(t_max_) + "]");
    }
    return eval_unchecked(t);
}

SoeApprox build_soe(double alpha, double epsilon, double t_min, double t_max,
                    const SoeBuildOptions& options) {
    require(alpha > 0.0 && alpha < 1.0, "build_soe: alpha must lie in (0, 1)");
    require(epsilon >= 1e-14, "build_soe: epsilon below 1e-14 cannot be certified in double precision");
    require(epsilon < 1e-2, "build_soe: epsilon must be below 1e-2");
    require(t_min > 0.0, "build_soe: t_min must be positive");
    require(t_min < t_max, "build_soe: t_min must be smaller than t_max");
    require(options.node_cap >= 8 && options.node_cap <= 64,
            "build_soe: node cap must lie in [8, 64]");

    const double beta = 1.0 + alpha;
    const double gamma_beta = gamma_fn(beta);

    // Head: int_0^a s^(beta-1) e^(-ts) ds <= a^beta / beta, worst at t_max.
    const double head = std::pow(beta * 0.25 * epsilon * gamma_beta, 1.0 / beta) / t_max;
    const int j_min = static_cast<int>(std::floor(std::log2(head)));
    // Tail: need 2^(j_max+1) * t_min beyond the incomplete-gamma cut.
    const double tail = upper_tail_cut(beta, gamma_beta, epsilon) / t_min;
    const int j_max = static_cast<int>(std::ceil(std::log2(tail))) - 1;
    const int panels = j_max - j_min + 1;

    const std::vector<double> grid =
        log_grid(t_min, t_max, samples_for(t_min, t_max, 48, 96));
    std::vector<double> kernel(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) kernel[k] = std::pow(grid[k], -beta);

    const double panel_tol = epsilon / (4.0 * panels);
    std::vector<SoeTerm> terms;
    for (int j = j_min; j <= j_max; ++j) {
        const double lo = std::ldexp(1.0, j);
        int nodes = 8;
        std::vector<SoeTerm> coarse = panel_terms(lo, nodes, beta, gamma_beta);
        while (nodes < options.node_cap) {
            const std::vector<SoeTerm> fine = panel_terms(lo, 2 * nodes, beta, gamma_beta);
            double change = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double d = std::abs(partial_sum(coarse, grid[k]) - partial_sum(fine, grid[k]));
                change = std::max(change, d / kernel[k]);
            }
            if (change <= panel_tol) break;
            nodes *= 2;
            coarse = fine;
        }
        terms.insert(terms.end(), coarse.begin(), coarse.end());
    }

    // Prune terms that never matter on [t_min, t_max].
    const double floor_value = 0.25 * epsilon * std::pow(t_max, -beta) / static_cast<double>(terms.size());
    std::erase_if(terms, [&](const SoeTerm& term) {
        return term.weight * std::exp(-term.exponent * t_min) < floor_value;
    });
    require(!terms.empty(), "build_soe: every term was pruned", ErrorCode::certification);

    SoeApprox soe(alpha, epsilon, t_min, t_max, std::move(terms));
    if (options.certify) {
        const SoeReport report = certify_soe(soe, samples_for(t_min, t_max, 200, 2000));
        if (!(report.max_rel_error <= epsilon)) {
            fail(ErrorCode::certification,
                 "build_soe: certification failed, max relative error " +
                     std::to_string(report.max_rel_error) + " at t = " +
                     std::to_string(report.argmax_t));
        }
    }
    return soe;
}

SoeReport certify_soe(const SoeApprox& soe, std::size_t n_samples) {
    require(n_samples >= 100, "certify_soe: at least 100 samples required");
    const double beta = 1.0 + soe.alpha();
    SoeReport report;
    report.abs_bound_at_t_min = soe.epsilon() * std::pow(soe.t_min(), -beta);
    for (double t : log_grid(soe.t_min(), soe.t_max(), n_samples)) {
        const double exact = std::pow(t, -beta);
        const double abs_err = std::abs(soe.eval_unchecked(t) - exact);
        const double rel = abs_err / exact;
        if (report.argmax_t == 0.0 || !(rel <= report.max_rel_error)) {
            report.max_rel_error = rel;
            report.argmax_t = t;
            report.abs_error_at_argmax = abs_err;
        }
    }
    return report;
}

}  // namespace tfade
