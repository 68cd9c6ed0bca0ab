#pragma once

#include "tfade/mesh.hpp"
#include "tfade/soe.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tfade {

// Discrete tempered Caputo operators evaluated at the half level tbar_n:
//
//   D u(tbar_n) ~= B u^{n+1} + E_n,
//
// where B = tau_{n+1}^(-alpha) / (2^(1-alpha) Gamma(2-alpha)) is shared by
// both operators and E_n collects everything known before step n+1. The fast
// operator builds the history part of E_n from per-exponent accumulators, the
// direct one from exact-kernel quadrature over every past interval.

struct LambdaWeights {
    double first;   // multiplies u(t_n)
    double second;  // multiplies u(t_{n-1})
};

/// Moments of exp(-mu (tau_{n+1}/2 + tau_n - v)) against the two linear hat
/// functions on an interval of length tau_n, mu = lam + s. Small mu tau_n is
/// handled by series; mu = 0 gives the trapezoid weights tau_n / 2.
LambdaWeights lambda_weights(double lam, double s, double tau_n, double tau_np1);

/// Per-step constants shared by every spatial point.
struct StepWeights {
    int n = 0;
    std::vector<double> lam1;   // per exponent; zero at n = 0
    std::vector<double> lam2;
    std::vector<double> decay;  // exp(-(lam+s_i)(tau_n + tau_{n+1})/2); zero at n = 0
    double implicit_coeff = 0.0;  // B
    double explicit_coeff = 0.0;  // (1 - 2 alpha exp(-lam tau_{n+1}/2)) B
    double boundary = 0.0;        // exp(-lam tbar_n) tbar_n^(-alpha)
    double inv_gamma = 0.0;       // 1 / Gamma(1 - alpha)
};

/// Local coefficients only (no SOE vectors); what the direct operator needs.
StepWeights local_step_weights(const TemporalMesh& mesh, double lam, double alpha, int n);

StepWeights step_weights(const TemporalMesh& mesh, const SoeApprox& soe, double lam,
                         double alpha, int n);

/// Accumulators U_his,i at each interior spatial point, referenced to tbar_n
/// after the update for step n. Owned by a single run.
class HistoryState {
public:
    HistoryState(std::size_t points, std::size_t n_exp);

    std::size_t points() const noexcept { return points_; }
    std::size_t n_exp() const noexcept { return n_exp_; }
    int n_last() const noexcept { return n_last_; }

    std::span<const double> row(std::size_t j) const {
        return {values_.data() + j * n_exp_, n_exp_};
    }

    /// H <- decay H + lam1 u_n + lam2 u_{n-1}; requires w.n == n_last() + 1.
    void advance(std::span<const double> u_n, std::span<const double> u_nm1,
                 const StepWeights& w);

private:
    std::size_t points_;
    std::size_t n_exp_;
    int n_last_ = 0;
    std::vector<double> values_;  // row-major [point][exponent]
};

inline void history_advance(HistoryState& state, std::span<const double> u_n,
                            std::span<const double> u_nm1, const StepWeights& w) {
    state.advance(u_n, u_nm1, w);
}

/// Coefficients a_{j,n}, b_{j,n}, j = 0..n-1, of the expanded fast operator.
struct ABCoeffs {
    int n = 0;
    std::vector<double> a;
    std::vector<double> b;
};

ABCoeffs ab_coeffs(const TemporalMesh& mesh, const SoeApprox& soe, double lam, double alpha,
                   int n);

/// Explicit part E of the fast operator at one spatial point. u_hist holds
/// u^0..u^n (only the first and last entries are read); h_row holds the
/// accumulators after the step-n update.
double fast_caputo_explicit(std::span<const double> u_hist, std::span<const double> h_row,
                            const SoeApprox& soe, const StepWeights& w, double alpha);

/// Full fast operator value from the expanded a/b form; u_hist holds u^0..u^{n+1}.
double fast_caputo_from_ab(std::span<const double> u_hist, const ABCoeffs& ab,
                           const StepWeights& w);

/// Weights c_l, l = 0..n, with sum_l c_l u^l equal to
/// alpha * int_0^{t_n} exp(-lam (tbar_n - s)) (tbar_n - s)^(-1-alpha) (L u)(s) ds,
/// L the piecewise-linear interpolant; 32-node Gauss-Legendre per interval.
std::vector<double> direct_history_weights(const TemporalMesh& mesh, double lam, double alpha,
                                           int n);

/// Explicit part E of the direct operator; u_hist holds u^0..u^n.
double direct_caputo_explicit(std::span<const double> u_hist, const TemporalMesh& mesh,
                              double lam, double alpha, int n);

/// Fast operator applied to a scalar time series u^0..u^N; returns the values
/// at tbar_0..tbar_{N-1}.
std::vector<double> fast_operator_series(const TemporalMesh& mesh, const SoeApprox& soe,
                                         double lam, double alpha,
                                         std::span<const double> samples);

/// Direct operator applied to a scalar time series, same layout.
std::vector<double> direct_operator_series(const TemporalMesh& mesh, double lam, double alpha,
                                           std::span<const double> samples);

using ScalarFn = std::function<double(double)>;

/// High-accuracy quadrature of the continuous tempered Caputo derivative
///   exp(-lam t)/Gamma(1-alpha) int_0^t (t-s)^(-alpha) (exp(lam s) u(s))' ds
/// using geometrically graded panels clustered at both endpoints.
double oracle_caputo(const ScalarFn& u, const ScalarFn& du, double t, double alpha, double lam);

}  // namespace tfade
