#pragma once

#include <cstddef>
#include <vector>

namespace tfade {

struct SoeTerm {
    double weight;    // omega_l > 0
    double exponent;  // s_l >= 0
};

/// Exponential-sum surrogate of the kernel t^(-1-alpha) on [t_min, t_max],
/// certified to a relative accuracy epsilon. Immutable once built.
class SoeApprox {
public:
    SoeApprox(double alpha, double epsilon, double t_min, double t_max,
              std::vector<SoeTerm> terms);

    double alpha() const noexcept { return alpha_; }
    double epsilon() const noexcept { return epsilon_; }
    double t_min() const noexcept { return t_min_; }
    double t_max() const noexcept { return t_max_; }
    const std::vector<SoeTerm>& terms() const noexcept { return terms_; }
    std::size_t n_exp() const noexcept { return terms_.size(); }

    /// Sum of omega_l exp(-s_l t). Throws out_of_range outside [t_min, t_max].
    double eval(double t) const;

    /// Same sum with no range check; for tests probing the uncertified region.
    double eval_unchecked(double t) const noexcept;

private:
    double alpha_;
    double epsilon_;
    double t_min_;
    double t_max_;
    std::vector<SoeTerm> terms_;
};

struct SoeBuildOptions {
    int node_cap = 64;     // per-panel Gauss-Legendre node cap
    bool certify = true;   // throw on failed final certification
};

/// Dyadic Gauss-Legendre discretisation of the Laplace representation
///   t^(-beta) = 1/Gamma(beta) * int_0^inf s^(beta-1) exp(-t s) ds,  beta = 1 + alpha.
///
/// Panels [2^j, 2^(j+1)] cover s-space between a lower cut (dropped head
/// integral below epsilon/4 relative at t_max) and an upper cut (dropped tail
/// below epsilon/4 relative at t_min). Each panel starts with 8 nodes and
/// doubles until its contribution on the certification grid changes by less
/// than epsilon/(4 * panels). Terms that stay below epsilon/(4 n_exp) of the
/// smallest kernel value over the whole interval are pruned.
SoeApprox build_soe(double alpha, double epsilon, double t_min, double t_max,
                    const SoeBuildOptions& options = {});

struct SoeReport {
    double max_rel_error = 0.0;
    double argmax_t = 0.0;
    /// Absolute error bound implied by the relative one at t_min:
    /// epsilon * t_min^(-1-alpha).
    double abs_bound_at_t_min = 0.0;
    /// Observed absolute error at argmax_t.
    double abs_error_at_argmax = 0.0;
};

/// Relative error of soe against t^(-1-alpha) on n_samples log-spaced points
/// spanning [t_min, t_max] (endpoints included). n_samples >= 100.
SoeReport certify_soe(const SoeApprox& soe, std::size_t n_samples);

}  // namespace tfade
