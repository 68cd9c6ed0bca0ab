#pragma once

#include <vector>

namespace tfade {

/// Gamma function for x > 0 (Lanczos, g = 7, nine coefficients; reflection
/// below 1/2). Relative error is below 1e-13 on the positive axis.
double gamma_fn(double x);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive, same length as nodes
    int order = 0;
};

/// Nodes by Newton iteration on P_n from Chebyshev starting guesses.
/// Valid for 1 <= order <= 64.
QuadratureRule gauss_legendre(int order);

/// Cached rule; the returned reference stays valid for the program lifetime.
const QuadratureRule& gauss_legendre_cached(int order);

}  // namespace tfade
