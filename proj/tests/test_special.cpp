#include <gtest/gtest.h>

#include "tfade/error.hpp"
#include "tfade/special.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace {

// Stirling series for log Gamma after shifting the argument past 30,
// in long double.
long double gamma_series(long double x) {
    long double shift = 1.0L;
    while (x < 30.0L) {
        shift *= x;
        x += 1.0L;
    }
    const long double inv = 1.0L / x;
    const long double inv2 = inv * inv;
    const long double b[] = {1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680, 1.0L / 1188,
                             -691.0L / 360360, 1.0L / 156};
    long double corr = 0.0L;
    long double p = inv;
    for (long double c : b) {
        corr += c * p;
        p *= inv2;
    }
    const long double lg = (x - 0.5L) * std::log(x) - x + 0.5L * std::log(2.0L * M_PIl) + corr;
    return std::exp(lg) / shift;
}

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(Gamma, KnownValues) {
    EXPECT_NEAR(tfade::gamma_fn(1.0), 1.0, 1e-15);
    EXPECT_LT(rel(tfade::gamma_fn(0.5), 1.7724538509055160), 1e-13);
    EXPECT_LT(rel(tfade::gamma_fn(5.0), 24.0), 1e-13);
    EXPECT_LT(rel(tfade::gamma_fn(1.5), 0.5 * std::sqrt(M_PI)), 1e-13);
}

TEST(Gamma, MatchesSeriesOracle) {
    EXPECT_LT(rel(tfade::gamma_fn(2.8), static_cast<double>(gamma_series(2.8L))), 1e-12);
    for (double x = 0.01; x < 12.0; x += 0.037) {
        const double oracle = static_cast<double>(gamma_series(static_cast<long double>(x)));
        EXPECT_LT(rel(tfade::gamma_fn(x), oracle), 1e-13) << "x = " << x;
    }
}

TEST(Gamma, AgreesWithLibm) {
    for (double x : {0.25, 0.75, 1.25, 1.75, 2.3, 3.3, 0.001, 7.5}) {
        EXPECT_LT(rel(tfade::gamma_fn(x), std::tgamma(x)), 1e-13) << "x = " << x;
    }
}

TEST(Gamma, RejectsNonPositive) {
    for (double x : {0.0, -1.0, -0.5, std::numeric_limits<double>::quiet_NaN()}) {
        try {
            tfade::gamma_fn(x);
            FAIL() << "accepted x = " << x;
        } catch (const tfade::Error& e) {
            EXPECT_EQ(e.code(), tfade::ErrorCode::domain);
        }
    }
}

TEST(GaussLegendre, LowOrders) {
    const auto one = tfade::gauss_legendre(1);
    ASSERT_EQ(one.nodes.size(), 1u);
    EXPECT_NEAR(one.nodes[0], 0.0, 1e-15);
    EXPECT_NEAR(one.weights[0], 2.0, 1e-15);

    const auto two = tfade::gauss_legendre(2);
    ASSERT_EQ(two.nodes.size(), 2u);
    EXPECT_NEAR(two.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(two.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(two.weights[0], 1.0, 1e-15);
    EXPECT_NEAR(two.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, WeightSumAndSymmetry) {
    for (int n = 1; n <= 64; ++n) {
        const auto q = tfade::gauss_legendre(n);
        ASSERT_EQ(q.order, n);
        const double sum = std::accumulate(q.weights.begin(), q.weights.end(), 0.0);
        EXPECT_NEAR(sum, 2.0, 1e-13) << "order " << n;
        for (int i = 0; i < n; ++i) {
            EXPECT_NEAR(q.nodes[i], -q.nodes[n - 1 - i], 1e-13);
            EXPECT_GT(q.weights[i], 0.0);
            EXPECT_GT(q.nodes[i], -1.0);
            EXPECT_LT(q.nodes[i], 1.0);
            if (i > 0) EXPECT_LT(q.nodes[i - 1], q.nodes[i]);
        }
    }
}

TEST(GaussLegendre, ExactForDegree2nMinus1) {
    for (int n : {3, 8, 17, 32, 64}) {
        const auto q = tfade::gauss_legendre(n);
        for (int d = 0; d <= 2 * n - 1; d += std::max(1, n / 4)) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += q.weights[i] * std::pow(q.nodes[i], d);
            const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
            EXPECT_NEAR(s, exact, 1e-13) << "n = " << n << " d = " << d;
        }
    }
}

TEST(GaussLegendre, RejectsBadOrder) {
    EXPECT_THROW(tfade::gauss_legendre(0), tfade::Error);
    EXPECT_THROW(tfade::gauss_legendre(65), tfade::Error);
}

TEST(GaussLegendre, CachedMatchesFresh) {
    const auto& a = tfade::gauss_legendre_cached(24);
    const auto& b = tfade::gauss_legendre_cached(24);
    EXPECT_EQ(&a, &b);
    const auto fresh = tfade::gauss_legendre(24);
    EXPECT_EQ(a.nodes, fresh.nodes);
    EXPECT_EQ(a.weights, fresh.weights);
}
