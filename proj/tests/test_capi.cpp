#include <gtest/gtest.h>

#include "tfade/tfade.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

double phi_shift(double x, void* user) {
    const double amp = *static_cast<double*>(user);
    return x * x * (1 - x) * (1 - x) + amp * std::sin(M_PI * x);
}

double phi_plain(double x, void*) { return x * x * (1 - x) * (1 - x); }

double no_forcing(double, double, void*) { return 0.0; }

}  // namespace

TEST(CApi, StatusNamesAndVersion) {
    EXPECT_STREQ(tfade_status_name(TFADE_OK), "ok");
    EXPECT_STREQ(tfade_status_name(TFADE_ERR_CERTIFICATION), "certification failure");
    EXPECT_STREQ(tfade_version(), "0.1.0");
}

TEST(CApi, GammaAndErrors) {
    double g = 0.0;
    ASSERT_EQ(tfade_gamma(0.5, &g), TFADE_OK);
    EXPECT_NEAR(g, std::sqrt(M_PI), 1e-13);
    EXPECT_STREQ(tfade_last_error(), "");
    EXPECT_EQ(tfade_gamma(-1.0, &g), TFADE_ERR_DOMAIN);
    EXPECT_GT(std::strlen(tfade_last_error()), 0u);
    EXPECT_EQ(tfade_gamma(1.0, nullptr), TFADE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SoeLifecycle) {
    tfade_soe* soe = nullptr;
    ASSERT_EQ(tfade_soe_build(0.5, 1e-10, 1e-4, 2.0, &soe), TFADE_OK);
    ASSERT_NE(soe, nullptr);
    const size_t n = tfade_soe_size(soe);
    EXPECT_GT(n, 0u);
    double w = 0.0, s = -1.0;
    EXPECT_EQ(tfade_soe_term(soe, 0, &w, &s), TFADE_OK);
    EXPECT_GT(w, 0.0);
    EXPECT_GE(s, 0.0);
    EXPECT_EQ(tfade_soe_term(soe, n, &w, &s), TFADE_ERR_OUT_OF_RANGE);
    double v = 0.0;
    EXPECT_EQ(tfade_soe_eval(soe, 1.0, &v), TFADE_OK);
    EXPECT_NEAR(v, 1.0, 1e-10);
    EXPECT_EQ(tfade_soe_eval(soe, 10.0, &v), TFADE_ERR_OUT_OF_RANGE);
    tfade_soe_report report{};
    EXPECT_EQ(tfade_soe_certify(soe, 1000, &report), TFADE_OK);
    EXPECT_LE(report.max_rel_error, 1e-10);
    EXPECT_EQ(tfade_soe_certify(soe, 10, &report), TFADE_ERR_INVALID_ARGUMENT);
    tfade_soe_free(soe);
    tfade_soe_free(nullptr);
    EXPECT_EQ(tfade_soe_size(nullptr), 0u);
}

TEST(CApi, SoeRejectsTinyEpsilon) {
    tfade_soe* soe = reinterpret_cast<tfade_soe*>(0x1);
    EXPECT_EQ(tfade_soe_build(0.5, 1e-16, 1e-4, 2.0, &soe), TFADE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(soe, nullptr);
    EXPECT_NE(std::string(tfade_last_error()).find("epsilon"), std::string::npos);
}

TEST(CApi, SoeInterval) {
    double lo = 0.0, hi = 0.0;
    ASSERT_EQ(tfade_soe_interval(2.0, 4, 3.0, &lo, &hi), TFADE_OK);
    EXPECT_DOUBLE_EQ(lo, 0.109375);
    EXPECT_DOUBLE_EQ(hi, 1.421875);
    EXPECT_EQ(tfade_soe_interval(2.0, 4, 0.5, &lo, &hi), TFADE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, CaseRunAndErrors) {
    tfade_config c = tfade_config_default();
    EXPECT_EQ(c.alpha, 0.5);
    EXPECT_EQ(c.r, 3.0);
    EXPECT_EQ(c.epsilon, 1e-10);
    c.M = 100;
    c.N = 32;
    tfade_run* fast = nullptr;
    ASSERT_EQ(tfade_run_case(&c, 1, 1.8, &fast), TFADE_OK);
    c.method = TFADE_METHOD_DIRECT;
    tfade_run* direct = nullptr;
    ASSERT_EQ(tfade_run_case(&c, 1, 1.8, &direct), TFADE_OK);

    tfade_run_info info{};
    ASSERT_EQ(tfade_run_info_get(fast, &info), TFADE_OK);
    EXPECT_EQ(info.n_snapshots, 33u);
    EXPECT_EQ(info.interior_points, 99u);
    EXPECT_GT(info.n_exp, 0u);
    EXPECT_GE(info.wall_time, 0.0);

    double ef = 0.0, ed = 0.0, h1 = 0.0;
    ASSERT_EQ(tfade_run_max_error(fast, TFADE_NORM_L2, &ef), TFADE_OK);
    ASSERT_EQ(tfade_run_max_error(direct, TFADE_NORM_L2, &ed), TFADE_OK);
    ASSERT_EQ(tfade_run_max_error(fast, TFADE_NORM_H1, &h1), TFADE_OK);
    EXPECT_NEAR(ef, ed, 1e-3 * ed);
    EXPECT_GE(h1, ef);

    int step = -1;
    double t = -1.0;
    const double* values = nullptr;
    ASSERT_EQ(tfade_run_snapshot(fast, 32, &step, &t, &values), TFADE_OK);
    EXPECT_EQ(step, 32);
    EXPECT_DOUBLE_EQ(t, 2.0);
    double exact = 0.0;
    ASSERT_EQ(tfade_run_exact(fast, 0.5, 2.0, &exact), TFADE_OK);
    EXPECT_NEAR(values[49], exact, 1e-3);
    EXPECT_EQ(tfade_run_snapshot(fast, 33, &step, &t, &values), TFADE_ERR_OUT_OF_RANGE);

    tfade_run_free(fast);
    tfade_run_free(direct);
}

TEST(CApi, RejectsBadConfigAndCase) {
    tfade_config c = tfade_config_default();
    tfade_run* run = nullptr;
    EXPECT_EQ(tfade_run_case(&c, 7, 1.8, &run), TFADE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(run, nullptr);
    c.alpha = 1.5;
    EXPECT_EQ(tfade_run_case(&c, 1, 1.8, &run), TFADE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(tfade_run_case(nullptr, 1, 1.8, &run), TFADE_ERR_INVALID_ARGUMENT);
    c = tfade_config_default();
    c.method = static_cast<tfade_method>(9);
    EXPECT_EQ(tfade_run_case(&c, 1, 1.8, &run), TFADE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, CustomRunHasNoExactSolution) {
    tfade_config c = tfade_config_default();
    c.M = 16;
    c.N = 64;
    c.alpha = 0.25;
    tfade_run* run = nullptr;
    ASSERT_EQ(tfade_run_custom(&c, phi_plain, no_forcing, nullptr, &run), TFADE_OK);
    double e = 0.0;
    EXPECT_EQ(tfade_run_max_error(run, TFADE_NORM_L2, &e), TFADE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(tfade_run_exact(run, 0.5, 1.0, &e), TFADE_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(tfade_run_warning_count(run), 0u);
    EXPECT_EQ(tfade_run_warning(run, 0), nullptr);
    tfade_run_free(run);
    EXPECT_EQ(tfade_run_custom(&c, nullptr, no_forcing, nullptr, &run), TFADE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, WarningsExposed) {
    tfade_config c = tfade_config_default();
    c.M = 8;
    c.N = 4;
    tfade_run* run = nullptr;
    ASSERT_EQ(tfade_run_case(&c, 1, 1.8, &run), TFADE_OK);
    ASSERT_EQ(tfade_run_warning_count(run), 1u);
    EXPECT_NE(std::string(tfade_run_warning(run, 0)).find("1/3"), std::string::npos);
    tfade_run_info info{};
    tfade_run_info_get(run, &info);
    EXPECT_GE(info.tau_power, 1.0 / 3.0);
    tfade_run_free(run);
}

TEST(CApi, StabilityProbe) {
    tfade_config c = tfade_config_default();
    double amp = 1e-3, ratio = 0.0;
    ASSERT_EQ(tfade_stability_probe(&c, phi_plain, phi_shift, no_forcing, &amp, &ratio), TFADE_OK);
    EXPECT_LE(ratio, 1.0 + 1e-10);
    EXPECT_GT(ratio, 0.0);
    amp = 0.0;
    EXPECT_EQ(tfade_stability_probe(&c, phi_plain, phi_shift, no_forcing, &amp, &ratio),
              TFADE_ERR_INVALID_ARGUMENT);
}

TEST(CApi, NormsAndOrders) {
    const double v[] = {3.0};
    double out = 0.0;
    ASSERT_EQ(tfade_l2_norm(v, 1, 0.5, &out), TFADE_OK);
    EXPECT_DOUBLE_EQ(out, std::sqrt(0.5) * 3.0);
    ASSERT_EQ(tfade_h1_norm(v, 1, 0.5, &out), TFADE_OK);
    EXPECT_DOUBLE_EQ(out, std::sqrt(0.5 * 9 + 2 * 9 / 0.5));

    const int knobs[] = {16, 32, 64};
    const double errors[] = {4e-4, 1e-4, 2.5e-5};
    double orders[3];
    ASSERT_EQ(tfade_order_table(knobs, errors, 3, orders), TFADE_OK);
    EXPECT_TRUE(std::isnan(orders[0]));
    EXPECT_NEAR(orders[1], 2.0, 1e-14);
    EXPECT_NEAR(orders[2], 2.0, 1e-14);
    const double bad[] = {4e-4, 0.0, 1e-5};
    EXPECT_EQ(tfade_order_table(knobs, bad, 3, orders), TFADE_ERR_INVALID_ARGUMENT);
}
