#include "tfade/problems.hpp"

#include "tfade/error.hpp"
#include "tfade/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tfade {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

ManufacturedCase make_case(int id, double alpha, double lam, double delta) {
    require(alpha > 0.0 && alpha < 1.0, "make_case: alpha must lie in (0, 1)");
    require(delta > 0.0, "make_case: delta must be positive");
    ManufacturedCase mc;
    mc.id = id;
    mc.alpha = alpha;
    mc.lam = lam;
    mc.delta = delta;
    // Tempered Caputo derivative of e^{-lam t} t^delta is e^{-lam t} G t^(delta - alpha).
    const double G = gamma_fn(delta + 1.0) / gamma_fn(delta - alpha + 1.0);
    const double a = alpha;
    const double l = lam;
    const double d = delta;

    switch (id) {
    case 1:
        mc.exact = [=](double x, double t) {
            return std::exp(-l * t) * (std::pow(t, d) + 1.0) * x * x * (1 - x) * (1 - x);
        };
        mc.forcing = [=](double x, double t) {
            const double X = x * x * (1 - x) * (1 - x);
            const double tp = std::pow(t, d);
            const double dt = (t > 0.0) ? d * std::pow(t, d - 1.0) : 0.0;
            const double et = std::exp(-l * t);
            return (-l * (tp + 1.0) + dt + G * std::pow(t, d - a)) * et * X -
                   ((12 * x * x - 12 * x + 2) - (4 * x * x * x - 6 * x * x + 2 * x)) * (tp + 1.0) * et;
        };
        break;
    case 2:
        mc.exact = [=](double x, double t) {
            return std::exp(-l * t) * (std::pow(t, d) + 1.0) * std::sin(kPi * x * x);
        };
        mc.forcing = [=](double x, double t) {
            const double S = std::sin(kPi * x * x);
            const double C = std::cos(kPi * x * x);
            const double tp = std::pow(t, d);
            const double dt = (t > 0.0) ? d * std::pow(t, d - 1.0) : 0.0;
            const double et = std::exp(-l * t);
            return (-l * (tp + 1.0) + dt + G * std::pow(t, d - a)) * et * S -
                   (-2 * kPi * x * C + 2 * kPi * C - 4 * kPi * kPi * x * x * S) * (tp + 1.0) * et;
        };
        break;
    case 3:
        mc.exact = [=](double x, double t) {
            const double g = std::pow(x * (1 - x), 4);
            return std::exp(-l * t) * (std::exp(-x) * std::pow(t, d) + 1.0) * g;
        };
        mc.forcing = [=](double x, double t) {
            const double y = 1 - x;
            const double g = std::pow(x * y, 4);
            const double g1 = 4 * x * x * x * y * y * y * (1 - 2 * x);  // g'
            const double g2 = 4 * x * x * y * y * (3 * y * y - 8 * x * y + 3 * x * x);  // g''
            const double ex = std::exp(-x);
            const double tp = std::pow(t, d);
            const double dt = (t > 0.0) ? d * std::pow(t, d - 1.0) : 0.0;
            const double et = std::exp(-l * t);
            return (-l * (ex * tp + 1.0) + ex * dt + G * ex * std::pow(t, d - a)) * et * g -
                   (g2 - g1) * (ex * tp + 1.0) * et - (2 * g - 2 * g1) * ex * tp * et;
        };
        break;
    default:
        fail(ErrorCode::invalid_argument, "make_case: unknown case id " + std::to_string(id));
    }
    mc.phi = [exact = mc.exact](double x) { return exact(x, 0.0); };
    return mc;
}

const char* norm_name(Norm norm) noexcept { return norm == Norm::l2 ? "l2" : "h1"; }

double l2_norm(std::span<const double> v, double h) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(h * acc);
}

double h1_norm(std::span<const double> v, double h) {
    double semi = 0.0;
    double prev = 0.0;
    for (double x : v) {
        const double d = (x - prev) / h;
        semi += d * d;
        prev = x;
    }
    const double last = (0.0 - prev) / h;
    semi += last * last;
    const double l2 = l2_norm(v, h);
    return std::sqrt(l2 * l2 + h * semi);
}

double norm_of(std::span<const double> v, double h, Norm norm) {
    return norm == Norm::l2 ? l2_norm(v, h) : h1_norm(v, h);
}

double max_error(const Trajectory& traj, const ManufacturedCase& mc, Norm norm) {
    require(!traj.snapshots.empty(), "max_error: trajectory has no snapshots");
    const SpatialGrid& grid = traj.grid;
    double worst = 0.0;
    std::vector<double> diff;
    for (const Snapshot& snap : traj.snapshots) {
        diff.resize(snap.values.size());
        for (std::size_t j = 0; j < diff.size(); ++j) {
            diff[j] = snap.values[j] - mc.exact(grid.x[j + 1], snap.t);
        }
        worst = std::max(worst, norm_of(diff, grid.h, norm));
    }
    return worst;
}

std::vector<ErrorRow> order_table(std::span<const KnobError> errs) {
    std::vector<ErrorRow> rows;
    rows.reserve(errs.size());
    for (std::size_t k = 0; k < errs.size(); ++k) {
        require(errs[k].error > 0.0 && std::isfinite(errs[k].error),
                "order_table: errors must be positive and finite");
        ErrorRow row{errs[k].knob, errs[k].error, std::nullopt};
        if (k > 0) {
            require(errs[k].knob == 2 * errs[k - 1].knob, "order_table: knobs must double");
            row.order = std::log2(errs[k - 1].error / errs[k].error);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ErrorRow> order_table_by_step(std::span<const KnobError> errs, double r) {
    require(r >= 1.0, "order_table_by_step: r must be at least 1");
    std::vector<ErrorRow> rows = order_table(errs);
    const auto largest_step = [r](int n) {
        require(n >= 2, "order_table_by_step: N must be at least 2");
        return -std::expm1(r * std::log1p(-1.0 / n));
    };
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double ratio = largest_step(rows[k - 1].knob) / largest_step(rows[k].knob);
        rows[k].order = std::log(rows[k - 1].error / rows[k].error) / std::log(ratio);
    }
    return rows;
}

}  // namespace tfade
