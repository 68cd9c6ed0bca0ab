#pragma once

#include <span>
#include <vector>

namespace tfade {

/// Graded temporal grid t_n = T (n/N)^r with midpoints.
class TemporalMesh {
public:
    TemporalMesh(double horizon, int steps, double grading);

    double horizon() const noexcept { return horizon_; }
    int steps() const noexcept { return steps_; }
    double grading() const noexcept { return grading_; }

    /// t_n, 0 <= n <= N.
    double t(int n) const { return t_[static_cast<std::size_t>(n)]; }
    /// tau_n = t_n - t_{n-1}, 1 <= n <= N.
    double tau(int n) const { return tau_[static_cast<std::size_t>(n)]; }
    /// tbar_n = (t_n + t_{n+1}) / 2, 0 <= n <= N-1.
    double tbar(int n) const { return tbar_[static_cast<std::size_t>(n)]; }

    std::span<const double> points() const noexcept { return t_; }

private:
    double horizon_;
    int steps_;
    double grading_;
    std::vector<double> t_;
    std::vector<double> tau_;  // tau_[0] unused (zero)
    std::vector<double> tbar_;
};

TemporalMesh graded_mesh(double horizon, int steps, double grading);

struct SpatialGrid {
    double length = 0.0;
    int intervals = 0;  // M
    double h = 0.0;
    std::vector<double> x;  // x_0 .. x_M
};

SpatialGrid uniform_grid(double length, int intervals);

struct KernelInterval {
    double t_min;
    double t_max;
};

/// Range of kernel arguments tbar_n - s, s <= t_n, n >= 1, that the history
/// sum ever needs: [tau_2 / 2, tbar_{N-1}].
KernelInterval soe_interval(const TemporalMesh& mesh);

}  // namespace tfade
