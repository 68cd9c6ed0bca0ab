#include "tfade/mesh.hpp"

#include "tfade/error.hpp"

#include <cmath>
#include <string>

namespace tfade {

TemporalMesh::TemporalMesh(double horizon, int steps, double grading)
    : horizon_(horizon), steps_(steps), grading_(grading) {
    require(horizon > 0.0, "graded_mesh: horizon T must be positive");
    require(steps >= 2, "graded_mesh: N must be at least 2, got " + std::to_string(steps));
    require(grading >= 1.0, "graded_mesh: grading exponent r must be >= 1, got " +
                                std::to_string(grading));
    const auto n_points = static_cast<std::size_t>(steps) + 1;
    t_.resize(n_points);
    tau_.assign(n_points, 0.0);
    tbar_.resize(n_points - 1);
    for (int n = 0; n <= steps; ++n) {
        t_[n] = horizon * std::pow(static_cast<double>(n) / steps, grading);
    }
    t_.front() = 0.0;
    t_.back() = horizon;
    for (int n = 1; n <= steps; ++n) tau_[n] = t_[n] - t_[n - 1];
    for (int n = 0; n < steps; ++n) tbar_[n] = 0.5 * (t_[n] + t_[n + 1]);
}

TemporalMesh graded_mesh(double horizon, int steps, double grading) {
    return TemporalMesh(horizon, steps, grading);
}

SpatialGrid uniform_grid(double length, int intervals) {
    require(length > 0.0, "uniform_grid: L must be positive");
    require(intervals >= 2, "uniform_grid: M must be at least 2, got " + std::to_string(intervals));
    SpatialGrid grid;
    grid.length = length;
    grid.intervals = intervals;
    grid.h = length / intervals;
    grid.x.resize(static_cast<std::size_t>(intervals) + 1);
    for (int i = 0; i <= intervals; ++i) grid.x[i] = i * grid.h;
    grid.x.back() = length;
    return grid;
}

KernelInterval soe_interval(const TemporalMesh& mesh) {
    return {0.5 * mesh.tau(2), mesh.tbar(mesh.steps() - 1)};
}

}  // namespace tfade
