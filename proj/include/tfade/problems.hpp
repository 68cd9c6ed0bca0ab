#pragma once

#include "tfade/pde_solver.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace tfade {

/// Manufactured solutions on (0, 1) x (0, 2] with singular time factor t^delta.
///   1: e^{-lam t}(t^delta + 1) x^2 (1-x)^2
///   2: e^{-lam t}(t^delta + 1) sin(pi x^2)
///   3: e^{-lam t}(e^{-x} t^delta + 1) x^4 (1-x)^4
struct ManufacturedCase {
    int id = 1;
    double alpha = 0.5;
    double lam = 1.0;
    double delta = 1.8;
    double L = 1.0;
    double T = 2.0;
    std::function<double(double, double)> exact;
    std::function<double(double)> phi;
    std::function<double(double, double)> forcing;

    ProblemData problem() const { return {phi, forcing}; }
};

ManufacturedCase make_case(int id, double alpha, double lam = 1.0, double delta = 1.8);

enum class Norm { l2, h1 };

const char* norm_name(Norm norm) noexcept;

/// sqrt(h sum v_j^2) over interior values.
double l2_norm(std::span<const double> v, double h);

/// sqrt(l2^2 + h sum_{j=0}^{M-1} ((v_{j+1} - v_j)/h)^2) with zero boundary values.
double h1_norm(std::span<const double> v, double h);

double norm_of(std::span<const double> v, double h, Norm norm);

/// Maximum over retained levels of ||U^n - u(., t_n)||.
double max_error(const Trajectory& traj, const ManufacturedCase& mc, Norm norm);

struct KnobError {
    int knob;
    double error;
};

struct ErrorRow {
    int knob;
    double error;
    std::optional<double> order;  // empty for the first row
};

/// order_k = log2(err_{k-1} / err_k); requires doubling knobs and positive errors.
std::vector<ErrorRow> order_table(std::span<const KnobError> errs);

/// Temporal orders against the largest graded step T(1 - ((N-1)/N)^r) instead of N.
std::vector<ErrorRow> order_table_by_step(std::span<const KnobError> errs, double r);

}  // namespace tfade
