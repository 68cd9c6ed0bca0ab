#pragma once

#include "tfade/mesh.hpp"
#include "tfade/tempered_ops.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace tfade {

enum class Method { fast, direct };

const char* method_name(Method method) noexcept;

/// Discretisation and model parameters of
///   u_t + D^{alpha,lam} u = u_xx - u_x + f  on (0, L) x (0, T],  u = 0 at x = 0, L.
struct SchemeConfig {
    double alpha = 0.5;
    double lam = 1.0;
    double T = 2.0;
    double L = 1.0;
    int M = 64;
    int N = 64;
    double r = 3.0;
    double epsilon = 1e-10;
    Method method = Method::fast;
};

/// Throws invalid_argument for out-of-range parameters.
void validate(const SchemeConfig& config);

/// max_n tau_{n}^(2 - 2 alpha); the unconditional stability bound asks for < 1/3.
double max_tau_power(const TemporalMesh& mesh, double alpha);

struct TridiagonalSystem {
    std::vector<double> lower;  // lower[0] unused
    std::vector<double> diag;
    std::vector<double> upper;  // upper[size-1] unused
    std::vector<double> rhs;

    std::size_t size() const noexcept { return diag.size(); }
};

/// One step of the Crank-Nicolson-type scheme at interior points:
/// u_n holds U^n, explicit_part holds E_n (operator terms known before the
/// step), f_bar holds f(x_j, tbar_n).
TridiagonalSystem assemble_step(std::span<const double> u_n, std::span<const double> explicit_part,
                                std::span<const double> f_bar, double implicit_coeff,
                                double tau_np1, double h);

/// Thomas algorithm. Throws numerical on pivot breakdown; step is only used
/// in the message.
std::vector<double> thomas_solve(const TridiagonalSystem& system, int step = -1);

/// Initial data and source term of a run.
struct ProblemData {
    std::function<double(double)> initial;
    std::function<double(double, double)> forcing;
};

struct Snapshot {
    int step;
    double t;
    std::vector<double> values;  // interior points x_1..x_{M-1}
};

struct Trajectory {
    SchemeConfig config;
    SpatialGrid grid;
    std::vector<Snapshot> snapshots;  // ascending in step; level 0 and N always kept
    double wall_time = 0.0;           // seconds
    std::size_t n_exp_used = 0;       // 0 for the direct method
    double tau_power = 0.0;           // max_tau_power of the mesh
    std::vector<std::string> warnings;
};

struct RunOptions {
    /// Snapshot stride; 0 picks 1 when (M-1)(N+1) <= max_entries, else the
    /// smallest stride that fits.
    int stride = 0;
    std::size_t max_entries = 10'000'000;
};

Trajectory run(const SchemeConfig& config, const ProblemData& problem, const RunOptions& options = {});

struct StabilityReport {
    double max_ratio = 0.0;
    int argmax_step = 0;
};

/// Runs two initial data with the same forcing and reports
/// max_n ||U^n_a - U^n_b||_L2 / ||U^0_a - U^0_b||_L2.
StabilityReport stability_probe(const SchemeConfig& config,
                                const std::function<double(double)>& phi_a,
                                const std::function<double(double)>& phi_b,
                                const std::function<double(double, double)>& forcing);

}  // namespace tfade
