// tfade: convergence tables, timing sweeps and SOE checks as CSV.

#include "tfade/tfade.h"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/os.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

enum Exit { exit_ok = 0, exit_usage = 1, exit_failure = 2 };

struct Failure : std::runtime_error {
    int exit_code;
    Failure(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
};

void check(tfade_status status, const std::string& context) {
    if (status == TFADE_OK) return;
    const bool usage = status == TFADE_ERR_INVALID_ARGUMENT || status == TFADE_ERR_DOMAIN ||
                       status == TFADE_ERR_OUT_OF_RANGE;
    throw Failure(usage ? exit_usage : exit_failure,
                  fmt::format("{}: {} ({})", context, tfade_last_error(),
                              tfade_status_name(status)));
}

struct RunDeleter {
    void operator()(tfade_run* r) const { tfade_run_free(r); }
};
struct SoeDeleter {
    void operator()(tfade_soe* s) const { tfade_soe_free(s); }
};
using RunPtr = std::unique_ptr<tfade_run, RunDeleter>;
using SoePtr = std::unique_ptr<tfade_soe, SoeDeleter>;

struct Params {
    int case_id = 1;
    double alpha = 0.5;
    double lambda = 1.0;
    double delta = 1.8;
    double r = 3.0;
    double eps = 1e-10;
    std::string method = "fast";
    std::vector<int> N{64};
    std::vector<int> M{64};
    double T = 2.0;
    double L = 1.0;
    std::string norm = "l2";
    std::string out;
};

std::vector<tfade_method> methods_of(const std::string& m) {
    if (m == "fast") return {TFADE_METHOD_FAST};
    if (m == "direct") return {TFADE_METHOD_DIRECT};
    return {TFADE_METHOD_FAST, TFADE_METHOD_DIRECT};
}

const char* method_label(tfade_method m) { return m == TFADE_METHOD_FAST ? "fast" : "direct"; }

tfade_norm norm_of(const std::string& n) { return n == "h1" ? TFADE_NORM_H1 : TFADE_NORM_L2; }

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s;
}

std::string provenance(const std::string& command, const Params& p) {
    return fmt::format(
        "# tfade {} {}\n# case={} alpha={} lambda={} delta={} r={} eps={} method={} M={} N={} "
        "T={} L={} norm={}\n",
        command, tfade_version(), p.case_id, p.alpha, p.lambda, p.delta, p.r, p.eps, p.method,
        join(p.M), join(p.N), p.T, p.L, p.norm);
}

tfade_config make_config(const Params& p, int N, int M, tfade_method method) {
    tfade_config c = tfade_config_default();
    c.alpha = p.alpha;
    c.lambda = p.lambda;
    c.T = p.T;
    c.L = p.L;
    c.M = M;
    c.N = N;
    c.r = p.r;
    c.epsilon = p.eps;
    c.method = method;
    return c;
}

double zero_initial(double, void*) { return 0.0; }
double zero_forcing(double, double, void*) { return 0.0; }

RunPtr solve_one(const Params& p, int N, int M, tfade_method method) {
    const tfade_config c = make_config(p, N, M, method);
    tfade_run* raw = nullptr;
    const std::string context = fmt::format("run {} N={} M={}", method_label(method), N, M);
    if (p.case_id == 0) {
        check(tfade_run_custom(&c, zero_initial, zero_forcing, nullptr, &raw), context);
    } else {
        check(tfade_run_case(&c, p.case_id, p.delta, &raw), context);
    }
    return RunPtr(raw);
}

// Output goes to --out when given, otherwise stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_ = std::fopen(path.c_str(), "w");
        if (!file_) throw Failure(exit_failure, fmt::format("cannot open '{}' for writing", path));
        path_ = path;
    }
    ~Sink() {
        if (file_) std::fclose(file_);
    }
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;

    void write(const std::string& text) {
        std::FILE* f = file_ ? file_ : stdout;
        if (std::fwrite(text.data(), 1, text.size(), f) != text.size()) {
            throw Failure(exit_failure, fmt::format("write failed on '{}'",
                                                    path_.empty() ? "<stdout>" : path_));
        }
    }

private:
    std::FILE* file_ = nullptr;
    std::string path_;
};

void require_usage(bool cond, const std::string& what) {
    if (!cond) throw Failure(exit_usage, what);
}

// ---- solve ------------------------------------------------------------

void cmd_solve(const Params& p, int stride) {
    require_usage(p.N.size() == 1 && p.M.size() == 1, "solve takes a single --N and --M");
    require_usage(stride >= 0, "--stride must be >= 0");
    std::string csv = provenance("solve", p);
    csv += "method,step,x,t,U,exact,abs_err\n";
    std::vector<std::string> echoes;
    for (tfade_method method : methods_of(p.method)) {
        const RunPtr run = solve_one(p, p.N[0], p.M[0], method);
        tfade_run_info info{};
        check(tfade_run_info_get(run.get(), &info), "run info");
        for (std::size_t w = 0; w < tfade_run_warning_count(run.get()); ++w) {
            fmt::print(stderr, "warning: {}\n", tfade_run_warning(run.get(), w));
        }
        const int M = p.M[0];
        const double h = p.L / M;
        std::vector<double> err(static_cast<std::size_t>(M - 1));
        for (std::size_t k = 0; k < info.n_snapshots; ++k) {
            int step = 0;
            double t = 0.0;
            const double* values = nullptr;
            check(tfade_run_snapshot(run.get(), k, &step, &t, &values), "snapshot");
            const bool last = k + 1 == info.n_snapshots;
            const bool emit = last || (stride > 0 && step % stride == 0);
            for (int j = 0; j <= M; ++j) {
                const double x = j * h;
                const double u = (j == 0 || j == M) ? 0.0 : values[j - 1];
                double exact = 0.0;
                if (p.case_id != 0) check(tfade_run_exact(run.get(), x, t, &exact), "exact");
                if (j > 0 && j < M) err[static_cast<std::size_t>(j - 1)] = u - exact;
                if (emit) {
                    csv += fmt::format("{},{},{:.10g},{:.10g},{:.12e},{:.12e},{:.6e}\n",
                                       method_label(method), step, x, t, u, exact,
                                       std::fabs(u - exact));
                }
            }
            if (last) {
                double l2 = 0.0;
                check(tfade_l2_norm(err.data(), err.size(), h, &l2), "norm");
                echoes.push_back(fmt::format("final L2 error ({}): {:.6e}", method_label(method), l2));
            }
        }
    }
    Sink(p.out).write(csv);
    for (const std::string& e : echoes) fmt::print(stderr, "{}\n", e);
}

// ---- convergence ------------------------------------------------------

struct SweepJob {
    tfade_method method;
    int N;
    int M;
    double error = 0.0;
    std::string failure;
    int exit_code = exit_ok;
};

void run_jobs(const Params& p, std::vector<SweepJob>& jobs, unsigned threads) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            SweepJob& job = jobs[k];
            try {
                const RunPtr run = solve_one(p, job.N, job.M, job.method);
                check(tfade_run_max_error(run.get(), norm_of(p.norm), &job.error), "max error");
            } catch (const Failure& f) {
                job.failure = f.what();
                job.exit_code = f.exit_code;
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
}

void cmd_convergence(const Params& p, unsigned threads) {
    require_usage(!p.N.empty() && !p.M.empty(), "empty sweep list");
    require_usage(p.case_id >= 1 && p.case_id <= 3, "convergence needs --case 1, 2 or 3");
    require_usage(p.N.size() == 1 || p.M.size() == 1,
                  "sweep either --N or --M; the other must be a single value");
    const bool time_sweep = p.N.size() > 1 || p.M.size() == 1;
    const std::vector<int>& knobs = time_sweep ? p.N : p.M;

    std::vector<SweepJob> jobs;
    for (tfade_method method : methods_of(p.method)) {
        for (int knob : knobs) {
            jobs.push_back({method, time_sweep ? knob : p.N[0], time_sweep ? p.M[0] : knob, 0.0, {}, exit_ok});
        }
    }
    run_jobs(p, jobs, threads);
    for (const SweepJob& job : jobs) {
        if (job.exit_code != exit_ok) throw Failure(job.exit_code, job.failure);
    }

    std::string csv = provenance("convergence", p);
    csv += fmt::format("# knob={}\n", time_sweep ? "N" : "M");
    csv += "knob,error,order,method,norm\n";
    const std::size_t per_method = knobs.size();
    for (std::size_t base = 0; base < jobs.size(); base += per_method) {
        std::vector<double> errors(per_method);
        std::vector<double> orders(per_method);
        for (std::size_t k = 0; k < per_method; ++k) errors[k] = jobs[base + k].error;
        bool doubling = true;
        for (std::size_t k = 1; k < per_method; ++k) doubling &= knobs[k] == 2 * knobs[k - 1];
        if (doubling) {
            check(tfade_order_table(knobs.data(), errors.data(), per_method, orders.data()),
                  "order table");
        } else {
            std::fill(orders.begin(), orders.end(), std::nan(""));
        }
        for (std::size_t k = 0; k < per_method; ++k) {
            const std::string order = std::isnan(orders[k]) ? "" : fmt::format("{:.4f}", orders[k]);
            csv += fmt::format("{},{:.6e},{},{},{}\n", knobs[k], errors[k], order,
                               method_label(jobs[base + k].method), p.norm);
        }
    }
    Sink(p.out).write(csv);
}

// ---- bench ------------------------------------------------------------

double median_time(const Params& p, int N, int M, tfade_method method, std::size_t* n_exp) {
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
        const RunPtr run = solve_one(p, N, M, method);
        tfade_run_info info{};
        check(tfade_run_info_get(run.get(), &info), "run info");
        times.push_back(info.wall_time);
        if (n_exp) *n_exp = info.n_exp;
    }
    std::sort(times.begin(), times.end());
    return times[1];
}

double loglog_slope(const std::vector<int>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double lx = std::log(x[k]);
        const double ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void cmd_bench(const Params& p, int direct_cutoff) {
    require_usage(p.M.size() == 1, "bench takes a single --M");
    require_usage(p.N.size() >= 2, "bench needs at least two --N values");
    require_usage(p.case_id >= 1 && p.case_id <= 3, "bench needs --case 1, 2 or 3");
    const bool want_fast = p.method != "direct";
    const bool want_direct = p.method != "fast";

    std::string csv = provenance("bench", p);
    csv += "N,wall_seconds_fast,wall_seconds_direct,n_exp\n";
    std::vector<int> fast_n, direct_n;
    std::vector<double> fast_t, direct_t;
    for (int N : p.N) {
        std::size_t n_exp = 0;
        std::string fast_cell, direct_cell;
        if (want_fast) {
            const double t = median_time(p, N, p.M[0], TFADE_METHOD_FAST, &n_exp);
            fast_n.push_back(N);
            fast_t.push_back(t);
            fast_cell = fmt::format("{:.6e}", t);
        }
        if (want_direct && N <= direct_cutoff) {
            const double t = median_time(p, N, p.M[0], TFADE_METHOD_DIRECT, nullptr);
            direct_n.push_back(N);
            direct_t.push_back(t);
            direct_cell = fmt::format("{:.6e}", t);
        }
        csv += fmt::format("{},{},{},{}\n", N, fast_cell, direct_cell, n_exp);
    }
    std::string summary = "# slope";
    if (fast_n.size() >= 2) summary += fmt::format(" fast={:.4f}", loglog_slope(fast_n, fast_t));
    if (direct_n.size() >= 2) {
        summary += fmt::format(" direct={:.4f}", loglog_slope(direct_n, direct_t));
    }
    csv += summary + "\n";
    Sink(p.out).write(csv);
    fmt::print(stderr, "{}\n", summary.substr(2));
}

// ---- soe-check --------------------------------------------------------

void cmd_soe_check(const Params& p, double t_min, double t_max, int samples) {
    require_usage(samples >= 100, "--samples must be >= 100");
    tfade_soe* raw = nullptr;
    check(tfade_soe_build(p.alpha, p.eps, t_min, t_max, &raw), "soe build");
    const SoePtr soe(raw);
    tfade_soe_report report{};
    check(tfade_soe_certify(soe.get(), static_cast<std::size_t>(samples), &report), "certify");

    std::string csv = fmt::format("# tfade soe-check {}\n# alpha={} eps={} t_min={} t_max={} "
                                  "samples={} n_exp={}\n",
                                  tfade_version(), p.alpha, p.eps, t_min, t_max, samples,
                                  tfade_soe_size(soe.get()));
    csv += "t,kernel,soe,rel_err\n";
    const double beta = 1.0 + p.alpha;
    const double ratio = std::log(t_max / t_min);
    for (int k = 0; k < samples; ++k) {
        const double t = k + 1 == samples ? t_max : t_min * std::exp(ratio * k / (samples - 1));
        double approx = 0.0;
        check(tfade_soe_eval(soe.get(), t, &approx), "soe eval");
        const double kernel = std::pow(t, -beta);
        csv += fmt::format("{:.12e},{:.12e},{:.12e},{:.6e}\n", t, kernel, approx,
                           std::fabs(approx - kernel) / kernel);
    }
    if (!p.out.empty()) Sink(p.out).write(csv);
    fmt::print("n_exp={} max_rel_error={:.3e} argmax_t={:.6e}\n", tfade_soe_size(soe.get()),
               report.max_rel_error, report.argmax_t);
    if (!(report.max_rel_error <= p.eps)) {
        throw Failure(exit_failure, fmt::format("certification failed: {:.3e} > {:.3e}",
                                                report.max_rel_error, p.eps));
    }
}

void add_model_options(CLI::App* cmd, Params& p) {
    cmd->add_option("--case", p.case_id, "Manufactured case (0 = zero data)")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    cmd->add_option("--alpha", p.alpha, "Fractional order in (0,1)")->capture_default_str();
    cmd->add_option("--lambda", p.lambda, "Tempering parameter")->capture_default_str();
    cmd->add_option("--delta", p.delta, "Time regularity of the exact solution")
        ->capture_default_str();
    cmd->add_option("--r", p.r, "Mesh grading")->capture_default_str();
    cmd->add_option("--eps", p.eps, "SOE relative accuracy")->capture_default_str();
    cmd->add_option("--method", p.method, "fast, direct or both")
        ->check(CLI::IsMember({"fast", "direct", "both"}))
        ->capture_default_str();
    cmd->add_option("--N", p.N, "Time steps (comma list)")->delimiter(',')->capture_default_str();
    cmd->add_option("--M", p.M, "Space intervals (comma list)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--T", p.T, "Final time")->capture_default_str();
    cmd->add_option("--L", p.L, "Domain length")->capture_default_str();
    cmd->add_option("--norm", p.norm, "l2 or h1")
        ->check(CLI::IsMember({"l2", "h1"}))
        ->capture_default_str();
    cmd->add_option("--out", p.out, "Output CSV path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tempered fractional advection-dispersion solver"};
    app.set_config("--config", "", "Key-value configuration file; flags override it");
    app.require_subcommand(1);

    Params p;
    int stride = 0;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    int direct_cutoff = 1 << 30;
    double t_min = 1e-4, t_max = 2.0;
    int samples = 10000;

    CLI::App* solve = app.add_subcommand("solve", "Solve one configuration, CSV of levels");
    add_model_options(solve, p);
    solve->add_option("--stride", stride, "Also write every stride-th level (0 = final only)");

    CLI::App* conv = app.add_subcommand("convergence", "Error and order table over N or M");
    add_model_options(conv, p);
    conv->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    CLI::App* bench = app.add_subcommand("bench", "Wall time and n_exp over N");
    add_model_options(bench, p);
    bench->add_option("--direct-max-N", direct_cutoff, "Skip direct runs above this N");

    CLI::App* soe = app.add_subcommand("soe-check", "Build and certify a kernel approximation");
    soe->add_option("--alpha", p.alpha)->capture_default_str();
    soe->add_option("--eps", p.eps)->capture_default_str();
    soe->add_option("--tmin", t_min)->capture_default_str();
    soe->add_option("--tmax", t_max)->capture_default_str();
    soe->add_option("--samples", samples)->capture_default_str();
    soe->add_option("--out", p.out, "CSV of t, kernel, soe, rel_err");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*solve) cmd_solve(p, stride);
        if (*conv) cmd_convergence(p, threads);
        if (*bench) cmd_bench(p, direct_cutoff);
        if (*soe) cmd_soe_check(p, t_min, t_max, samples);
    } catch (const Failure& f) {
        fmt::print(stderr, "error: {}\n", f.what());
        return f.exit_code;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return exit_failure;
    }
    return exit_ok;
}
