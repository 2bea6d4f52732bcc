// Command-line front end: solve runs, iteration-count tables, Newton-basin
// scans, and spectral checks, emitting CSV/PGM/JSON artifacts.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "w4/analysis.hpp"
#include "w4/basin.hpp"
#include "w4/problems.hpp"
#include "w4/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitSingular = 3;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw CLI::ValidationError("bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("empty number list");
    return out;
}

void write_file(const std::string& path, const std::string& content, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw CLI::ValidationError("cannot open output file '" + path + "'");
    out << content;
}

std::string json_vector(const w4::Vector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += w4::format_full(v[i]);
    }
    return s + "]";
}

int status_exit_code(w4::Status s) {
    switch (s) {
        case w4::Status::Converged: return kExitOk;
        case w4::Status::SingularDecomposition: return kExitSingular;
        default: return kExitNotConverged;
    }
}

double default_dtau(w4::MethodKind m) { return m == w4::MethodKind::NR ? 1.0 : 0.5; }

struct SolveOpts {
    std::string problem;
    std::string method = "nr";
    std::string x0;
    double dtau = -1.0;  // -1: method default
    double tol = 1e-6;
    int max_iter = 10000;
    std::string trace_path;
};

int cmd_solve(const SolveOpts& opt) {
    const w4::Problem problem = w4::builtin(opt.problem);
    w4::SolverConfig config;
    config.method = w4::method_from_string(opt.method);
    config.dtau = opt.dtau < 0.0 ? default_dtau(config.method) : opt.dtau;
    config.tol = opt.tol;
    config.max_iter = opt.max_iter;
    const w4::Vector x0 = parse_doubles(opt.x0);
    const w4::SolverResult result = w4::run(problem, config, x0);
    if (!opt.trace_path.empty()) write_file(opt.trace_path, w4::trace_to_csv(result.trace));
    std::cout << "{\"status\":\"" << w4::to_string(result.status) << "\",\"iterations\":"
              << result.iterations << ",\"final_x\":" << json_vector(result.final_state.x)
              << ",\"final_residual\":" << w4::format_full(result.trace.back().res_inf) << "}\n";
    return status_exit_code(result.status);
}

struct TableOpts {
    std::string problem = "simple1d";
    std::string methods = "nr,dn,w4-udl";
    std::string x0_list;
    std::string x0_range;
    double dtau = 0.5;
    double tol = 1e-6;
    int max_iter = 10000;
    std::string out_path;
};

int cmd_table(const TableOpts& opt) {
    const w4::Problem problem = w4::builtin(opt.problem);
    if (problem.dim != 1) throw CLI::ValidationError("table requires a 1-D problem");

    std::vector<double> x0s;
    if (!opt.x0_list.empty()) {
        x0s = parse_doubles(opt.x0_list);
    } else if (!opt.x0_range.empty()) {
        std::vector<double> r;
        std::stringstream ss(opt.x0_range);
        std::string item;
        while (std::getline(ss, item, ':')) r.push_back(std::stod(item));
        if (r.size() != 3 || r[2] <= 0.0)
            throw CLI::ValidationError("--x0-range must be start:stop:step with positive step");
        const int count = static_cast<int>(std::floor((r[1] - r[0]) / r[2] + 1e-9)) + 1;
        for (int i = 0; i < count; ++i) x0s.push_back(r[0] + i * r[2]);
    } else {
        throw CLI::ValidationError("one of --x0-list or --x0-range is required");
    }

    std::vector<std::string> methods;
    {
        std::stringstream ss(opt.methods);
        std::string item;
        while (std::getline(ss, item, ',')) methods.push_back(item);
    }

    std::ostringstream csv;
    csv << "method";
    for (double x0 : x0s) csv << ',' << w4::format_shortest(x0);
    csv << '\n';
    for (const auto& name : methods) {
        w4::SolverConfig config;
        config.method = w4::method_from_string(name);
        config.dtau = config.method == w4::MethodKind::NR ? 1.0 : opt.dtau;
        config.tol = opt.tol;
        config.max_iter = opt.max_iter;
        csv << name;
        for (double x0 : x0s) {
            const w4::SolverResult r = w4::run(problem, config, {x0});
            if (r.status == w4::Status::Converged)
                csv << ',' << r.iterations;
            else
                csv << ",inf";
        }
        csv << '\n';
    }
    if (opt.out_path.empty())
        std::cout << csv.str();
    else
        write_file(opt.out_path, csv.str());
    return kExitOk;
}

struct BasinOpts {
    std::string problem;
    std::string method = "w4-udl";
    double dtau = -1.0;
    double tol = 1e-6;
    int max_iter = 1000;
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool have_domain = false;
    int nx = 200, ny = 200;
    std::string pgm_path;
    std::string csv_path;
};

int cmd_basin(const BasinOpts& opt) {
    const w4::Problem problem = w4::builtin(opt.problem);
    if (problem.dim != 2) throw CLI::ValidationError("basin requires a 2-D problem");
    w4::SolverConfig config;
    config.method = w4::method_from_string(opt.method);
    config.dtau = opt.dtau < 0.0 ? default_dtau(config.method) : opt.dtau;
    config.tol = opt.tol;
    config.max_iter = opt.max_iter;
    std::vector<w4::AxisBounds> domain = problem.default_domain;
    if (opt.have_domain) domain = {{opt.xmin, opt.xmax}, {opt.ymin, opt.ymax}};

    const w4::BasinGrid grid = w4::compute_basin(problem, config, domain, opt.nx, opt.ny);
    const w4::BasinStats stats = w4::basin_stats(grid);
    const int root_count = static_cast<int>(problem.known_roots.size());

    if (!opt.pgm_path.empty()) write_file(opt.pgm_path, w4::basin_to_pgm(grid, root_count), true);
    if (!opt.csv_path.empty()) write_file(opt.csv_path, w4::basin_to_csv(grid));

    std::cout << "{\"problem\":\"" << problem.name << "\",\"method\":\"" << opt.method
              << "\",\"nx\":" << grid.nx << ",\"ny\":" << grid.ny
              << ",\"unconverged_fraction\":" << w4::format_full(stats.unconverged_fraction)
              << ",\"unregistered_fraction\":" << w4::format_full(stats.unregistered_fraction)
              << ",\"root_fractions\":[";
    for (std::size_t k = 0; k < stats.root_fractions.size(); ++k) {
        if (k) std::cout << ",";
        std::cout << w4::format_full(stats.root_fractions[k]);
    }
    std::cout << "],\"mean_iterations_converged\":"
              << w4::format_full(stats.mean_iterations_converged) << "}\n";
    return kExitOk;
}

struct AnalyzeWOpts {
    std::string problem;
    std::string x;
    std::string precond = "udl";
    double dtau = 0.5;
};

int cmd_analyze_w_spectrum(const AnalyzeWOpts& opt) {
    const w4::Problem problem = w4::builtin(opt.problem);
    const w4::Vector point = parse_doubles(opt.x);
    if (point.size() != problem.dim) throw CLI::ValidationError("--x length must match problem dim");
    const w4::WSpectrum spec =
        w4::w_spectrum_check(problem.jacobian(point), w4::precond_from_string(opt.precond), opt.dtau);
    const bool pass = spec.max_abs_deviation < 1e-10;
    std::cout << "{\"eigenvalues\":[";
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (i) std::cout << ",";
        std::cout << "[" << w4::format_full(spec.eigenvalues[i].real()) << ","
                  << w4::format_full(spec.eigenvalues[i].imag()) << "]";
    }
    std::cout << "],\"target\":" << w4::format_full(1.0 - opt.dtau)
              << ",\"max_abs_deviation\":" << w4::format_full(spec.max_abs_deviation)
              << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
    return pass ? kExitOk : kExitNotConverged;
}

struct AnalyzeTraceOpts {
    std::string problem = "fproblem0";
    std::string method = "nr";
    std::string x0;
    double dtau = -1.0;
    double tol = 1e-6;
    int max_iter = 1000;
    std::string out_path;
};

int cmd_analyze_eigen_trace(const AnalyzeTraceOpts& opt) {
    const w4::Problem problem = w4::builtin(opt.problem);
    w4::SolverConfig config;
    config.method = w4::method_from_string(opt.method);
    config.dtau = opt.dtau < 0.0 ? default_dtau(config.method) : opt.dtau;
    config.tol = opt.tol;
    config.max_iter = opt.max_iter;
    const w4::EigenTrace trace = w4::eigen_trace(problem, config, parse_doubles(opt.x0));
    const std::string csv = w4::eigen_trace_to_csv(trace);
    if (opt.out_path.empty())
        std::cout << csv;
    else
        write_file(opt.out_path, csv);
    std::cerr << "status: " << w4::to_string(trace.status) << ", records: "
              << trace.records.size() << "\n";
    return kExitOk;
}

struct AnalyzeSeriesOpts {
    double y = -1.0;
    std::string xs;
};

int cmd_analyze_series(const AnalyzeSeriesOpts& opt) {
    const auto rows = w4::degeneracy_series_check(opt.y, parse_doubles(opt.xs));
    bool all_pass = true;
    std::cout << "x,dev_lambda_plus,dev_lambda_minus,dev_c_plus,dev_c_minus,bound,pass\n";
    for (const auto& r : rows) {
        const bool pass = r.dev_lambda_plus < r.bound && r.dev_lambda_minus < r.bound &&
                          r.dev_c_plus < r.bound && r.dev_c_minus < r.bound;
        all_pass = all_pass && pass;
        std::cout << w4::format_shortest(r.x) << ',' << w4::format_full(r.dev_lambda_plus) << ','
                  << w4::format_full(r.dev_lambda_minus) << ',' << w4::format_full(r.dev_c_plus)
                  << ',' << w4::format_full(r.dev_c_minus) << ',' << w4::format_full(r.bound)
                  << ',' << (pass ? "true" : "false") << '\n';
    }
    return all_pass ? kExitOk : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"W4 root-finding toolbox"};
    app.require_subcommand(1);

    SolveOpts solve_opts;
    auto* solve = app.add_subcommand("solve", "run one solve and print a JSON summary");
    solve->add_option("--problem", solve_opts.problem, "problem name")->required();
    solve->add_option("--method", solve_opts.method, "nr|dn|w4-udl|w4-eigen|dn-eigen");
    solve->add_option("--x0", solve_opts.x0, "initial guess, comma-separated")->required();
    solve->add_option("--dtau", solve_opts.dtau, "pseudo-time step (default 1 for nr, 0.5 otherwise)");
    solve->add_option("--tol", solve_opts.tol, "residual tolerance (default 1e-6)");
    solve->add_option("--max-iter", solve_opts.max_iter, "iteration cap (default 10000)");
    solve->add_option("--trace", solve_opts.trace_path, "write the iteration trace CSV here");

    TableOpts table_opts;
    auto* table = app.add_subcommand("table", "iteration-count table for a 1-D problem");
    table->add_option("--problem", table_opts.problem, "1-D problem name (default simple1d)");
    table->add_option("--methods", table_opts.methods, "comma-separated methods");
    table->add_option("--x0-list", table_opts.x0_list, "comma-separated initial guesses");
    table->add_option("--x0-range", table_opts.x0_range, "start:stop:step");
    table->add_option("--dtau", table_opts.dtau, "dtau for damped methods (default 0.5)");
    table->add_option("--tol", table_opts.tol, "residual tolerance (default 1e-6)");
    table->add_option("--max-iter", table_opts.max_iter, "iteration cap (default 10000)");
    table->add_option("--out", table_opts.out_path, "CSV output path (default stdout)");

    BasinOpts basin_opts;
    auto* basin = app.add_subcommand("basin", "Newton-basin scan over a rectangular grid");
    basin->add_option("--problem", basin_opts.problem, "2-D problem name")->required();
    basin->add_option("--method", basin_opts.method, "solver method (default w4-udl)");
    basin->add_option("--dtau", basin_opts.dtau, "pseudo-time step");
    basin->add_option("--tol", basin_opts.tol, "residual tolerance (default 1e-6)");
    basin->add_option("--max-iter", basin_opts.max_iter, "iteration cap (default 1000)");
    auto* xmin = basin->add_option("--xmin", basin_opts.xmin);
    basin->add_option("--xmax", basin_opts.xmax)->needs(xmin);
    basin->add_option("--ymin", basin_opts.ymin)->needs(xmin);
    basin->add_option("--ymax", basin_opts.ymax)->needs(xmin);
    basin->add_option("--nx", basin_opts.nx, "grid columns (default 200)");
    basin->add_option("--ny", basin_opts.ny, "grid rows (default 200)");
    basin->add_option("--pgm", basin_opts.pgm_path, "write a P5 PGM image here");
    basin->add_option("--csv", basin_opts.csv_path, "write per-cell CSV here");

    auto* analyze = app.add_subcommand("analyze", "spectral and asymptotic checks");
    analyze->require_subcommand(1);

    AnalyzeWOpts w_opts;
    auto* wspec = analyze->add_subcommand("w-spectrum", "spectrum of the W matrix at a point");
    wspec->add_option("--problem", w_opts.problem)->required();
    wspec->add_option("--x", w_opts.x, "evaluation point, comma-separated")->required();
    wspec->add_option("--precond", w_opts.precond, "udl|eigen|inverse (default udl)");
    wspec->add_option("--dtau", w_opts.dtau, "pseudo-time step (default 0.5)");

    AnalyzeTraceOpts trace_opts;
    auto* etrace = analyze->add_subcommand("eigen-trace", "Jacobian eigen-pairs along a run");
    etrace->add_option("--problem", trace_opts.problem, "dim-2 symmetric problem (default fproblem0)");
    etrace->add_option("--method", trace_opts.method, "solver method (default nr)");
    etrace->add_option("--x0", trace_opts.x0, "initial guess")->required();
    etrace->add_option("--dtau", trace_opts.dtau, "pseudo-time step");
    etrace->add_option("--tol", trace_opts.tol, "residual tolerance (default 1e-6)");
    etrace->add_option("--max-iter", trace_opts.max_iter, "iteration cap (default 1000)");
    etrace->add_option("--out", trace_opts.out_path, "CSV output path (default stdout)");

    AnalyzeSeriesOpts series_opts;
    auto* series = analyze->add_subcommand("series", "near-degeneracy expansion deviations");
    series->add_option("--y", series_opts.y, "fixed y (default -1)");
    series->add_option("--xs", series_opts.xs, "comma-separated x offsets")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_opts);
        if (*table) return cmd_table(table_opts);
        if (*basin) return cmd_basin(basin_opts);
        if (*wspec) return cmd_analyze_w_spectrum(w_opts);
        if (*etrace) return cmd_analyze_eigen_trace(trace_opts);
        if (*series) return cmd_analyze_series(series_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
