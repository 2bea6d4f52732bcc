#include "w4/basin.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "w4/solvers.hpp"

namespace w4 {

int classify(const Vector& x_final, const std::vector<Vector>& roots, Status status) {
    if (status != Status::Converged) return 0;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < roots.size(); ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < x_final.size(); ++i) {
            const double d = x_final[i] - roots[k][i];
            s += d * d;
        }
        const double dist = std::sqrt(s);
        if (dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(k);
        }
    }
    return best_dist < kClassifyRadius ? best + 1 : -1;
}

Vector cell_center(const std::vector<AxisBounds>& domain, int nx, int ny, int i, int j) {
    const double dx = (domain[0].hi - domain[0].lo) / nx;
    const double dy = (domain[1].hi - domain[1].lo) / ny;
    return {domain[0].lo + (i + 0.5) * dx, domain[1].lo + (j + 0.5) * dy};
}

BasinGrid compute_basin(const Problem& problem, const SolverConfig& config,
                        const std::vector<AxisBounds>& domain, int nx, int ny) {
    if (problem.dim != 2) throw std::invalid_argument("compute_basin: problem must be 2-D");
    if (nx < 2 || ny < 2) throw std::invalid_argument("compute_basin: grid must be at least 2x2");
    config.validate();

    BasinGrid grid;
    grid.domain = domain;
    grid.nx = nx;
    grid.ny = ny;
    grid.labels.assign(static_cast<std::size_t>(nx) * ny, 0);
    grid.iters.assign(static_cast<std::size_t>(nx) * ny, 0);

    const auto run_cell = [&](int i, int j) {
        const std::size_t idx = static_cast<std::size_t>(i) * ny + j;
        try {
            const SolverResult r = run(problem, config, cell_center(domain, nx, ny, i, j));
            grid.labels[idx] = classify(r.final_state.x, problem.known_roots, r.status);
            grid.iters[idx] = r.iterations;
        } catch (const std::exception&) {
            grid.labels[idx] = 0;
            grid.iters[idx] = config.max_iter;
        }
    };

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(nx));
    if (workers <= 1) {
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) run_cell(i, j);
        return grid;
    }
    // Static column partition: every cell writes its own slot, so the result
    // does not depend on the schedule.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = static_cast<int>(w); i < nx; i += static_cast<int>(workers))
                for (int j = 0; j < ny; ++j) run_cell(i, j);
        });
    }
    for (auto& t : pool) t.join();
    return grid;
}

BasinStats basin_stats(const BasinGrid& grid) {
    int max_label = 0;
    for (int l : grid.labels) max_label = std::max(max_label, l);
    BasinStats st;
    st.root_fractions.assign(max_label, 0.0);
    const double total = static_cast<double>(grid.labels.size());
    long converged = 0;
    long iter_sum = 0;
    for (std::size_t idx = 0; idx < grid.labels.size(); ++idx) {
        const int l = grid.labels[idx];
        if (l == 0) {
            st.unconverged_fraction += 1.0;
        } else {
            if (l == -1)
                st.unregistered_fraction += 1.0;
            else
                st.root_fractions[l - 1] += 1.0;
            ++converged;
            iter_sum += grid.iters[idx];
        }
    }
    st.unconverged_fraction /= total;
    st.unregistered_fraction /= total;
    for (double& f : st.root_fractions) f /= total;
    st.mean_iterations_converged = converged > 0 ? static_cast<double>(iter_sum) / converged : 0.0;
    return st;
}

std::string basin_to_pgm(const BasinGrid& grid, int root_count) {
    std::ostringstream out;
    out << "P5\n" << grid.nx << " " << grid.ny << "\n255\n";
    // Raster order: top row first, so j runs from ny-1 down.
    for (int j = grid.ny - 1; j >= 0; --j) {
        for (int i = 0; i < grid.nx; ++i) {
            const int l = grid.label(i, j);
            unsigned char gray = 0;
            if (l == -1)
                gray = 32;
            else if (l >= 1)
                gray = static_cast<unsigned char>(std::lround(255.0 * l / root_count));
            out.put(static_cast<char>(gray));
        }
    }
    return out.str();
}

std::string basin_to_csv(const BasinGrid& grid) {
    std::ostringstream out;
    out << "i,j,x0,y0,label,iters\n";
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j) {
            const Vector c = cell_center(grid.domain, grid.nx, grid.ny, i, j);
            out << i << ',' << j << ',' << format_shortest(c[0]) << ',' << format_shortest(c[1])
                << ',' << grid.label(i, j) << ',' << grid.iter_count(i, j) << '\n';
        }
    return out.str();
}

}  // namespace w4
