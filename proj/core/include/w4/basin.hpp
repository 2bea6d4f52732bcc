#pragma once

#include <string>
#include <vector>

#include "w4/problems.hpp"
#include "w4/types.hpp"

namespace w4 {

/// Grid of initial guesses with per-cell outcome labels.
/// Label 0: unconverged or diverged. Label k >= 1: converged to
/// known_roots[k-1]. Label -1: converged to an unregistered point.
struct BasinGrid {
    std::vector<AxisBounds> domain;  // x then y
    int nx = 0;
    int ny = 0;
    std::vector<int> labels;  // row-major, index i * ny + j
    std::vector<int> iters;

    int label(int i, int j) const { return labels[static_cast<std::size_t>(i) * ny + j]; }
    int iter_count(int i, int j) const { return iters[static_cast<std::size_t>(i) * ny + j]; }
};

/// Euclidean radius inside which a converged endpoint is attributed to a
/// registered root. Tight enough to separate the closest root pair of any
/// builtin, loose enough for tol = 1e-6 convergence to land inside.
inline constexpr double kClassifyRadius = 1e-3;

int classify(const Vector& x_final, const std::vector<Vector>& roots, Status status);

/// Runs the configured solver from the center of every cell of a uniform
/// nx-by-ny grid over `domain`. Cells are evaluated concurrently; the result
/// is schedule-independent. Per-cell failures become label 0.
BasinGrid compute_basin(const Problem& problem, const SolverConfig& config,
                        const std::vector<AxisBounds>& domain, int nx, int ny);

struct BasinStats {
    double unconverged_fraction = 0.0;          // label 0
    double unregistered_fraction = 0.0;         // label -1
    std::vector<double> root_fractions;         // labels 1..K
    double mean_iterations_converged = 0.0;     // over labels != 0
};

BasinStats basin_stats(const BasinGrid& grid);

/// P5 binary PGM, maxval 255: label 0 -> 0, labels 1..K evenly spaced as
/// round(255 k / K), label -1 -> 32.
std::string basin_to_pgm(const BasinGrid& grid, int root_count);

/// CSV `i,j,x0,y0,label,iters` in row-major order, header included.
std::string basin_to_csv(const BasinGrid& grid);

/// Initial guess at the center of cell (i, j).
Vector cell_center(const std::vector<AxisBounds>& domain, int nx, int ny, int i, int j);

}  // namespace w4
