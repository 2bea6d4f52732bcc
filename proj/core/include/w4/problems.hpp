#pragma once

#include <functional>
#include <string>
#include <vector>

#include "w4/types.hpp"

namespace w4 {

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

struct AxisBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// A nonlinear system F(x) = 0 with analytic Jacobian, its known roots
/// (refined well past the residual tolerance), and the default rectangle for
/// basin scans. Residual and Jacobian evaluation are re-entrant.
struct Problem {
    std::string name;
    std::size_t dim = 0;
    ResidualFn residual;
    JacobianFn jacobian;
    std::vector<Vector> known_roots;
    std::vector<AxisBounds> default_domain;
};

/// Benchmark systems by stable identifier: simple1d, simple2d, oproblem,
/// fproblem0. Throws std::invalid_argument for an unknown name, listing the
/// valid ones.
Problem builtin(const std::string& name);

const std::vector<std::string>& builtin_names();

/// Central-difference Jacobian, column by column with step h * max(1, |x_j|).
Matrix fd_jacobian(const ResidualFn& residual, const Vector& x, double h = 1e-6);

/// Wraps a user-supplied residual; the Jacobian falls back to central
/// differences.
Problem make_problem(std::string name, std::size_t dim, ResidualFn residual);

}  // namespace w4
