#include "w4/problems.hpp"

#include <cmath>

#include "w4/linalg.hpp"

namespace w4 {

namespace {

// Plain Newton polish used to refine the literature's 8-significant-figure
// root values to full double precision, so classification tolerances do not
// inherit truncation error.
Vector refine_root(const ResidualFn& f, const JacobianFn& j, Vector x) {
    for (int it = 0; it < 50; ++it) {
        Vector fx = f(x);
        if (residual_inf_norm(fx) < 1e-14) break;
        Vector dx = udl_solve(udl_decompose(j(x)), fx);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dx[i];
    }
    return x;
}

Problem make_simple1d() {
    Problem p;
    p.name = "simple1d";
    p.dim = 1;
    p.residual = [](const Vector& v) -> Vector {
        return {std::atan(v[0]) + std::sin(v[0]) - 1.0};
    };
    p.jacobian = [](const Vector& v) -> Matrix {
        Matrix j(1, 1);
        j(0, 0) = 1.0 / (1.0 + v[0] * v[0]) + std::cos(v[0]);
        return j;
    };
    p.known_roots = {refine_root(p.residual, p.jacobian, {0.5348})};
    p.default_domain = {{-3.0, 3.0}};
    return p;
}

Problem make_simple2d() {
    Problem p;
    p.name = "simple2d";
    p.dim = 2;
    p.residual = [](const Vector& v) -> Vector {
        const double x = v[0], y = v[1];
        return {x * x + y * y - 4.0, x * x * y - 1.0};
    };
    p.jacobian = [](const Vector& v) -> Matrix {
        const double x = v[0], y = v[1];
        Matrix j(2, 2);
        j(0, 0) = 2.0 * x;
        j(0, 1) = 2.0 * y;
        j(1, 0) = 2.0 * x * y;
        j(1, 1) = x * x;
        return j;
    };
    // The system is even in x: refine the positive-x roots and mirror them
    // exactly so the basin symmetry holds bitwise.
    Vector r1 = refine_root(p.residual, p.jacobian, {1.9837924, 0.25410169});
    Vector r3 = refine_root(p.residual, p.jacobian, {0.73307679, 1.8608059});
    p.known_roots = {r1, {-r1[0], r1[1]}, r3, {-r3[0], r3[1]}};
    p.default_domain = {{-5.0, 5.0}, {-5.0, 5.0}};
    return p;
}

Problem make_oproblem() {
    Problem p;
    p.name = "oproblem";
    p.dim = 2;
    p.residual = [](const Vector& v) -> Vector {
        const double x = v[0], y = v[1];
        return {x * x - y * y - 4.0 * x + 6.0, 2.0 * x * y + 4.0 * y - 2.0};
    };
    p.jacobian = [](const Vector& v) -> Matrix {
        const double x = v[0], y = v[1];
        Matrix j(2, 2);
        j(0, 0) = 2.0 * x - 4.0;
        j(0, 1) = -2.0 * y;
        j(1, 0) = 2.0 * y;
        j(1, 1) = 2.0 * x + 4.0;
        return j;
    };
    p.known_roots = {refine_root(p.residual, p.jacobian, {-1.7505169, 4.0082886}),
                     refine_root(p.residual, p.jacobian, {-2.2244718, -4.4549031})};
    p.default_domain = {{-10.0, 10.0}, {-10.0, 10.0}};
    return p;
}

Problem make_fproblem0() {
    Problem p;
    p.name = "fproblem0";
    p.dim = 2;
    p.residual = [](const Vector& v) -> Vector {
        const double x = v[0], y = v[1];
        return {x * x + x * y * y - 4.0, x * x * y - 1.0};
    };
    p.jacobian = [](const Vector& v) -> Matrix {
        const double x = v[0], y = v[1];
        Matrix j(2, 2);
        j(0, 0) = 2.0 * x + y * y;
        j(0, 1) = 2.0 * x * y;
        j(1, 0) = 2.0 * x * y;
        j(1, 1) = x * x;
        return j;
    };
    p.known_roots = {refine_root(p.residual, p.jacobian, {-2.0296789, 0.24274223}),
                     refine_root(p.residual, p.jacobian, {1.9668697, 0.25849302}),
                     refine_root(p.residual, p.jacobian, {0.65417501, 2.3367492})};
    p.default_domain = {{-5.0, 5.0}, {-5.0, 5.0}};
    return p;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"simple1d", "simple2d", "oproblem", "fproblem0"};
    return names;
}

Problem builtin(const std::string& name) {
    if (name == "simple1d") return make_simple1d();
    if (name == "simple2d") return make_simple2d();
    if (name == "oproblem") return make_oproblem();
    if (name == "fproblem0") return make_fproblem0();
    std::string msg = "unknown problem '" + name + "' (valid:";
    for (const auto& n : builtin_names()) msg += " " + n;
    throw std::invalid_argument(msg + ")");
}

Matrix fd_jacobian(const ResidualFn& residual, const Vector& x, double h) {
    const std::size_t n = x.size();
    Matrix j(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const double step = h * std::max(1.0, std::abs(x[col]));
        Vector xp = x, xm = x;
        xp[col] += step;
        xm[col] -= step;
        const Vector fp = residual(xp);
        const Vector fm = residual(xm);
        for (std::size_t row = 0; row < n; ++row) j(row, col) = (fp[row] - fm[row]) / (2.0 * step);
    }
    return j;
}

Problem make_problem(std::string name, std::size_t dim, ResidualFn residual) {
    Problem p;
    p.name = std::move(name);
    p.dim = dim;
    p.residual = residual;
    p.jacobian = [residual](const Vector& x) { return fd_jacobian(residual, x); };
    return p;
}

}  // namespace w4
