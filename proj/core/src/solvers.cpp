#include "w4/solvers.hpp"

#include <cmath>

namespace w4 {

namespace {

// Relative threshold realizing the paper's "lambda_minus exactly zero" rule
// in floating point.
inline bool lambda_minus_degenerate(double lm, double lp) {
    return std::abs(lm) < 1e-14 * std::max(1.0, std::abs(lp));
}

struct EigenPrecond {
    Matrix p;         // [v+ v-] / det[v+ v-]
    Matrix p_inv;
    Vector lam_inv;   // diag of Lambda^-1 with the degeneracy rule applied
};

EigenPrecond eigen_precond(const Matrix& j) {
    const Eigen2 e = sym2_eigen(j);
    Matrix q(2, 2);
    q(0, 0) = e.v_plus[0];
    q(1, 0) = e.v_plus[1];
    q(0, 1) = e.v_minus[0];
    q(1, 1) = e.v_minus[1];
    const double dq = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);  // +-1 up to roundoff
    EigenPrecond out;
    out.p = Matrix(2, 2);
    out.p_inv = Matrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) out.p(i, k) = q(i, k) / dq;
    // (Q/dq)^-1 is exactly the adjugate of Q since det(Q/dq) = 1/dq.
    out.p_inv(0, 0) = q(1, 1);
    out.p_inv(0, 1) = -q(0, 1);
    out.p_inv(1, 0) = -q(1, 0);
    out.p_inv(1, 1) = q(0, 0);
    out.lam_inv = {std::abs(e.lambda_plus) < kPivotFloor ? 0.0 : 1.0 / e.lambda_plus,
                   lambda_minus_degenerate(e.lambda_minus, e.lambda_plus)
                       ? 0.0
                       : 1.0 / e.lambda_minus};
    return out;
}

void require_symmetric_2d(const Problem& problem, const char* who) {
    if (problem.dim != 2)
        throw std::invalid_argument(std::string(who) + ": eigen preconditioner requires dim = 2");
}

}  // namespace

Vector nr_dn_step(const Problem& problem, const Vector& x, double dtau) {
    const Vector fx = problem.residual(x);
    const Vector dx = udl_solve(udl_decompose(problem.jacobian(x)), fx);
    Vector out = x;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] -= dtau * dx[i];
    return out;
}

SolverState w4_udl_step(const Problem& problem, const SolverState& state, double dtau) {
    const UdlFactors f = udl_decompose(problem.jacobian(state.x));
    const Vector lp = solve_unit_lower(f.L, state.p);
    const Vector du_f = solve_upper_diag(f.U, f.d, problem.residual(state.x));
    SolverState next;
    next.x = state.x;
    next.p = state.p;
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        next.x[i] = state.x[i] + dtau * lp[i];
        next.p[i] = (1.0 - 2.0 * dtau) * state.p[i] - dtau * du_f[i];
    }
    return next;
}

SolverState w4_eigen_step(const Problem& problem, const SolverState& state, double dtau) {
    require_symmetric_2d(problem, "w4_eigen_step");
    const EigenPrecond pc = eigen_precond(problem.jacobian(state.x));
    const Vector fx = problem.residual(state.x);
    const Vector pp = mat_vec(pc.p, state.p);
    Vector yf = mat_vec(pc.p_inv, fx);
    yf[0] *= pc.lam_inv[0];
    yf[1] *= pc.lam_inv[1];
    SolverState next;
    next.x = {state.x[0] + dtau * pp[0], state.x[1] + dtau * pp[1]};
    next.p = {(1.0 - 2.0 * dtau) * state.p[0] - dtau * yf[0],
              (1.0 - 2.0 * dtau) * state.p[1] - dtau * yf[1]};
    return next;
}

Vector dn_eigen_step(const Problem& problem, const Vector& x, double dtau) {
    require_symmetric_2d(problem, "dn_eigen_step");
    const EigenPrecond pc = eigen_precond(problem.jacobian(x));
    Vector yf = mat_vec(pc.p_inv, problem.residual(x));
    yf[0] *= pc.lam_inv[0];
    yf[1] *= pc.lam_inv[1];
    const Vector step = mat_vec(pc.p, yf);
    return {x[0] - dtau * step[0], x[1] - dtau * step[1]};
}

SolverResult run(const Problem& problem, const SolverConfig& config, const Vector& x0) {
    config.validate();
    if (x0.size() != problem.dim) throw std::invalid_argument("run: x0 length != problem dim");
    if ((config.method == MethodKind::W4Eigen || config.method == MethodKind::DnEigen) &&
        problem.dim != 2)
        throw std::invalid_argument("run: eigen methods require a dim-2 symmetric problem");

    SolverResult result;
    SolverState state;
    state.x = x0;
    if (!is_first_order(config.method)) state.p.assign(problem.dim, 0.0);

    double res = residual_inf_norm(problem.residual(state.x));
    result.trace.push_back({0, state.x, state.p, res});
    if (res < config.tol) {
        result.status = Status::Converged;
        result.final_state = state;
        result.iterations = 0;
        return result;
    }
    if (!all_finite(state.x) || !std::isfinite(res)) {
        result.status = Status::Diverged;
        result.final_state = state;
        result.iterations = 0;
        return result;
    }

    Status status = Status::MaxIterExceeded;
    for (int it = 1; it <= config.max_iter; ++it) {
        try {
            switch (config.method) {
                case MethodKind::NR:
                case MethodKind::DN:
                    state.x = nr_dn_step(problem, state.x, config.dtau);
                    break;
                case MethodKind::W4Udl:
                    state = w4_udl_step(problem, state, config.dtau);
                    break;
                case MethodKind::W4Eigen:
                    state = w4_eigen_step(problem, state, config.dtau);
                    break;
                case MethodKind::DnEigen:
                    state.x = dn_eigen_step(problem, state.x, config.dtau);
                    break;
            }
        } catch (const SingularDecomposition&) {
            status = Status::SingularDecomposition;
            break;
        }
        res = residual_inf_norm(problem.residual(state.x));
        result.trace.push_back({it, state.x, state.p, res});
        if (!all_finite(state.x) || !all_finite(state.p) || !std::isfinite(res)) {
            status = Status::Diverged;
            break;
        }
        if (res < config.tol) {
            status = Status::Converged;
            break;
        }
    }
    result.status = status;
    result.final_state = state;
    result.iterations = static_cast<int>(result.trace.size()) - 1;
    return result;
}

}  // namespace w4
