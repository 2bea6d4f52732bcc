#pragma once

#include "w4/linalg.hpp"
#include "w4/problems.hpp"
#include "w4/types.hpp"

namespace w4 {

/// One Newton or damped-Newton update: x - dtau * J^-1 F(x), computed by UDL
/// factor-and-solve rather than an explicit inverse. dtau = 1 is NR.
Vector nr_dn_step(const Problem& problem, const Vector& x, double dtau);

/// One update of the UDL-preconditioned second-order map:
///   x' = x + dtau L^-1 p
///   p' = (1 - 2 dtau) p - dtau D^-1 U^-1 F(x)
/// with all factors evaluated at x.
SolverState w4_udl_step(const Problem& problem, const SolverState& state, double dtau);

/// Second-order map preconditioned by the eigen-decomposition of a symmetric
/// 2x2 Jacobian: X = P, Y = Lambda^-1 P^-1 with P = [v+ v-] / det[v+ v-].
/// The lambda_minus entry of Lambda^-1 is replaced by 0 at degeneracy.
SolverState w4_eigen_step(const Problem& problem, const SolverState& state, double dtau);

/// Damped Newton through the same eigen-preconditioner:
/// x - dtau P Lambda^-1 P^-1 F(x).
Vector dn_eigen_step(const Problem& problem, const Vector& x, double dtau);

/// Fixed-point driver. Applies the configured step from x0 (momentum starts
/// at zero), records the full trace, and stops on residual < tol, a
/// non-finite state, a singular decomposition, or the iteration cap. The
/// initial state is checked too: a root as initial guess converges in zero
/// iterations.
SolverResult run(const Problem& problem, const SolverConfig& config, const Vector& x0);

}  // namespace w4
