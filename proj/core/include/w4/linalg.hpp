#pragma once

#include "w4/types.hpp"

namespace w4 {

/// Pivot magnitudes below this raise SingularDecomposition. The threshold is
/// deliberately tiny: the iteration is expected to traverse ill-conditioned
/// Jacobians, and only structural singularity should abort a step.
inline constexpr double kPivotFloor = 1e-300;

/// J = U * diag(d) * L with U unit upper triangular and L unit lower
/// triangular. Exists whenever the trailing principal minors are nonsingular.
struct UdlFactors {
    Matrix U;
    Vector d;
    Matrix L;
};

/// Gaussian elimination processed from the last row/column upward, so that
/// d[N-1] = A(N-1,N-1). No pivoting: row exchanges would silently change the
/// preconditioner the W4 map is defined with.
UdlFactors udl_decompose(const Matrix& a);

/// Forward substitution for unit lower triangular L: returns x with L x = b.
Vector solve_unit_lower(const Matrix& l, const Vector& b);

/// Backward substitution then diagonal scaling: returns diag(d)^-1 U^-1 b.
Vector solve_upper_diag(const Matrix& u, const Vector& d, const Vector& b);

/// Solves (U diag(d) L) x = b from an existing factorization.
Vector udl_solve(const UdlFactors& f, const Vector& b);

/// Explicit inverse of a unit lower triangular matrix (column-wise forward
/// substitution). Used only where a full preconditioner matrix is needed.
Matrix invert_unit_lower(const Matrix& l);

/// Explicit diag(d)^-1 U^-1.
Matrix invert_upper_diag(const Matrix& u, const Vector& d);

/// Eigen-pair of a symmetric 2x2 matrix. lambda_plus >= lambda_minus; the
/// eigenvectors are orthonormal with the sign pattern of (c, lambda - a) for
/// off-diagonal entry c and top-left entry a. c_plus/c_minus hold the inner
/// products v^T F when a residual is supplied, 0 otherwise.
struct Eigen2 {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    Vector v_plus;
    Vector v_minus;
    double c_plus = 0.0;
    double c_minus = 0.0;
};

/// Closed-form eigen-decomposition of a symmetric 2x2 matrix.
/// For an exactly zero off-diagonal entry the eigenvectors are axis-aligned
/// with lambda_plus assigned to the larger diagonal entry.
Eigen2 sym2_eigen(const Matrix& a);

/// sym2_eigen plus the expansion coefficients c_pm = v_pm . f.
Eigen2 sym2_eigen_with_coeffs(const Matrix& a, const Vector& f);

/// The 2Nx2N error-propagation matrix
///   [ I          -dtau X          ]
///   [ dtau Y J   (1 - 2 dtau) I   ].
Matrix assemble_w_matrix(const Matrix& j, const Matrix& x, const Matrix& y, double dtau);

}  // namespace w4
