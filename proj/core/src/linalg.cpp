#include "w4/linalg.hpp"

#include <cmath>

namespace w4 {

namespace {

void require_square(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

}  // namespace

UdlFactors udl_decompose(const Matrix& a) {
    require_square(a, "udl_decompose");
    const std::size_t n = a.rows();
    Matrix b = a;
    Matrix u = Matrix::identity(n);
    Matrix l = Matrix::identity(n);
    Vector d(n, 0.0);
    for (std::size_t kk = n; kk-- > 0;) {
        const double pivot = b(kk, kk);
        if (std::abs(pivot) < kPivotFloor)
            throw SingularDecomposition("udl_decompose: zero pivot at index " + std::to_string(kk));
        d[kk] = pivot;
        for (std::size_t j = 0; j < kk; ++j) l(kk, j) = b(kk, j) / pivot;
        for (std::size_t i = 0; i < kk; ++i) u(i, kk) = b(i, kk) / pivot;
        for (std::size_t i = 0; i < kk; ++i)
            for (std::size_t j = 0; j < kk; ++j) b(i, j) -= u(i, kk) * pivot * l(kk, j);
    }
    return {std::move(u), std::move(d), std::move(l)};
}

Vector solve_unit_lower(const Matrix& l, const Vector& b) {
    if (l.rows() != b.size()) throw std::invalid_argument("solve_unit_lower: shape mismatch");
    const std::size_t n = b.size();
    Vector x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t j = 0; j < i; ++j) s -= l(i, j) * x[j];
        x[i] = s;
    }
    return x;
}

Vector solve_upper_diag(const Matrix& u, const Vector& d, const Vector& b) {
    if (u.rows() != b.size() || d.size() != b.size())
        throw std::invalid_argument("solve_upper_diag: shape mismatch");
    const std::size_t n = b.size();
    Vector x(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= u(ii, j) * x[j];
        x[ii] = s;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d[i]) < kPivotFloor)
            throw SingularDecomposition("solve_upper_diag: zero diagonal at index " + std::to_string(i));
        x[i] /= d[i];
    }
    return x;
}

Vector udl_solve(const UdlFactors& f, const Vector& b) {
    return solve_unit_lower(f.L, solve_upper_diag(f.U, f.d, b));
}

Matrix invert_unit_lower(const Matrix& l) {
    const std::size_t n = l.rows();
    Matrix inv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        Vector e(n, 0.0);
        e[col] = 1.0;
        Vector x = solve_unit_lower(l, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

Matrix invert_upper_diag(const Matrix& u, const Vector& d) {
    const std::size_t n = u.rows();
    Matrix inv(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        Vector e(n, 0.0);
        e[col] = 1.0;
        Vector x = solve_upper_diag(u, d, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

Eigen2 sym2_eigen(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("sym2_eigen: matrix not 2x2");
    const double a = m(0, 0);
    const double b = m(1, 1);
    const double c = m(0, 1);

    Eigen2 out;
    out.v_plus.assign(2, 0.0);
    out.v_minus.assign(2, 0.0);

    if (c == 0.0) {
        // Degenerate off-diagonal: axis-aligned eigenvectors, lambda_plus on
        // the larger diagonal entry.
        if (a >= b) {
            out.lambda_plus = a;
            out.lambda_minus = b;
            out.v_plus = {1.0, 0.0};
            out.v_minus = {0.0, 1.0};
        } else {
            out.lambda_plus = b;
            out.lambda_minus = a;
            out.v_plus = {0.0, 1.0};
            out.v_minus = {1.0, 0.0};
        }
        return out;
    }

    const double tr = a + b;
    const double det = a * b - c * c;
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    // Compute the larger-magnitude root by the quadratic formula and the
    // other from the determinant to avoid cancellation.
    const double big = 0.5 * (tr + std::copysign(disc, tr));
    double lp, lm;
    if (big == 0.0) {
        lp = lm = 0.0;
    } else if (big > 0.0) {
        lp = big;
        lm = det / big;
    } else {
        lm = big;
        lp = det / big;
    }
    out.lambda_plus = lp;
    out.lambda_minus = lm;

    // Eigenvector components (c, lambda - a). The differences lambda_pm - a
    // satisfy up * um = -c^2; the larger one is computed directly, the other
    // through that identity so neither suffers cancellation.
    double up, um;
    if (a >= b) {
        um = 0.5 * ((b - a) - disc);
        up = -(c * c) / um;
    } else {
        up = 0.5 * ((b - a) + disc);
        um = -(c * c) / up;
    }
    const double np = std::hypot(c, up);
    const double nm = std::hypot(c, um);
    out.v_plus = {c / np, up / np};
    out.v_minus = {c / nm, um / nm};
    return out;
}

Eigen2 sym2_eigen_with_coeffs(const Matrix& m, const Vector& f) {
    Eigen2 e = sym2_eigen(m);
    e.c_plus = e.v_plus[0] * f[0] + e.v_plus[1] * f[1];
    e.c_minus = e.v_minus[0] * f[0] + e.v_minus[1] * f[1];
    return e;
}

Matrix assemble_w_matrix(const Matrix& j, const Matrix& x, const Matrix& y, double dtau) {
    require_square(j, "assemble_w_matrix");
    const std::size_t n = j.rows();
    if (x.rows() != n || x.cols() != n || y.rows() != n || y.cols() != n)
        throw std::invalid_argument("assemble_w_matrix: block shape mismatch");
    const Matrix yj = mat_mul(y, j);
    Matrix w(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        w(i, i) = 1.0;
        w(n + i, n + i) = 1.0 - 2.0 * dtau;
        for (std::size_t jj = 0; jj < n; ++jj) {
            w(i, n + jj) = -dtau * x(i, jj);
            w(n + i, jj) = dtau * yj(i, jj);
        }
    }
    return w;
}

}  // namespace w4
