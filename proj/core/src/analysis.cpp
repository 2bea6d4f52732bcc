#include "w4/analysis.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <sstream>

#include "w4/linalg.hpp"
#include "w4/solvers.hpp"

namespace w4 {

const char* to_string(PrecondKind p) {
    switch (p) {
        case PrecondKind::UDL: return "udl";
        case PrecondKind::EIGEN: return "eigen";
        case PrecondKind::INVERSE: return "inverse";
    }
    return "?";
}

PrecondKind precond_from_string(const std::string& name) {
    if (name == "udl") return PrecondKind::UDL;
    if (name == "eigen") return PrecondKind::EIGEN;
    if (name == "inverse") return PrecondKind::INVERSE;
    throw std::invalid_argument("unknown preconditioner '" + name +
                                "' (valid: udl, eigen, inverse)");
}

namespace {

// The W matrix with Y = X^-1 J^-1 is defective: every eigenvalue equals
// 1 - dtau with 2x2 Jordan blocks, so perturbations of size eps in the matrix
// entries split the computed eigenvalues by roughly sqrt(eps).  Double
// precision therefore cannot resolve the spectrum better than ~1e-8.  The
// whole pipeline (preconditioner factors, W assembly, eigensolve) runs in
// 50-digit floats so that the reported spectrum reflects the exact one.
using Mp = boost::multiprecision::cpp_bin_float_50;
using MpMatrix = Eigen::Matrix<Mp, Eigen::Dynamic, Eigen::Dynamic>;

MpMatrix to_mp(const Matrix& m) {
    MpMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Mp(m(i, j));
    return out;
}

// X = L^-1, Y = (U diag(d))^-1 from the bottom-right-first triangular
// factorization A = U diag(d) L, mirroring the double-precision path.
std::pair<MpMatrix, MpMatrix> mp_udl_xy(const MpMatrix& a) {
    const Eigen::Index n = a.rows();
    MpMatrix b = a;
    MpMatrix u = MpMatrix::Identity(n, n);
    MpMatrix l = MpMatrix::Identity(n, n);
    Eigen::Matrix<Mp, Eigen::Dynamic, 1> d(n);
    for (Eigen::Index kk = n - 1; kk >= 0; --kk) {
        const Mp pivot = b(kk, kk);
        if (abs(pivot) < Mp(kPivotFloor))
            throw SingularDecomposition("triangular factorization hit a zero pivot");
        d(kk) = pivot;
        for (Eigen::Index jcol = 0; jcol < kk; ++jcol) l(kk, jcol) = b(kk, jcol) / pivot;
        for (Eigen::Index irow = 0; irow < kk; ++irow) u(irow, kk) = b(irow, kk) / pivot;
        for (Eigen::Index irow = 0; irow < kk; ++irow)
            for (Eigen::Index jcol = 0; jcol < kk; ++jcol)
                b(irow, jcol) -= u(irow, kk) * pivot * l(kk, jcol);
    }
    MpMatrix ud = u;
    for (Eigen::Index col = 0; col < n; ++col) ud.col(col) *= d(col);
    return {l.inverse(), ud.inverse()};
}

// X = P, Y = Lambda^-1 P^-1 from the analytic eigen-decomposition of a
// symmetric 2x2 Jacobian, with P = Q / det(Q).
std::pair<MpMatrix, MpMatrix> mp_eigen_xy(const MpMatrix& j) {
    const Mp a = j(0, 0), c = j(0, 1), dd = j(1, 1);
    if (c != j(1, 0))
        throw std::invalid_argument("eigen preconditioner requires a symmetric Jacobian");
    MpMatrix q(2, 2);
    Mp lam_plus, lam_minus;
    if (c == 0) {
        lam_plus = a >= dd ? a : dd;
        lam_minus = a >= dd ? dd : a;
        q = MpMatrix::Identity(2, 2);
        if (a < dd) {
            q(0, 0) = 0; q(1, 0) = 1; q(0, 1) = 1; q(1, 1) = 0;
        }
    } else {
        const Mp half_tr = (a + dd) / 2;
        const Mp disc = sqrt(half_tr * half_tr - (a * dd - c * c));
        lam_plus = half_tr + disc;
        lam_minus = half_tr - disc;
        const Mp np = sqrt(c * c + (lam_plus - a) * (lam_plus - a));
        const Mp nm = sqrt(c * c + (lam_minus - a) * (lam_minus - a));
        q(0, 0) = c / np;
        q(1, 0) = (lam_plus - a) / np;
        q(0, 1) = c / nm;
        q(1, 1) = (lam_minus - a) / nm;
    }
    if (abs(lam_plus) < Mp(kPivotFloor) || abs(lam_minus) < Mp(kPivotFloor))
        throw SingularDecomposition("eigen preconditioner: zero eigenvalue");
    const Mp dq = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
    MpMatrix p = q / dq;
    MpMatrix adj(2, 2);
    adj(0, 0) = q(1, 1);
    adj(0, 1) = -q(0, 1);
    adj(1, 0) = -q(1, 0);
    adj(1, 1) = q(0, 0);
    MpMatrix y(2, 2);
    y.row(0) = adj.row(0) / lam_plus;
    y.row(1) = adj.row(1) / lam_minus;
    return {p, y};
}

}  // namespace

WSpectrum w_spectrum_check(const Matrix& j, PrecondKind preconditioner, double dtau) {
    const MpMatrix jm = to_mp(j);
    MpMatrix x, y;
    switch (preconditioner) {
        case PrecondKind::UDL:
            std::tie(x, y) = mp_udl_xy(jm);
            break;
        case PrecondKind::EIGEN:
            if (j.rows() != 2)
                throw std::invalid_argument("eigen preconditioner requires a 2x2 Jacobian");
            std::tie(x, y) = mp_eigen_xy(jm);
            break;
        case PrecondKind::INVERSE:
            x = MpMatrix::Identity(jm.rows(), jm.cols());
            y = jm.fullPivLu().inverse();
            break;
    }
    const Eigen::Index n = jm.rows();
    const Mp dt(dtau);
    MpMatrix w = MpMatrix::Zero(2 * n, 2 * n);
    w.topLeftCorner(n, n) = MpMatrix::Identity(n, n);
    w.topRightCorner(n, n) = -dt * x;
    w.bottomLeftCorner(n, n) = dt * (y * jm);
    w.bottomRightCorner(n, n) = (1 - 2 * dt) * MpMatrix::Identity(n, n);

    Eigen::EigenSolver<MpMatrix> solver(w, /*computeEigenvectors=*/false);
    const Mp target = 1 - dt;
    WSpectrum out;
    out.eigenvalues.reserve(static_cast<std::size_t>(2 * n));
    Mp worst = 0;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        const auto lam = solver.eigenvalues()(i);
        const Mp dev = sqrt((lam.real() - target) * (lam.real() - target) +
                            lam.imag() * lam.imag());
        worst = std::max(worst, dev, [](const Mp& lhs, const Mp& rhs) { return lhs < rhs; });
        out.eigenvalues.emplace_back(static_cast<double>(lam.real()),
                                     static_cast<double>(lam.imag()));
    }
    out.max_abs_deviation = static_cast<double>(worst);
    return out;
}

EigenTrace eigen_trace(const Problem& problem, const SolverConfig& config, const Vector& x0) {
    if (problem.dim != 2) throw std::invalid_argument("eigen_trace: problem must be dim-2");
    const SolverResult result = run(problem, config, x0);
    EigenTrace trace;
    trace.status = result.status;
    trace.records.reserve(result.trace.size());
    for (const auto& rec : result.trace) {
        if (!all_finite(rec.x)) break;
        const Eigen2 e = sym2_eigen_with_coeffs(problem.jacobian(rec.x), problem.residual(rec.x));
        EigenTraceRecord r;
        r.iter = rec.iter;
        r.lambda_plus = e.lambda_plus;
        r.lambda_minus = e.lambda_minus;
        r.ratio = e.lambda_plus == 0.0 ? std::numeric_limits<double>::infinity()
                                       : std::abs(e.lambda_minus / e.lambda_plus);
        r.c_plus = e.c_plus;
        r.c_minus = e.c_minus;
        trace.records.push_back(r);
    }
    return trace;
}

std::string eigen_trace_to_csv(const EigenTrace& trace) {
    std::ostringstream out;
    out << "iter,lambda_plus,lambda_minus,ratio,c_plus,c_minus\n";
    for (const auto& r : trace.records) {
        out << r.iter << ',' << format_full(r.lambda_plus) << ',' << format_full(r.lambda_minus)
            << ',' << format_full(r.ratio) << ',' << format_full(r.c_plus) << ','
            << format_full(r.c_minus) << '\n';
    }
    return out.str();
}

std::vector<SeriesDeviation> degeneracy_series_check(double y_fixed,
                                                     const std::vector<double>& xs) {
    if (y_fixed == 0.0) throw std::invalid_argument("degeneracy_series_check: y_fixed must be nonzero");
    const Problem problem = builtin("fproblem0");
    const double y = y_fixed;
    std::vector<SeriesDeviation> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const Vector point = {x, y};
        const Eigen2 e =
            sym2_eigen_with_coeffs(problem.jacobian(point), problem.residual(point));
        SeriesDeviation d;
        d.x = x;
        d.dev_lambda_plus = std::abs(e.lambda_plus - (y * y + 2.0 * x + 4.0 * x * x));
        d.dev_lambda_minus = std::abs(e.lambda_minus - (-3.0 * x * x));
        d.dev_c_plus = std::abs(std::abs(e.c_plus) - std::abs(4.0 + (-y * y + 2.0 / y) * x));
        d.dev_c_minus = std::abs(std::abs(e.c_minus) - std::abs(1.0 - 8.0 * x / y));
        d.bound = kSeriesBoundC * std::abs(x) * std::abs(x) * std::abs(x);
        out.push_back(d);
    }
    return out;
}

}  // namespace w4
