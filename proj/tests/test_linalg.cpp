#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "w4/linalg.hpp"

using namespace w4;

namespace {

Matrix make(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

// Reconstruction oracle: U * diag(d) * L, compared entrywise to the input.
Matrix reconstruct(const UdlFactors& f) {
    const std::size_t n = f.d.size();
    Matrix ud = f.U;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) ud(i, j) *= f.d[j];
    return mat_mul(ud, f.L);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double inf_norm(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

}  // namespace

TEST_CASE("udl_decompose identity") {
    const UdlFactors f = udl_decompose(Matrix::identity(2));
    CHECK(f.d[0] == 1.0);
    CHECK(f.d[1] == 1.0);
    CHECK(max_abs_diff(f.U, Matrix::identity(2)) == 0.0);
    CHECK(max_abs_diff(f.L, Matrix::identity(2)) == 0.0);
}

TEST_CASE("udl_decompose 2x2 worked example") {
    // [[2,2],[2,1]]: elimination from the bottom-right pins d = (-2, 1).
    const Matrix a = make({{2, 2}, {2, 1}});
    const UdlFactors f = udl_decompose(a);
    CHECK(f.d[0] == doctest::Approx(-2.0));
    CHECK(f.d[1] == doctest::Approx(1.0));
    CHECK(f.U(0, 1) == doctest::Approx(2.0));
    CHECK(f.L(1, 0) == doctest::Approx(2.0));
    CHECK(max_abs_diff(reconstruct(f), a) < 1e-14);
}

TEST_CASE("udl_decompose rejects a zero trailing pivot") {
    CHECK_THROWS_AS(udl_decompose(make({{0.0, 2.0}, {0.0, 0.0}})), SingularDecomposition);
}

TEST_CASE("udl_decompose random reconstruction") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_int_distribution<int> dim(1, 8);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = static_cast<std::size_t>(dim(rng));
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
        try {
            const UdlFactors f = udl_decompose(a);
            CHECK(max_abs_diff(reconstruct(f), a) / inf_norm(a) < 1e-12);
            ++checked;
        } catch (const SingularDecomposition&) {
            // random matrices with a singular trailing minor are excluded
        }
    }
    CHECK(checked > 990);
}

TEST_CASE("solve_unit_lower") {
    CHECK(solve_unit_lower(Matrix::identity(2), {3.0, 4.0}) == Vector{3.0, 4.0});
    const Vector x = solve_unit_lower(make({{1, 0}, {2, 1}}), {1.0, 0.0});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(-2.0));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix l = Matrix::identity(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < i; ++j) l(i, j) = u(rng);
        Vector b(4);
        for (double& v : b) v = u(rng);
        const Vector sol = solve_unit_lower(l, b);
        const Vector back = mat_vec(l, sol);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back[i] - b[i]) < 1e-13);
    }
}

TEST_CASE("solve_upper_diag") {
    CHECK(solve_upper_diag(Matrix::identity(2), {1.0, 1.0}, {5.0, 6.0}) == Vector{5.0, 6.0});

    // U^-1 b = (-6, 3), then scaled by diag(-2, 1)^-1
    const Vector x = solve_upper_diag(make({{1, 2}, {0, 1}}), {-2.0, 1.0}, {0.0, 3.0});
    CHECK(x[0] == doctest::Approx(3.0));
    CHECK(x[1] == doctest::Approx(3.0));

    CHECK_THROWS_AS(solve_upper_diag(Matrix::identity(2), {1.0, 0.0}, {1.0, 1.0}),
                    SingularDecomposition);
}

TEST_CASE("udl_solve solves the original system") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix a(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) a(i, j) = u(rng) + (i == j ? 4.0 : 0.0);
        Vector b(3);
        for (double& v : b) v = u(rng);
        const Vector x = udl_solve(udl_decompose(a), b);
        const Vector back = mat_vec(a, x);
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(back[i] - b[i]) < 1e-12);
    }
}

TEST_CASE("triangular inverses multiply back to identity") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Matrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = u(rng) + (i == j ? 5.0 : 0.0);
    const UdlFactors f = udl_decompose(a);
    CHECK(max_abs_diff(mat_mul(invert_unit_lower(f.L), f.L), Matrix::identity(4)) < 1e-13);

    Matrix ud = f.U;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) ud(i, j) *= f.d[j];
    CHECK(max_abs_diff(mat_mul(invert_upper_diag(f.U, f.d), ud), Matrix::identity(4)) < 1e-12);
}

TEST_CASE("sym2_eigen worked examples") {
    const Eigen2 e1 = sym2_eigen(make({{2, 1}, {1, 2}}));
    CHECK(e1.lambda_plus == doctest::Approx(3.0));
    CHECK(e1.lambda_minus == doctest::Approx(1.0));
    CHECK(e1.v_plus[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(e1.v_plus[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    const Eigen2 e2 = sym2_eigen(make({{3, 2}, {2, 1}}));
    CHECK(e2.lambda_plus == doctest::Approx(2.0 + std::sqrt(5.0)).epsilon(1e-12));
    CHECK(e2.lambda_minus == doctest::Approx(2.0 - std::sqrt(5.0)).epsilon(1e-12));

    const Eigen2 e3 = sym2_eigen(Matrix::identity(2));
    CHECK(e3.lambda_plus == 1.0);
    CHECK(e3.lambda_minus == 1.0);
    CHECK(e3.v_plus == Vector{1.0, 0.0});
    CHECK(e3.v_minus == Vector{0.0, 1.0});
}

TEST_CASE("sym2_eigen random properties") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        Matrix a(2, 2);
        a(0, 0) = u(rng);
        a(1, 1) = u(rng);
        a(0, 1) = a(1, 0) = u(rng);
        const Eigen2 e = sym2_eigen(a);
        CHECK(e.lambda_plus >= e.lambda_minus);
        CHECK(std::abs(e.v_plus[0] * e.v_minus[0] + e.v_plus[1] * e.v_minus[1]) < 1e-12);
        for (const auto& [v, lam] :
             {std::pair{e.v_plus, e.lambda_plus}, std::pair{e.v_minus, e.lambda_minus}}) {
            const Vector jv = mat_vec(a, v);
            CHECK(std::abs(jv[0] - lam * v[0]) < 1e-10);
            CHECK(std::abs(jv[1] - lam * v[1]) < 1e-10);
            CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("assemble_w_matrix scalar blocks") {
    const Matrix w = assemble_w_matrix(make({{1}}), make({{1}}), make({{1}}), 0.5);
    CHECK(w(0, 0) == 1.0);
    CHECK(w(0, 1) == -0.5);
    CHECK(w(1, 0) == 0.5);
    CHECK(w(1, 1) == 0.0);
}

TEST_CASE("assemble_w_matrix block structure") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Matrix j(2, 2), x(2, 2), y(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            j(i, k) = u(rng);
            x(i, k) = u(rng);
            y(i, k) = u(rng);
        }
    const double dtau = 0.3;
    const Matrix w = assemble_w_matrix(j, x, y, dtau);
    const Matrix yj = mat_mul(y, j);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(w(i, k) == (i == k ? 1.0 : 0.0));
            CHECK(w(i, 2 + k) == -dtau * x(i, k));
            CHECK(w(2 + i, k) == dtau * yj(i, k));
            CHECK(w(2 + i, 2 + k) == (i == k ? 1.0 - 2.0 * dtau : 0.0));
        }
}

TEST_CASE("assemble_w_matrix spectrum collapses for Y = X^-1 J^-1") {
    // Double-precision eigensolve of this defective matrix resolves the
    // eigenvalues only to about sqrt(machine eps); the tight spectral bound
    // is asserted through the extended-precision w_spectrum_check path.
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Eigen::Matrix2d jd;
    do {
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) jd(i, k) = u(rng);
    } while (std::abs(jd.determinant()) < 0.3);
    const Eigen::Matrix2d yd = jd.inverse();
    Matrix j(2, 2), y(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) {
            j(i, k) = jd(static_cast<int>(i), static_cast<int>(k));
            y(i, k) = yd(static_cast<int>(i), static_cast<int>(k));
        }
    const Matrix w = assemble_w_matrix(j, Matrix::identity(2), y, 0.3);
    Eigen::Matrix4d wd;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) wd(i, k) = w(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    const Eigen::EigenSolver<Eigen::Matrix4d> es(wd, false);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(es.eigenvalues()(i) - std::complex<double>(0.7, 0.0)) < 1e-6);
}
