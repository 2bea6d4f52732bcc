#include <doctest.h>

#include <cmath>
#include <random>

#include "w4/analysis.hpp"
#include "w4/linalg.hpp"
#include "w4/solvers.hpp"

using namespace w4;

namespace {

Matrix random_nonsingular(std::mt19937& rng, std::size_t n, bool symmetric) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (;;) {
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = symmetric ? i : 0; j < n; ++j) {
                a(i, j) = u(rng);
                if (symmetric) a(j, i) = a(i, j);
            }
        // reject near-singular draws and ones without a UDL factorization
        try {
            const UdlFactors f = udl_decompose(a);
            double dmin = 1e9;
            for (double d : f.d) dmin = std::min(dmin, std::abs(d));
            if (dmin > 0.1) return a;
        } catch (const SingularDecomposition&) {
        }
    }
}

}  // namespace

TEST_CASE("w_spectrum_check worked examples") {
    Matrix j1(1, 1);
    j1(0, 0) = 5.0;
    const WSpectrum s1 = w_spectrum_check(j1, PrecondKind::INVERSE, 0.5);
    REQUIRE(s1.eigenvalues.size() == 2);
    CHECK(s1.max_abs_deviation < 1e-12);

    const WSpectrum s2 =
        w_spectrum_check(builtin("simple2d").jacobian({1.0, 4.0}), PrecondKind::UDL, 0.5);
    CHECK(s2.max_abs_deviation < 1e-10);

    const WSpectrum s3 =
        w_spectrum_check(builtin("fproblem0").jacobian({1.0, 1.0}), PrecondKind::EIGEN, 0.3);
    CHECK(s3.max_abs_deviation < 1e-10);
}

TEST_CASE("collapsed spectrum across preconditioners and step sizes") {
    std::mt19937 rng(307);
    for (int trial = 0; trial < 200; ++trial) {
        const bool big = trial % 2 == 0;
        const Matrix j = random_nonsingular(rng, big ? 4 : 2, /*symmetric=*/!big);
        for (double dtau : {0.1, 0.5, 0.9}) {
            CHECK(w_spectrum_check(j, PrecondKind::UDL, dtau).max_abs_deviation < 1e-10);
            CHECK(w_spectrum_check(j, PrecondKind::INVERSE, dtau).max_abs_deviation < 1e-10);
            if (!big)
                CHECK(w_spectrum_check(j, PrecondKind::EIGEN, dtau).max_abs_deviation < 1e-10);
        }
    }
}

TEST_CASE("contractive spectrum at a root implies local convergence") {
    for (const auto& name : builtin_names()) {
        const Problem p = builtin(name);
        const Vector root = p.known_roots[0];
        const WSpectrum s = w_spectrum_check(p.jacobian(root), PrecondKind::UDL, 0.5);
        bool contractive = true;
        for (const auto& lam : s.eigenvalues) contractive = contractive && std::abs(lam) < 1.0;
        REQUIRE(contractive);

        SolverConfig c;
        c.method = MethodKind::W4Udl;
        c.dtau = 0.5;
        Vector x0 = root;
        for (double& v : x0) v += 1e-4;
        CHECK(run(p, c, x0).status == Status::Converged);
    }
}

TEST_CASE("eigen trace at a root is a single record") {
    const Problem p = builtin("fproblem0");
    SolverConfig c;
    c.method = MethodKind::NR;
    const EigenTrace t = eigen_trace(p, c, p.known_roots[0]);
    CHECK(t.status == Status::Converged);
    REQUIRE(t.records.size() == 1);
    CHECK(std::isfinite(t.records[0].lambda_plus));
    CHECK(std::isfinite(t.records[0].lambda_minus));
}

TEST_CASE("eigenvalue ratio collapses along the failing Newton run") {
    const Problem p = builtin("fproblem0");
    SolverConfig c;
    c.method = MethodKind::NR;
    c.max_iter = 1000;
    const EigenTrace t = eigen_trace(p, c, {0.1, -1.0});
    CHECK(t.status != Status::Converged);
    REQUIRE(t.records.size() > 5);
    double min_ratio = 1e9;
    for (const auto& r : t.records) min_ratio = std::min(min_ratio, r.ratio);
    CHECK(min_ratio < 1e-4);
    CHECK(t.records.back().ratio < t.records.front().ratio);
}

TEST_CASE("relaxation keeps the eigenvalue ratio away from degeneracy") {
    const Problem p = builtin("fproblem0");
    SolverConfig c;
    c.method = MethodKind::W4Eigen;
    c.dtau = 0.5;
    c.max_iter = 1000;
    const EigenTrace t = eigen_trace(p, c, {0.1, -1.0});
    CHECK(t.status == Status::Converged);
    CHECK(t.records.back().ratio > 1e-3);
}

TEST_CASE("expansion coefficients reconstruct the residual") {
    const Problem p = builtin("fproblem0");
    SolverConfig c;
    c.method = MethodKind::W4Eigen;
    c.dtau = 0.5;
    c.max_iter = 200;
    const SolverResult run_result = run(p, c, {0.5, -1.0});
    for (const auto& rec : run_result.trace) {
        const Vector f = p.residual(rec.x);
        const Eigen2 e = sym2_eigen_with_coeffs(p.jacobian(rec.x), f);
        for (int i = 0; i < 2; ++i) {
            const double rebuilt = e.c_plus * e.v_plus[i] + e.c_minus * e.v_minus[i];
            CHECK(std::abs(rebuilt - f[i]) < 1e-10);
        }
    }
}

TEST_CASE("degeneracy series deviations") {
    const auto rows = degeneracy_series_check(-1.0, {1e-3, -1e-3, 5e-3, 1e-2});
    for (const auto& r : rows) {
        const double x2 = r.x * r.x;
        CHECK(r.bound == doctest::Approx(50.0 * std::abs(r.x) * x2));
        // the eigenvalue series carries a cubic remainder
        CHECK(r.dev_lambda_plus < r.bound);
        CHECK(r.dev_lambda_minus < r.bound);
        // the coefficient series is truncated after the linear term, so its
        // remainder is quadratic, not cubic
        CHECK(r.dev_c_plus < 25.0 * x2);
        CHECK(r.dev_c_minus < 25.0 * x2);
        CHECK(r.dev_c_plus > x2);
    }

    // exact match of the series constants at x = 0
    const auto zero = degeneracy_series_check(-1.0, {0.0});
    CHECK(zero[0].dev_lambda_plus == 0.0);
    CHECK(zero[0].dev_lambda_minus == 0.0);
    CHECK(zero[0].dev_c_plus < 1e-14);
    CHECK(zero[0].dev_c_minus < 1e-14);
}

TEST_CASE("preconditioner names round-trip") {
    for (PrecondKind k : {PrecondKind::UDL, PrecondKind::EIGEN, PrecondKind::INVERSE})
        CHECK(precond_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(precond_from_string("qr"), std::invalid_argument);
}

TEST_CASE("eigen trace CSV header") {
    const Problem p = builtin("fproblem0");
    SolverConfig c;
    c.method = MethodKind::NR;
    const std::string csv = eigen_trace_to_csv(eigen_trace(p, c, p.known_roots[1]));
    CHECK(csv.rfind("iter,lambda_plus,lambda_minus,ratio,c_plus,c_minus\n", 0) == 0);
}
