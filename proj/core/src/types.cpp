#include "w4/types.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace w4 {

Vector mat_vec(const Matrix& a, const Vector& x) {
    Vector y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

double residual_inf_norm(const Vector& f_value) {
    double m = 0.0;
    for (double v : f_value) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool all_finite(const Vector& v) {
    for (double e : v)
        if (!std::isfinite(e)) return false;
    return true;
}

const char* to_string(MethodKind m) {
    switch (m) {
        case MethodKind::NR: return "nr";
        case MethodKind::DN: return "dn";
        case MethodKind::W4Udl: return "w4-udl";
        case MethodKind::W4Eigen: return "w4-eigen";
        case MethodKind::DnEigen: return "dn-eigen";
    }
    return "?";
}

MethodKind method_from_string(const std::string& name) {
    if (name == "nr") return MethodKind::NR;
    if (name == "dn") return MethodKind::DN;
    if (name == "w4-udl" || name == "w4") return MethodKind::W4Udl;
    if (name == "w4-eigen") return MethodKind::W4Eigen;
    if (name == "dn-eigen") return MethodKind::DnEigen;
    throw std::invalid_argument("unknown method '" + name +
                                "' (valid: nr, dn, w4-udl, w4-eigen, dn-eigen)");
}

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be positive");
    if (damping_c != 2.0) throw std::invalid_argument("damping_c is fixed at 2");
    if (method == MethodKind::NR) {
        if (dtau != 1.0) throw std::invalid_argument("NR requires dtau = 1");
    } else {
        if (!(dtau > 0.0 && dtau < 1.0))
            throw std::invalid_argument("this method requires 0 < dtau < 1");
    }
}

const char* to_string(Status s) {
    switch (s) {
        case Status::Converged: return "Converged";
        case Status::MaxIterExceeded: return "MaxIterExceeded";
        case Status::Diverged: return "Diverged";
        case Status::SingularDecomposition: return "SingularDecomposition";
    }
    return "?";
}

std::string format_shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::string trace_to_csv(const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    const std::size_t n = trace.empty() ? 0 : trace.front().x.size();
    const std::size_t np = trace.empty() ? 0 : trace.front().p.size();
    out << "iter";
    for (std::size_t i = 1; i <= n; ++i) out << ",x_" << i;
    for (std::size_t i = 1; i <= np; ++i) out << ",p_" << i;
    out << ",res_inf\n";
    for (const auto& rec : trace) {
        out << rec.iter;
        for (double v : rec.x) out << ',' << format_full(v);
        for (double v : rec.p) out << ',' << format_full(v);
        out << ',' << format_full(rec.res_inf) << '\n';
    }
    return out.str();
}

}  // namespace w4
