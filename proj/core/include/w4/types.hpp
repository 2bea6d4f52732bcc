#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace w4 {

/// Dense real vector. Length always equals the owning problem's dimension,
/// except for the momentum of first-order methods, which is kept empty.
using Vector = std::vector<double>;

/// Dense square matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Vector mat_vec(const Matrix& a, const Vector& x);
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// Max-abs norm of a residual vector. Any non-finite entry yields +infinity,
/// which the solver driver treats as divergence.
double residual_inf_norm(const Vector& f_value);

bool all_finite(const Vector& v);

/// Raised when a pivot of the UDL decomposition (or a diagonal scale)
/// underflows the structural-singularity threshold.
class SingularDecomposition : public std::runtime_error {
public:
    explicit SingularDecomposition(const std::string& what) : std::runtime_error(what) {}
};

enum class MethodKind { NR, DN, W4Udl, W4Eigen, DnEigen };

/// True for methods that carry no momentum vector.
inline bool is_first_order(MethodKind m) {
    return m == MethodKind::NR || m == MethodKind::DN || m == MethodKind::DnEigen;
}

const char* to_string(MethodKind m);
MethodKind method_from_string(const std::string& name);

struct SolverConfig {
    MethodKind method = MethodKind::NR;
    double dtau = 1.0;       // pseudo-time step; 1 for NR, in (0,1) otherwise
    double damping_c = 2.0;  // fixed by the scheme
    double tol = 1e-6;       // infinity-norm residual threshold
    int max_iter = 10000;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

/// Position and momentum at one iterate. p is empty for first-order methods.
struct SolverState {
    Vector x;
    Vector p;
};

enum class Status { Converged, MaxIterExceeded, Diverged, SingularDecomposition };

const char* to_string(Status s);

struct TraceRecord {
    int iter = 0;
    Vector x;
    Vector p;
    double res_inf = 0.0;
};

struct SolverResult {
    Status status = Status::MaxIterExceeded;
    SolverState final_state;
    int iterations = 0;  // map applications; trace.size() - 1
    std::vector<TraceRecord> trace;
};

/// Serializes a trace as CSV: `iter,x_1..x_N,p_1..p_N,res_inf`, 17 significant
/// digits. The p columns are omitted when the trace carries no momentum.
std::string trace_to_csv(const std::vector<TraceRecord>& trace);

/// Shortest decimal form that round-trips to the same double.
std::string format_shortest(double v);
/// Fixed 17-significant-digit form.
std::string format_full(double v);

}  // namespace w4
