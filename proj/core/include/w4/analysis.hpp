#pragma once

#include <complex>
#include <string>
#include <vector>

#include "w4/problems.hpp"
#include "w4/types.hpp"

namespace w4 {

enum class PrecondKind { UDL, EIGEN, INVERSE };

const char* to_string(PrecondKind p);
PrecondKind precond_from_string(const std::string& name);

struct WSpectrum {
    std::vector<std::complex<double>> eigenvalues;
    double max_abs_deviation = 0.0;  // max |lambda - (1 - dtau)|
};

/// Assembles the error-propagation matrix W for the chosen preconditioner
/// variant (each satisfies Y = X^-1 J^-1 by construction) and returns its
/// spectrum together with the worst deviation from 1 - dtau.
WSpectrum w_spectrum_check(const Matrix& j, PrecondKind preconditioner, double dtau);

/// Per-iteration Jacobian eigen-structure along a solver trajectory of a
/// dim-2 symmetric-Jacobian problem.
struct EigenTraceRecord {
    int iter = 0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double ratio = 0.0;  // |lambda_minus / lambda_plus|, +inf when lambda_plus = 0
    double c_plus = 0.0;
    double c_minus = 0.0;
};

struct EigenTrace {
    Status status = Status::MaxIterExceeded;
    std::vector<EigenTraceRecord> records;
};

EigenTrace eigen_trace(const Problem& problem, const SolverConfig& config, const Vector& x0);

/// CSV `iter,lambda_plus,lambda_minus,ratio,c_plus,c_minus`.
std::string eigen_trace_to_csv(const EigenTrace& trace);

/// Deviation of the exact eigen-structure of the near-degenerate Jacobian
/// from its printed power series at one point (x, y_fixed).
struct SeriesDeviation {
    double x = 0.0;
    double dev_lambda_plus = 0.0;   // vs y^2 + 2x + 4x^2
    double dev_lambda_minus = 0.0;  // vs -3x^2
    double dev_c_plus = 0.0;        // |c+| vs |4 + (-y^2 + 2/y) x|
    double dev_c_minus = 0.0;       // |c-| vs |1 - 8x/y|
    double bound = 0.0;             // 50 |x|^3
};

/// Series remainder headroom constant used for the bound column.
inline constexpr double kSeriesBoundC = 50.0;

std::vector<SeriesDeviation> degeneracy_series_check(double y_fixed, const std::vector<double>& xs);

}  // namespace w4
