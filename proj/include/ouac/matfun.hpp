#pragma once

#include <Eigen/Dense>

#include <vector>

#include "ouac/rational_matrix.hpp"

namespace ouac {

using FloatMatrix = Eigen::MatrixXd;
using FloatVector = Eigen::VectorXd;

FloatMatrix to_float(const RationalMatrix& m);
FloatVector to_float(const RationalVector& v);

// e^{tA} by scaling-and-squaring with a Pade approximant.
FloatMatrix expm(const FloatMatrix& a, double t = 1.0);

// Coordinates of e^{tA} in the basis {I, A, ..., A^{q-1}} together with the
// Frobenius reconstruction residual. The basis is linearly independent by
// minimality of q, so the least-squares solution is the unique one.
struct PsiEvaluation {
    double t = 0.0;
    std::vector<double> values;    // psi_1(t) ... psi_q(t)
    double residual = 0.0;         // ||e^{tA} - sum psi_r A^{r-1}||_F
    double scale = 0.0;            // ||e^{tA}||_F
};

// Relative residual above this threshold is treated as numerical failure.
inline constexpr double kPsiResidualTolerance = 1e-8;

PsiEvaluation psi_eval(const RationalMatrix& a, double t);

// Column j holds psi_1..psi_q evaluated at times[j].
FloatMatrix psi_matrix(const RationalMatrix& a, const std::vector<double>& times);

} // namespace ouac
