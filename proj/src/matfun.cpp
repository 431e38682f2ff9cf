#include "ouac/matfun.hpp"

#include <cmath>

#include "ouac/errors.hpp"
#include "ouac/structure.hpp"

namespace ouac {

FloatMatrix to_float(const RationalMatrix& m) {
    FloatMatrix f(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j).to_double();
    return f;
}

FloatVector to_float(const RationalVector& v) {
    FloatVector f(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) f(static_cast<Eigen::Index>(i)) = v[i].to_double();
    return f;
}

namespace {

FloatMatrix pade_expm(const FloatMatrix& a, const std::vector<double>& b) {
    const Eigen::Index n = a.rows();
    const FloatMatrix ident = FloatMatrix::Identity(n, n);
    const FloatMatrix a2 = a * a;
    // Split into even (V) and odd (U = A * ...) parts of the Pade numerator.
    FloatMatrix u = FloatMatrix::Zero(n, n);
    FloatMatrix v = FloatMatrix::Zero(n, n);
    FloatMatrix pw = ident;
    for (size_t k = 0; 2 * k + 1 < b.size(); ++k) {
        v += b[2 * k] * pw;
        u += b[2 * k + 1] * pw;
        pw = pw * a2;
    }
    if (b.size() % 2 == 1) v += b[b.size() - 1] * pw;
    u = a * u;
    return (v - u).partialPivLu().solve(v + u);
}

FloatMatrix pade13_expm(const FloatMatrix& a) {
    static const std::vector<double> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const Eigen::Index n = a.rows();
    const FloatMatrix ident = FloatMatrix::Identity(n, n);
    const FloatMatrix a2 = a * a;
    const FloatMatrix a4 = a2 * a2;
    const FloatMatrix a6 = a4 * a2;
    FloatMatrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                         b[3] * a2 + b[1] * ident);
    FloatMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                    b[2] * a2 + b[0] * ident;
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace

FloatMatrix expm(const FloatMatrix& a, double t) {
    if (a.rows() != a.cols()) throw ShapeError("expm: matrix must be square");
    if (!std::isfinite(t)) throw ValidationError("expm: time must be finite");
    if (!a.allFinite()) throw ValidationError("expm: matrix entries must be finite");
    const Eigen::Index n = a.rows();
    if (n == 0) return FloatMatrix(0, 0);

    FloatMatrix m = t * a;
    const double norm = m.cwiseAbs().colwise().sum().maxCoeff(); // 1-norm
    if (norm > 700.0) throw NumericalError("expm: ||tA|| too large, result would overflow");

    // Degree thresholds from the scaling-and-squaring analysis.
    static const std::vector<double> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                              9.504178996162932e-1, 2.097847961257068,
                                              5.371920351148152};
    static const std::vector<std::vector<double>> pade_b = {
        {120.0, 60.0, 12.0, 1.0},
        {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0},
        {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0},
        {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0,
         110880.0, 3960.0, 90.0, 1.0}};

    for (size_t d = 0; d < pade_b.size(); ++d)
        if (norm <= theta[d]) return pade_expm(m, pade_b[d]);

    int squarings = 0;
    if (norm > theta.back())
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta.back())));
    m /= std::pow(2.0, squarings);
    FloatMatrix e = pade13_expm(m);
    for (int s = 0; s < squarings; ++s) e = e * e;
    return e;
}

PsiEvaluation psi_eval(const RationalMatrix& a, double t) {
    if (!a.is_square()) throw ShapeError("psi_eval: matrix must be square");
    const size_t n = a.rows();
    const size_t q = static_cast<size_t>(minimal_polynomial(a).degree());

    // Exact powers, then floats: the power basis is computed without drift.
    RationalMatrix power = RationalMatrix::identity(n);
    FloatMatrix basis(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(q));
    for (size_t r = 0; r < q; ++r) {
        if (r > 0) power = power * a;
        FloatMatrix f = to_float(power);
        basis.col(static_cast<Eigen::Index>(r)) =
            Eigen::Map<FloatVector>(f.data(), static_cast<Eigen::Index>(n * n));
    }

    FloatMatrix e = expm(to_float(a), t);
    FloatVector target = Eigen::Map<FloatVector>(e.data(), static_cast<Eigen::Index>(n * n));

    FloatVector psi = basis.colPivHouseholderQr().solve(target);

    PsiEvaluation out;
    out.t = t;
    out.values.assign(psi.data(), psi.data() + psi.size());
    out.scale = e.norm();
    out.residual = (basis * psi - target).norm();
    if (out.residual > kPsiResidualTolerance * out.scale)
        throw NumericalError("psi_eval: reconstruction residual above tolerance");
    return out;
}

FloatMatrix psi_matrix(const RationalMatrix& a, const std::vector<double>& times) {
    if (!a.is_square()) throw ShapeError("psi_matrix: matrix must be square");
    const size_t q = static_cast<size_t>(minimal_polynomial(a).degree());
    if (times.size() != q) throw ShapeError("psi_matrix: expected q distinct times");
    FloatMatrix m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(q));
    for (size_t j = 0; j < q; ++j) {
        PsiEvaluation ev = psi_eval(a, times[j]);
        for (size_t i = 0; i < q; ++i)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ev.values[i];
    }
    return m;
}

} // namespace ouac
