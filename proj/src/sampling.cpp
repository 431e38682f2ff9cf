#include "ouac/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "ouac/errors.hpp"
#include "ouac/matfun.hpp"

namespace ouac {

namespace {

constexpr size_t kMaxExpectedJumps = 20'000'000;
constexpr size_t kMaxCurveRungs = 10'000'000;

void append_poisson_arrivals(double rate, double horizon, RngStream& s,
                             std::vector<double>& times) {
    if (rate <= 0.0) return;
    double t = s.exponential(rate);
    while (t <= horizon) {
        times.push_back(t);
        t += s.exponential(rate);
    }
}

double curve_coeff_norm_sum(const CurveGeometry& g) {
    double c = 0.0;
    for (const auto& ck : g.coefficients) c += to_float(ck).norm();
    return c;
}

} // namespace

double truncated_rate(const MeasureComponent& c, double eps) {
    switch (c.kind()) {
        case ComponentKind::AtomSet: {
            double r = 0.0;
            for (const auto& a : std::get<AtomSetGeometry>(c.geometry).atoms)
                r += a.mass.to_double();
            return r;
        }
        case ComponentKind::InfiniteRay: {
            const auto& g = std::get<RayGeometry>(c.geometry);
            double alpha = g.alpha.to_double();
            return g.scale.to_double() * std::pow(eps, -alpha) / alpha;
        }
        case ComponentKind::SubspaceAC: {
            const auto& g = std::get<SubspaceGeometry>(c.geometry);
            double alpha = g.alpha.to_double();
            return g.scale.to_double() * std::pow(eps, -alpha) / alpha;
        }
        case ComponentKind::PolynomialCurve: {
            const auto& g = std::get<CurveGeometry>(c.geometry);
            const double beta = g.beta.to_double();
            const double csum = curve_coeff_norm_sum(g);
            if (csum <= eps) return 0.0;
            double rate = 0.0;
            const double j_bound = std::pow(csum / eps, 1.0 / beta);
            if (j_bound > static_cast<double>(kMaxCurveRungs))
                throw ValidationError("curve truncation too fine: would enumerate more than " +
                                      std::to_string(kMaxCurveRungs) + " rungs");
            for (size_t j = 1; std::pow(static_cast<double>(j), -beta) * csum >= eps; ++j) {
                double s = std::pow(static_cast<double>(j), -beta);
                Eigen::VectorXd p = Eigen::VectorXd::Zero(
                    static_cast<Eigen::Index>(g.coefficients.front().size()));
                for (size_t k = g.coefficients.size(); k-- > 0;)
                    p = s * (p + to_float(g.coefficients[k]));
                if (p.norm() >= eps) rate += 1.0; // unit mass per rung
            }
            return rate;
        }
    }
    return 0.0;
}

double truncation_bias_bound(const MeasureComponent& c, double eps) {
    switch (c.kind()) {
        case ComponentKind::AtomSet:
            return 0.0;
        case ComponentKind::InfiniteRay:
        case ComponentKind::SubspaceAC: {
            double alpha, scale;
            if (c.kind() == ComponentKind::InfiniteRay) {
                const auto& g = std::get<RayGeometry>(c.geometry);
                alpha = g.alpha.to_double();
                scale = g.scale.to_double();
            } else {
                const auto& g = std::get<SubspaceGeometry>(c.geometry);
                alpha = g.alpha.to_double();
                scale = g.scale.to_double();
            }
            return scale * std::pow(eps, 1.0 - alpha) / (1.0 - alpha);
        }
        case ComponentKind::PolynomialCurve: {
            const auto& g = std::get<CurveGeometry>(c.geometry);
            const double beta = g.beta.to_double();
            if (beta <= 1.0) return std::numeric_limits<double>::infinity();
            const double csum = curve_coeff_norm_sum(g);
            if (csum <= eps) {
                // every rung is dropped; bound the whole ladder
                return csum * beta / (beta - 1.0);
            }
            const double j_last = std::pow(csum / eps, 1.0 / beta);
            // |gamma(s_j)| <= csum * j^{-beta}; integral tail bound past j_last
            return csum * std::pow(j_last, 1.0 - beta) / (beta - 1.0);
        }
    }
    return 0.0;
}

std::vector<Jump> sample_jumps(const MeasureComponent& c, size_t ambient_dim, double horizon,
                               double eps, RngStream stream) {
    if (eps <= 0.0) throw ValidationError("truncation level eps must be positive");
    if (!(horizon >= 0.0)) throw ValidationError("horizon must be nonnegative");
    std::vector<Jump> jumps;
    if (horizon == 0.0) return jumps;

    if (truncated_rate(c, eps) * horizon > static_cast<double>(kMaxExpectedJumps))
        throw ValidationError("expected jump count exceeds resource limit; raise eps");

    const auto n = static_cast<Eigen::Index>(ambient_dim);

    switch (c.kind()) {
        case ComponentKind::AtomSet: {
            const auto& g = std::get<AtomSetGeometry>(c.geometry);
            for (size_t a = 0; a < g.atoms.size(); ++a) {
                RngStream sub = stream.split(a);
                std::vector<double> times;
                append_poisson_arrivals(g.atoms[a].mass.to_double(), horizon, sub, times);
                Eigen::VectorXd p = to_float(g.atoms[a].point);
                for (double t : times) jumps.push_back({t, p});
            }
            break;
        }
        case ComponentKind::InfiniteRay: {
            // Layered construction: unit-rate energies through the inverse
            // radial tail give radii in descending order, so shrinking eps
            // extends the same point set instead of reshuffling it.
            const auto& g = std::get<RayGeometry>(c.geometry);
            const double alpha = g.alpha.to_double();
            const double scale = g.scale.to_double();
            Eigen::VectorXd dir = to_float(g.direction);
            dir /= dir.norm();
            RngStream sub = stream.split(0);
            const double threshold = horizon * scale * std::pow(eps, -alpha) / alpha;
            double energy = sub.exponential(1.0);
            while (energy <= threshold) {
                double r = std::pow(energy * alpha / (horizon * scale), -1.0 / alpha);
                double t = horizon * sub.uniform01();
                double sign = 1.0;
                if (g.two_sided) sign = (sub.next_u64() & 1) ? 1.0 : -1.0;
                jumps.push_back({t, (sign * r) * dir});
                energy += sub.exponential(1.0);
            }
            break;
        }
        case ComponentKind::SubspaceAC: {
            const auto& g = std::get<SubspaceGeometry>(c.geometry);
            const double alpha = g.alpha.to_double();
            const double scale = g.scale.to_double();
            // Orthonormal float frame for the carrier subspace.
            Eigen::MatrixXd frame(n, static_cast<Eigen::Index>(g.basis.size()));
            for (size_t i = 0; i < g.basis.size(); ++i)
                frame.col(static_cast<Eigen::Index>(i)) = to_float(g.basis[i]);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
            Eigen::MatrixXd q = qr.householderQ() *
                                Eigen::MatrixXd::Identity(n, static_cast<Eigen::Index>(g.basis.size()));
            const auto k = static_cast<Eigen::Index>(g.basis.size());
            RngStream sub = stream.split(0);
            const double threshold = horizon * scale * std::pow(eps, -alpha) / alpha;
            double energy = sub.exponential(1.0);
            while (energy <= threshold) {
                double r = std::pow(energy * alpha / (horizon * scale), -1.0 / alpha);
                double t = horizon * sub.uniform01();
                Eigen::VectorXd gauss(k);
                for (Eigen::Index i = 0; i < k; ++i) gauss(i) = sub.normal();
                double norm = gauss.norm();
                if (norm == 0.0) gauss(0) = norm = 1.0;
                jumps.push_back({t, q * (gauss * (r / norm))});
                energy += sub.exponential(1.0);
            }
            break;
        }
        case ComponentKind::PolynomialCurve: {
            const auto& g = std::get<CurveGeometry>(c.geometry);
            const double beta = g.beta.to_double();
            const double csum = curve_coeff_norm_sum(g);
            for (size_t j = 1;; ++j) {
                double s = std::pow(static_cast<double>(j), -beta);
                if (s * csum < eps) break;
                if (j > kMaxCurveRungs)
                    throw ValidationError("curve truncation too fine; raise eps");
                Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
                for (size_t k = g.coefficients.size(); k-- > 0;)
                    p = s * (p + to_float(g.coefficients[k]));
                if (p.norm() < eps) continue;
                RngStream sub = stream.split(j);
                std::vector<double> times;
                append_poisson_arrivals(1.0, horizon, sub, times); // unit mass per rung
                for (double t : times) jumps.push_back({t, p});
            }
            break;
        }
    }

    std::stable_sort(jumps.begin(), jumps.end(),
                     [](const Jump& a, const Jump& b) { return a.time < b.time; });
    return jumps;
}

} // namespace ouac
