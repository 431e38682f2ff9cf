#include "ouac/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "ouac/errors.hpp"
#include "ouac/matfun.hpp"
#include "ouac/structure.hpp"

namespace ouac {

namespace {

// Minimal kd-tree for exact two-nearest-neighbor queries.
class KdTree {
public:
    explicit KdTree(const Eigen::MatrixXd& pts) : pts_(pts), dim_(pts.cols()) {
        idx_.resize(static_cast<size_t>(pts.rows()));
        std::iota(idx_.begin(), idx_.end(), 0);
        build(0, idx_.size(), 0);
    }

    // Distances to the two nearest neighbors other than the query index.
    std::pair<double, double> two_nearest(Eigen::Index query) const {
        double best1 = std::numeric_limits<double>::infinity();
        double best2 = best1;
        search(0, idx_.size(), 0, query, best1, best2);
        return {std::sqrt(best1), std::sqrt(best2)};
    }

private:
    void build(size_t lo, size_t hi, int axis) {
        if (hi - lo <= 1) return;
        size_t mid = (lo + hi) / 2;
        std::nth_element(idx_.begin() + static_cast<std::ptrdiff_t>(lo),
                         idx_.begin() + static_cast<std::ptrdiff_t>(mid),
                         idx_.begin() + static_cast<std::ptrdiff_t>(hi),
                         [&](Eigen::Index a, Eigen::Index b) {
                             return pts_(a, axis) < pts_(b, axis);
                         });
        int next = (axis + 1) % static_cast<int>(dim_);
        build(lo, mid, next);
        build(mid + 1, hi, next);
    }

    void search(size_t lo, size_t hi, int axis, Eigen::Index query, double& best1,
                double& best2) const {
        if (lo >= hi) return;
        size_t mid = (lo + hi) / 2;
        Eigen::Index node = idx_[mid];
        if (node != query) {
            double d = (pts_.row(node) - pts_.row(query)).squaredNorm();
            if (d < best1) {
                best2 = best1;
                best1 = d;
            } else if (d < best2) {
                best2 = d;
            }
        }
        if (hi - lo == 1) return;
        double delta = pts_(query, axis) - pts_(node, axis);
        int next = (axis + 1) % static_cast<int>(dim_);
        if (delta <= 0.0) {
            search(lo, mid, next, query, best1, best2);
            if (delta * delta <= best2) search(mid + 1, hi, next, query, best1, best2);
        } else {
            search(mid + 1, hi, next, query, best1, best2);
            if (delta * delta <= best2) search(lo, mid, next, query, best1, best2);
        }
    }

    const Eigen::MatrixXd& pts_;
    Eigen::Index dim_;
    std::vector<Eigen::Index> idx_;
};

} // namespace

NnEstimate nn_dimension(const Eigen::MatrixXd& points, size_t bootstrap_resamples,
                        uint64_t bootstrap_seed) {
    const auto n = points.rows();
    if (n < 1000) throw ValidationError("nn_dimension needs at least 1000 samples");

    KdTree tree(points);
    std::vector<double> log_ratios;
    log_ratios.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        auto [r1, r2] = tree.two_nearest(i);
        if (!(r1 > 0.0) || !std::isfinite(r2)) continue; // duplicates carry no slope information
        log_ratios.push_back(std::log(r2 / r1));
    }

    NnEstimate est;
    est.used = log_ratios.size();
    if (log_ratios.empty()) return est;
    double total = std::accumulate(log_ratios.begin(), log_ratios.end(), 0.0);
    est.estimate = static_cast<double>(log_ratios.size()) / total;

    RngStream rng = RngStream::from_seed(bootstrap_seed);
    std::vector<double> boot(bootstrap_resamples);
    for (size_t b = 0; b < bootstrap_resamples; ++b) {
        double sum = 0.0;
        for (size_t k = 0; k < log_ratios.size(); ++k)
            sum += log_ratios[rng.below(log_ratios.size())];
        boot[b] = static_cast<double>(log_ratios.size()) / sum;
    }
    std::sort(boot.begin(), boot.end());
    est.lo = boot[static_cast<size_t>(0.025 * static_cast<double>(bootstrap_resamples))];
    est.hi = boot[std::min(bootstrap_resamples - 1,
                           static_cast<size_t>(0.975 * static_cast<double>(bootstrap_resamples)))];
    return est;
}

double duplicate_rate(const Eigen::MatrixXd& points) {
    const auto n = points.rows();
    if (n < 2) return 0.0;
    std::unordered_map<std::string, size_t> buckets;
    buckets.reserve(static_cast<size_t>(n));
    const size_t row_bytes = static_cast<size_t>(points.cols()) * sizeof(double);
    std::string key(row_bytes, '\0');
    Eigen::VectorXd row;
    for (Eigen::Index i = 0; i < n; ++i) {
        row = points.row(i);
        std::memcpy(key.data(), row.data(), row_bytes);
        ++buckets[key];
    }
    double pairs = 0.0;
    for (const auto& [k, c] : buckets)
        if (c > 1) pairs += 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
    double all = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return pairs / all;
}

double hyperplane_concentration(const Eigen::MatrixXd& points, const RationalVector& functional,
                                double offset, double tol) {
    if (is_zero_vector(functional))
        throw ValidationError("hyperplane_concentration: functional must be nonzero");
    if (static_cast<size_t>(points.cols()) != functional.size())
        throw ShapeError("hyperplane_concentration: dimension mismatch");
    const auto n = points.rows();
    if (n == 0) return 0.0;
    Eigen::VectorXd f = to_float(functional);
    size_t hits = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(points.row(i).dot(f) - offset) <= tol) ++hits;
    return static_cast<double>(hits) / static_cast<double>(n);
}

double van1_margin(const RationalMatrix& a, const std::vector<RationalVector>& sequence,
                   const std::vector<double>& times) {
    const size_t n = a.rows();
    const size_t q = static_cast<size_t>(minimal_polynomial(a).degree());
    if (times.size() != q * sequence.size())
        throw ShapeError("van1_margin: expected q times per sequence member");
    FloatMatrix af = to_float(a);
    FloatMatrix stack(static_cast<Eigen::Index>(n),
                      static_cast<Eigen::Index>(q * sequence.size()));
    for (size_t i = 0; i < sequence.size(); ++i) {
        FloatVector b = to_float(sequence[i]);
        for (size_t j = 0; j < q; ++j)
            stack.col(static_cast<Eigen::Index>(i * q + j)) = expm(af, times[i * q + j]) * b;
    }
    Eigen::JacobiSVD<FloatMatrix> svd(stack);
    const auto& sv = svd.singularValues();
    return sv(static_cast<Eigen::Index>(n - 1)) / sv(0);
}

RankExperimentReport van1_experiment(const RationalMatrix& a,
                                     const std::vector<RationalVector>& sequence, size_t trials,
                                     RngStream stream) {
    const size_t n = a.rows();
    const size_t q = static_cast<size_t>(minimal_polynomial(a).degree());
    // Exact precondition: the sequence must be generating.
    Subspace sum = Subspace::zero(n);
    for (const auto& b : sequence)
        sum = sum.sum(krylov_span(a, Subspace::span_of(n, {b}), q));
    if (!sum.is_full())
        throw ValidationError("van1_experiment: sequence does not generate the full space");

    RankExperimentReport report;
    report.trials = trials;
    std::vector<double> times(q * sequence.size());
    for (size_t t = 0; t < trials; ++t) {
        for (auto& x : times) x = stream.uniform01();
        double margin = van1_margin(a, sequence, times);
        if (margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_times = times;
        }
        if (margin <= kRankMarginTolerance) ++report.failures;
    }
    return report;
}

DiagnosticsReport build_diagnostics(const ExhaustionVerdict& verdict, const SimConfig& cfg,
                                    const SampleBatch& batch) {
    DiagnosticsReport report;
    report.sample_count = static_cast<size_t>(batch.points.rows());
    report.duplicate_rate = duplicate_rate(batch.points);
    if (batch.points.rows() >= 1000) report.nn = nn_dimension(batch.points);

    const size_t n = cfg.spec.ambient_dim;
    const Eigen::VectorXd x0 =
        cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    const Eigen::VectorXd drifted = expm(to_float(cfg.a), cfg.horizon) * x0;

    if (!verdict.obstruction.empty()) {
        HyperplaneTest test;
        test.functional = verdict.obstruction.front();
        Eigen::VectorXd f = to_float(test.functional);
        test.offset = f.dot(drifted);
        test.tol = 1e-9 * f.norm();
        test.concentration =
            hyperplane_concentration(batch.points, test.functional, test.offset, test.tol);

        // Concentration at least the chance of seeing no atom jump whose
        // point escapes the trapped span.
        std::vector<RationalVector> gens;
        for (const auto& g : cfg.spec.generator_sets())
            gens.insert(gens.end(), g.vectors.begin(), g.vectors.end());
        Subspace trapped = krylov_span(cfg.a, Subspace::span_of(n, gens));
        double off_mass = 0.0;
        for (const auto& c : cfg.spec.components) {
            if (c.kind() != ComponentKind::AtomSet) continue;
            for (const auto& atom : std::get<AtomSetGeometry>(c.geometry).atoms)
                if (!trapped.contains(atom.point)) off_mass += atom.mass.to_double();
        }
        if (!verdict.gaussian_part)
            test.predicted_lower_bound = std::exp(-cfg.horizon * off_mass);
        report.hyperplane = std::move(test);
    }

    // Random rational functionals: an absolutely continuous endpoint law
    // should concentrate on none of them.
    RngStream rng = RngStream::from_seed(0x68797065ULL);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) {
        RationalVector f(n);
        bool nonzero = false;
        for (size_t i = 0; i < n; ++i) {
            long c = static_cast<long>(rng.below(19)) - 9;
            f[i] = Rational(c);
            nonzero = nonzero || c != 0;
        }
        if (!nonzero) f[0] = Rational(1);
        Eigen::VectorXd ff = to_float(f);
        double offset = ff.dot(drifted);
        worst = std::max(worst, hyperplane_concentration(batch.points, f, offset,
                                                         1e-6 * ff.norm()));
    }
    report.random_functional_max_concentration = worst;
    return report;
}

ConsistencyResult consistency_check(const ExhaustionVerdict& verdict,
                                    const DiagnosticsReport& report, size_t ambient_dim) {
    std::ostringstream os;
    ConsistencyResult out;
    switch (verdict.abs_continuous) {
        case AbsContinuity::TheoremInapplicableSingularA: {
            out.flag = Consistency::NoClaim;
            os << "theorem inapplicable (singular drift); no absolute-continuity conclusion. "
               << "Sampled duplicate rate " << report.duplicate_rate
               << ", intrinsic dimension estimate " << report.nn.estimate << ".";
            break;
        }
        case AbsContinuity::Yes: {
            bool dup_ok = report.duplicate_rate == 0.0;
            bool conc_ok = report.random_functional_max_concentration < 0.01;
            bool dim_ok = report.nn.used == 0 ||
                          std::abs(report.nn.estimate - static_cast<double>(ambient_dim)) <= 0.3;
            bool ok = dup_ok && conc_ok && dim_ok;
            out.flag = ok ? Consistency::Consistent : Consistency::Inconsistent;
            os << "verdict says absolutely continuous: expected no exact duplicates (rate "
               << report.duplicate_rate << "), no hyperplane concentration (max "
               << report.random_functional_max_concentration
               << ") and intrinsic dimension near " << ambient_dim << " (estimate "
               << report.nn.estimate << "); " << (ok ? "all hold." : "violated.");
            break;
        }
        case AbsContinuity::No: {
            if (!report.hyperplane) {
                out.flag = Consistency::Inconsistent;
                os << "no obstruction functional available for a non-exhausting verdict.";
                break;
            }
            const auto& t = *report.hyperplane;
            bool ok;
            if (t.predicted_lower_bound) {
                double p = *t.predicted_lower_bound;
                double sigma =
                    std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                              std::max<double>(1.0, static_cast<double>(report.sample_count)));
                ok = t.concentration >= p - 3.0 * sigma;
                os << "verdict says singular along the obstruction functional: concentration "
                   << t.concentration << " against predicted lower bound " << p << "; "
                   << (ok ? "consistent." : "below prediction.");
            } else {
                ok = t.concentration >= 0.5;
                os << "verdict says singular along the obstruction functional: concentration "
                   << t.concentration << " (no exact prediction available); "
                   << (ok ? "consistent." : "too low.");
            }
            out.flag = ok ? Consistency::Consistent : Consistency::Inconsistent;
            break;
        }
    }
    out.narrative = os.str();
    return out;
}

} // namespace ouac
