#include "ouac/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ouac/errors.hpp"
#include "ouac/matfun.hpp"

namespace ouac {

void SimConfig::validate() const {
    if (!a.is_square()) throw ShapeError("drift matrix must be square");
    if (a.rows() != spec.ambient_dim) throw ShapeError("drift/measure dimension mismatch");
    spec.validate();
    if (eps <= 0.0) throw ValidationError("truncation level eps must be positive");
    if (sample_count < 1) throw ValidationError("sample_count must be at least 1");
    if (!(horizon >= 0.0)) throw ValidationError("horizon must be nonnegative");
    if (workers < 1) throw ValidationError("workers must be at least 1");
    if (x0.size() != 0 && static_cast<size_t>(x0.size()) != spec.ambient_dim)
        throw ShapeError("x0 dimension mismatch");
}

Eigen::VectorXd endpoint_from_jumps(const Eigen::MatrixXd& a_float, const Eigen::VectorXd& x0,
                                    double horizon, const std::vector<Jump>& jumps) {
    Eigen::VectorXd x = expm(a_float, horizon) * x0;
    for (const auto& j : jumps) x += expm(a_float, horizon - j.time) * j.vec;
    return x;
}

namespace {

std::vector<Jump> all_jumps(const SimConfig& cfg, RngStream stream) {
    std::vector<Jump> jumps;
    for (size_t ci = 0; ci < cfg.spec.components.size(); ++ci) {
        auto js = sample_jumps(cfg.spec.components[ci], cfg.spec.ambient_dim, cfg.horizon,
                               cfg.eps, stream.split(ci));
        jumps.insert(jumps.end(), js.begin(), js.end());
    }
    std::stable_sort(jumps.begin(), jumps.end(),
                     [](const Jump& a, const Jump& b) { return a.time < b.time; });
    return jumps;
}

} // namespace

Eigen::VectorXd sample_endpoint(const SimConfig& cfg, RngStream stream) {
    cfg.validate();
    Eigen::VectorXd x0 = cfg.x0.size() ? cfg.x0
                                       : Eigen::VectorXd::Zero(
                                             static_cast<Eigen::Index>(cfg.spec.ambient_dim));
    return endpoint_from_jumps(to_float(cfg.a), x0, cfg.horizon, all_jumps(cfg, stream));
}

SampleBatch sample_batch(const SimConfig& cfg) {
    cfg.validate();
    const size_t n = cfg.spec.ambient_dim;
    SampleBatch batch;
    batch.points.resize(static_cast<Eigen::Index>(cfg.sample_count),
                        static_cast<Eigen::Index>(n));
    batch.jump_counts.assign(cfg.sample_count, 0);
    batch.seed = cfg.seed;
    batch.workers = cfg.workers;
    batch.eps = cfg.eps;
    batch.horizon = cfg.horizon;
    for (size_t ci = 0; ci < cfg.spec.components.size(); ++ci) {
        if (!cfg.spec.components[ci].infinite_activity()) continue;
        batch.truncation_bias.push_back(
            {ci, cfg.horizon * truncation_bias_bound(cfg.spec.components[ci], cfg.eps)});
    }

    const Eigen::MatrixXd af = to_float(cfg.a);
    const Eigen::VectorXd x0 =
        cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    const RngStream root = RngStream::from_seed(cfg.seed);

    auto run_range = [&](size_t lo, size_t hi) {
        for (size_t s = lo; s < hi; ++s) {
            auto jumps = all_jumps(cfg, root.split(s));
            batch.jump_counts[s] = static_cast<uint32_t>(jumps.size());
            batch.points.row(static_cast<Eigen::Index>(s)) =
                endpoint_from_jumps(af, x0, cfg.horizon, jumps).transpose();
        }
    };

    const size_t workers = std::min<size_t>(cfg.workers, cfg.sample_count);
    if (workers <= 1) {
        run_range(0, cfg.sample_count);
    } else {
        std::vector<std::thread> pool;
        const size_t chunk = (cfg.sample_count + workers - 1) / workers;
        for (size_t w = 0; w < workers; ++w) {
            size_t lo = w * chunk;
            size_t hi = std::min(cfg.sample_count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    return batch;
}

double beta_cdf(size_t a, size_t b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // I_x(a, b) with integer parameters: P[Bin(a+b-1, x) >= a].
    const size_t n = a + b - 1;
    double cdf = 0.0;
    double log_x = std::log(x), log_1mx = std::log1p(-x);
    for (size_t k = a; k <= n; ++k) {
        double log_c = std::lgamma(static_cast<double>(n + 1)) -
                       std::lgamma(static_cast<double>(k + 1)) -
                       std::lgamma(static_cast<double>(n - k + 1));
        cdf += std::exp(log_c + static_cast<double>(k) * log_x +
                        static_cast<double>(n - k) * log_1mx);
    }
    return std::min(cdf, 1.0);
}

OrderStatReport conditional_jump_times_check(size_t q, double rate, size_t trials,
                                             RngStream stream) {
    if (q < 1) throw ValidationError("order statistics check needs q >= 1");
    if (rate <= 0.0) throw ValidationError("rate must be positive");
    OrderStatReport report;
    report.q = q;
    report.rate = rate;
    report.trials = trials;
    if (trials == 0) return report;

    std::vector<std::vector<double>> marginals(q, std::vector<double>(trials));
    for (size_t t = 0; t < trials; ++t) {
        double time = 0.0;
        std::vector<double> arrivals(q + 1);
        for (size_t j = 0; j <= q; ++j) {
            time += stream.exponential(rate);
            arrivals[j] = time;
        }
        for (size_t j = 0; j < q; ++j) marginals[j][t] = arrivals[j] / arrivals[q];
    }

    report.critical_1pct = 1.628 / std::sqrt(static_cast<double>(trials));
    for (size_t j = 0; j < q; ++j) {
        auto& v = marginals[j];
        std::sort(v.begin(), v.end());
        double ks = 0.0;
        for (size_t i = 0; i < trials; ++i) {
            double f = beta_cdf(j + 1, q - j, v[i]);
            double hi = static_cast<double>(i + 1) / static_cast<double>(trials) - f;
            double lo = f - static_cast<double>(i) / static_cast<double>(trials);
            ks = std::max({ks, hi, lo});
        }
        report.ks_distance.push_back(ks);
    }
    return report;
}

} // namespace ouac
