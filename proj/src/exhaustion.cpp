#include "ouac/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ouac/errors.hpp"
#include "ouac/matfun.hpp"

namespace ouac {

std::string to_string(AbsContinuity v) {
    switch (v) {
        case AbsContinuity::Yes: return "yes";
        case AbsContinuity::No: return "no";
        case AbsContinuity::TheoremInapplicableSingularA:
            return "theorem-inapplicable-singular-A";
    }
    return "?";
}

std::string to_string(Canonical2d c) {
    switch (c) {
        case Canonical2d::NoRealEigenvalue: return "a";
        case Canonical2d::ScalarMultipleOfIdentity: return "b";
        case Canonical2d::JordanCellType: return "c";
        case Canonical2d::DistinctRealEigenvalues: return "d";
    }
    return "?";
}

bool is_controllable(const RationalMatrix& a, const Subspace& support_span) {
    return krylov_span(a, support_span).is_full();
}

namespace {

constexpr size_t kMaxInfiniteComponents = 16;

std::string span_key(const Subspace& s) {
    std::string key;
    for (const auto& row : s.basis()) {
        for (const auto& x : row) {
            key += x.to_string();
            key += ',';
        }
        key += ';';
    }
    return key;
}

// Deterministic candidate pool inside a subspace: basis vectors, pairwise
// sums/differences, the all-ones combination, and seeded integer combos.
std::vector<RationalVector> candidate_pool(const Subspace& space, size_t extra_random) {
    std::vector<RationalVector> pool;
    const auto& basis = space.basis();
    const size_t n = space.ambient_dim();
    if (basis.empty()) return pool;
    auto push_unique = [&](RationalVector v) {
        if (is_zero_vector(v)) return;
        for (const auto& p : pool)
            if (p == v) return;
        pool.push_back(std::move(v));
    };
    for (const auto& b : basis) push_unique(b);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j) {
            RationalVector s(n), d(n);
            for (size_t t = 0; t < n; ++t) {
                s[t] = basis[i][t] + basis[j][t];
                d[t] = basis[i][t] - basis[j][t];
            }
            push_unique(s);
            push_unique(d);
        }
    RationalVector all(n);
    for (const auto& b : basis)
        for (size_t t = 0; t < n; ++t) all[t] += b[t];
    push_unique(all);

    RngStream rng = RngStream::from_seed(0x67656e736571ULL); // fixed: keeps the op pure
    for (size_t k = 0; k < extra_random; ++k) {
        RationalVector v(n);
        for (const auto& b : basis) {
            long c = static_cast<long>(rng.below(7)) - 3;
            if (c == 0) continue;
            for (size_t t = 0; t < n; ++t) v[t] += Rational(c) * b[t];
        }
        push_unique(std::move(v));
    }
    return pool;
}

struct DecideInputs {
    const RationalMatrix& a;
    const MeasureSpec& spec;
    Subspace gaussian_krylov; // zero subspace when no Brownian part
    bool gaussian = false;
};

size_t kappa_with_gaussian(const RationalMatrix& a, size_t q, const Subspace& support,
                           const Subspace& h, const std::vector<RationalVector>& must_include) {
    const size_t n = a.rows();
    if (h.is_full()) return 0;
    std::vector<RationalVector> pool = candidate_pool(support, 4 * n * n);
    for (const auto& v : must_include) {
        bool present = false;
        for (const auto& p : pool) present = present || p == v;
        if (!present) pool.push_back(v);
    }
    std::vector<Subspace> kry;
    kry.reserve(pool.size());
    for (const auto& v : pool)
        kry.push_back(krylov_span(a, Subspace::span_of(n, {v}), q));

    // Greedy upper bound, then exhaustive search below it on the same pool.
    size_t greedy = 0;
    {
        Subspace u = h;
        while (!u.is_full()) {
            size_t best = pool.size();
            size_t best_dim = u.dim();
            for (size_t i = 0; i < pool.size(); ++i) {
                size_t d = u.sum(kry[i]).dim();
                if (d > best_dim) {
                    best_dim = d;
                    best = i;
                }
            }
            if (best == pool.size()) return n; // cannot fill: not controllable
            u = u.sum(kry[best]);
            ++greedy;
        }
    }
    for (size_t target = 1; target < greedy; ++target) {
        if (target > 3 || pool.size() > 64) break; // exhaustive part stays desk-sized
        bool found = false;
        std::vector<size_t> idx(target);
        std::function<void(size_t, size_t, Subspace)> rec = [&](size_t pos, size_t start,
                                                                Subspace u) {
            if (found) return;
            if (u.is_full()) {
                found = true;
                return;
            }
            if (pos == target) return;
            for (size_t i = start; i < pool.size() && !found; ++i) rec(pos + 1, i + 1, u.sum(kry[i]));
        };
        rec(0, 0, h);
        if (found) return target;
    }
    return greedy;
}

ExhaustionVerdict decide_impl(const DecideInputs& in) {
    const RationalMatrix& a = in.a;
    const MeasureSpec& spec = in.spec;
    if (!a.is_square()) throw ShapeError("drift matrix must be square");
    const size_t n = a.rows();
    if (n != spec.ambient_dim)
        throw ShapeError("drift matrix is " + std::to_string(n) + "x" + std::to_string(n) +
                         " but the measure lives in dimension " +
                         std::to_string(spec.ambient_dim));
    spec.validate();

    ExhaustionVerdict v;
    v.structure = analyze_structure(a);
    v.gaussian_part = in.gaussian;
    const size_t q = v.structure.q();

    const Subspace support = spec.support_span();
    v.m = support.dim();
    const Subspace h = in.gaussian ? krylov_span(a, in.gaussian_krylov, q) : Subspace::zero(n);

    v.controllable = krylov_span(a, support, q).sum(h).is_full();

    const auto gen_sets = spec.generator_sets();
    if (gen_sets.size() > kMaxInfiniteComponents)
        throw ValidationError("more than " + std::to_string(kMaxInfiniteComponents) +
                              " infinite-activity components; subset enumeration refused");

    // Candidate witness subspaces: spans of generator-set subsets, visited
    // by (dimension, lexicographic component ids).
    struct Candidate {
        std::vector<size_t> ids;
        Subspace span;
    };
    std::vector<Candidate> candidates;
    const size_t k = gen_sets.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        std::vector<size_t> ids;
        std::vector<RationalVector> vecs;
        for (size_t i = 0; i < k; ++i) {
            if (!(mask & (size_t{1} << i))) continue;
            ids.push_back(gen_sets[i].component_id);
            vecs.insert(vecs.end(), gen_sets[i].vectors.begin(), gen_sets[i].vectors.end());
        }
        candidates.push_back(Candidate{std::move(ids), Subspace::span_of(n, vecs)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.span.dim() != y.span.dim()) return x.span.dim() < y.span.dim();
        return std::lexicographical_compare(x.ids.begin(), x.ids.end(), y.ids.begin(),
                                            y.ids.end());
    });

    std::map<std::string, bool> full_cache;
    auto krylov_full = [&](const Subspace& s) {
        auto key = span_key(s);
        if (auto it = full_cache.find(key); it != full_cache.end()) return it->second;
        bool full = krylov_span(a, s, q).sum(h).is_full();
        full_cache.emplace(std::move(key), full);
        return full;
    };

    for (const auto& cand : candidates) {
        if (cand.ids.empty() && !h.is_full()) continue; // empty subset only works via the Gaussian part
        if (!krylov_full(cand.span)) continue;
        v.exhausts = true;
        v.witness = cand.span;
        v.witness_r = cand.span.dim();
        v.witness_components = cand.ids;
        break;
    }

    if (!v.exhausts) {
        std::vector<RationalVector> all_gens;
        for (const auto& g : gen_sets)
            all_gens.insert(all_gens.end(), g.vectors.begin(), g.vectors.end());
        Subspace trapped = krylov_span(a, Subspace::span_of(n, all_gens), q).sum(h);
        v.obstruction = trapped.annihilator();
    }

    v.tau_zero = v.exhausts;
    v.abs_continuous = v.structure.is_singular
                           ? AbsContinuity::TheoremInapplicableSingularA
                           : (v.exhausts ? AbsContinuity::Yes : AbsContinuity::No);

    if (in.gaussian) {
        std::vector<RationalVector> witness_basis;
        if (v.witness) witness_basis = v.witness->basis();
        v.kappa_effective = kappa_with_gaussian(a, q, support, h, witness_basis);
    } else {
        v.kappa_effective = v.structure.cyclic_index;
    }

    if (v.exhausts && !(v.witness_r >= v.kappa_effective && v.witness_r <= v.m))
        throw NumericalError("witness dimension " + std::to_string(v.witness_r) +
                             " escapes [kappa, m] = [" + std::to_string(v.kappa_effective) +
                             ", " + std::to_string(v.m) + "]; model-class assumption violated");
    return v;
}

} // namespace

ExhaustionVerdict decide_exhaustion(const RationalMatrix& a, const MeasureSpec& spec) {
    return decide_impl(DecideInputs{a, spec, Subspace::zero(a.rows()), false});
}

ExhaustionVerdict decide_exhaustion_with_gaussian(const RationalMatrix& a,
                                                  const MeasureSpec& spec,
                                                  const Subspace& w_image) {
    if (w_image.ambient_dim() != a.rows())
        throw ShapeError("gaussian image dimension mismatch");
    if (w_image.is_zero()) return decide_impl(DecideInputs{a, spec, w_image, false});
    return decide_impl(DecideInputs{a, spec, w_image, true});
}

std::vector<RationalVector> heymann_sequence(const RationalMatrix& a,
                                             const Subspace& support_span) {
    if (!a.is_square()) throw ShapeError("drift matrix must be square");
    const size_t n = a.rows();
    if (support_span.ambient_dim() != n) throw ShapeError("support span dimension mismatch");
    const size_t q = static_cast<size_t>(minimal_polynomial(a).degree());
    if (!krylov_span(a, support_span, q).is_full())
        throw ValidationError("heymann_sequence requires a controllable pair");

    std::vector<RationalVector> pool = candidate_pool(support_span, 6 * n * n);
    std::vector<Subspace> kry;
    kry.reserve(pool.size());
    for (const auto& b : pool) kry.push_back(krylov_span(a, Subspace::span_of(n, {b}), q));

    // Greedy: grow the summed Krylov span as fast as possible.
    std::vector<size_t> chosen;
    Subspace u = Subspace::zero(n);
    while (!u.is_full()) {
        size_t best = pool.size();
        size_t best_dim = u.dim();
        for (size_t i = 0; i < pool.size(); ++i) {
            size_t d = u.sum(kry[i]).dim();
            if (d > best_dim) {
                best_dim = d;
                best = i;
            }
        }
        if (best == pool.size())
            throw NumericalError("greedy generating-sequence search stalled");
        chosen.push_back(best);
        u = u.sum(kry[best]);
    }

    const size_t kappa = cyclic_index(a);
    auto sum_without = [&](const std::vector<size_t>& keep, size_t skip1, size_t skip2) {
        Subspace s = Subspace::zero(n);
        for (size_t t = 0; t < keep.size(); ++t)
            if (t != skip1 && t != skip2) s = s.sum(kry[keep[t]]);
        return s;
    };

    bool improved = true;
    while (chosen.size() > kappa && improved) {
        improved = false;
        // Drop members whose Krylov span is redundant.
        for (size_t i = 0; i < chosen.size() && chosen.size() > kappa; ++i) {
            if (sum_without(chosen, i, i).is_full()) {
                chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(i));
                improved = true;
                --i;
            }
        }
        // Merge a pair into one pool vector when possible.
        for (size_t i = 0; i < chosen.size() && chosen.size() > kappa; ++i) {
            bool merged = false;
            for (size_t j = i + 1; j < chosen.size() && !merged; ++j) {
                Subspace rest = sum_without(chosen, i, j);
                if (rest.is_full()) continue; // handled by the drop pass
                for (size_t p = 0; p < pool.size(); ++p) {
                    if (rest.sum(kry[p]).is_full()) {
                        chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(j));
                        chosen[i] = p;
                        merged = true;
                        improved = true;
                        break;
                    }
                }
            }
        }
    }

    std::vector<RationalVector> seq;
    Subspace check = Subspace::zero(n);
    for (size_t idx : chosen) {
        seq.push_back(pool[idx]);
        check = check.sum(kry[idx]);
    }
    if (!check.is_full() || Subspace::span_of(n, seq).dim() != seq.size() ||
        seq.size() < kappa || seq.size() > support_span.dim())
        throw NumericalError("generating-sequence postcondition violated");
    return seq;
}

namespace {

struct SupportCandidate {
    size_t component;
    RationalVector vec; // exact point of the component's support
    Rational curve_param; // curve components: the parameter of the point
};

double angle_between(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    double c = u.dot(v) / (u.norm() * v.norm());
    c = std::clamp(c, -1.0, 1.0);
    return std::acos(c);
}

// Support vectors usable as cone axes, per component. Curves contribute
// exact points gamma(t) on a dyadic parameter ladder.
std::vector<SupportCandidate> support_candidates(const MeasureSpec& spec,
                                                 const std::vector<size_t>& component_ids,
                                                 const Rational& curve_scale) {
    std::vector<SupportCandidate> out;
    for (size_t id : component_ids) {
        const MeasureComponent& c = spec.components[id];
        switch (c.kind()) {
            case ComponentKind::AtomSet:
                break;
            case ComponentKind::InfiniteRay:
                out.push_back({id, std::get<RayGeometry>(c.geometry).direction, Rational(0)});
                break;
            case ComponentKind::SubspaceAC: {
                const auto& g = std::get<SubspaceGeometry>(c.geometry);
                for (const auto& b : g.basis) out.push_back({id, b, Rational(0)});
                // combinations stay on the carrier, which is all support
                for (size_t i = 0; i + 1 < g.basis.size(); ++i) {
                    RationalVector s(g.basis[i].size());
                    for (size_t t = 0; t < s.size(); ++t) s[t] = g.basis[i][t] + g.basis[i + 1][t];
                    out.push_back({id, std::move(s), Rational(0)});
                }
                break;
            }
            case ComponentKind::PolynomialCurve: {
                const auto& g = std::get<CurveGeometry>(c.geometry);
                Rational t = curve_scale;
                const size_t rungs = g.coefficients.size() + 4;
                for (size_t k = 0; k < rungs; ++k) {
                    out.push_back({id, curve_point(g, t), t});
                    t = t / Rational(2);
                }
                break;
            }
        }
    }
    return out;
}

// Count of parameter-ladder rungs whose direction falls inside the cone and
// whose point is nonzero; unit mass per rung makes the bound exact.
double curve_cone_mass(const CurveGeometry& g, const Eigen::VectorXd& axis_unit,
                       double half_width, double* min_radius) {
    const double beta = g.beta.to_double();
    double csum = 0.0;
    for (const auto& ck : g.coefficients) csum += to_float(ck).norm();
    double count = 0.0;
    double rmin = std::numeric_limits<double>::infinity();
    // directions of rungs converge; beyond the window they leave the cone
    size_t misses_after_hit = 0;
    bool hit = false;
    for (size_t j = 1; j <= 10'000'000; ++j) {
        double s = std::pow(static_cast<double>(j), -beta);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(axis_unit.size());
        for (size_t k = g.coefficients.size(); k-- > 0;)
            p = s * (p + to_float(g.coefficients[k]));
        double norm = p.norm();
        if (norm == 0.0) continue;
        if (angle_between(p, axis_unit) <= half_width) {
            count += 1.0;
            rmin = std::min(rmin, norm);
            hit = true;
            misses_after_hit = 0;
        } else if (hit && ++misses_after_hit > 64) {
            break; // directions have drifted past the cone
        }
        if (!hit && s * csum < 1e-12) break;
    }
    if (min_radius) *min_radius = std::isfinite(rmin) ? rmin : 0.0;
    return count;
}

} // namespace

GarlandCertificate build_garland(const RationalMatrix& a, const MeasureSpec& spec,
                                 double mass_bound, RngStream stream) {
    (void)stream; // construction is deterministic; kept for interface stability
    if (mass_bound <= 0.0) throw ValidationError("mass bound must be positive");
    ExhaustionVerdict verdict = decide_exhaustion(a, spec);
    if (!verdict.exhausts)
        throw ValidationError("build_garland requires an exhausting measure");

    const size_t n = a.rows();
    const size_t q = verdict.structure.q();
    FloatMatrix af = to_float(a);

    // Powers used by the perturbation bound on the Krylov stack.
    std::vector<FloatMatrix> powers(q);
    powers[0] = FloatMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 1; i < q; ++i) powers[i] = powers[i - 1] * af;
    double power_norm_sq = 0.0;
    for (const auto& p : powers) power_norm_sq += p.squaredNorm();

    Rational curve_scale(1, 2);
    for (int refine = 0; refine < 64; ++refine) {
        auto candidates = support_candidates(spec, verdict.witness_components, curve_scale);
        if (candidates.empty()) throw NumericalError("no support candidates for garland");

        // Greedy generating sequence restricted to support vectors.
        std::vector<Subspace> kry;
        kry.reserve(candidates.size());
        for (const auto& cand : candidates)
            kry.push_back(krylov_span(a, Subspace::span_of(n, {cand.vec}), q));
        std::vector<size_t> chosen;
        Subspace u = Subspace::zero(n);
        while (!u.is_full()) {
            size_t best = candidates.size();
            size_t best_dim = u.dim();
            for (size_t i = 0; i < candidates.size(); ++i) {
                size_t d = u.sum(kry[i]).dim();
                if (d > best_dim) {
                    best_dim = d;
                    best = i;
                }
            }
            if (best == candidates.size())
                throw NumericalError("greedy garland search stalled");
            chosen.push_back(best);
            u = u.sum(kry[best]);
        }
        const size_t r = chosen.size();

        // Exact full rank of the Krylov stack at the axes.
        std::vector<RationalVector> axis_vecs;
        for (size_t idx : chosen) axis_vecs.push_back(candidates[idx].vec);
        {
            std::vector<RationalVector> stack_rows;
            for (const auto& b : axis_vecs) {
                RationalVector v = b;
                stack_rows.push_back(v);
                for (size_t i = 1; i < q; ++i) {
                    v = a * v;
                    stack_rows.push_back(v);
                }
            }
            if (rank(RationalMatrix::from_rows(stack_rows, n)) != n)
                throw NumericalError("garland axes lost full Krylov rank");
        }

        // Unit axes, margin, disjointness.
        std::vector<Eigen::VectorXd> axes;
        for (const auto& v : axis_vecs) {
            Eigen::VectorXd f = to_float(v);
            axes.push_back(f / f.norm());
        }
        FloatMatrix stack(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(q * r));
        FloatMatrix axes_mat(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
        for (size_t j = 0; j < r; ++j) {
            axes_mat.col(static_cast<Eigen::Index>(j)) = axes[j];
            for (size_t i = 0; i < q; ++i)
                stack.col(static_cast<Eigen::Index>(j * q + i)) = powers[i] * axes[j];
        }
        Eigen::JacobiSVD<FloatMatrix> svd(stack);
        const double sigma_min = svd.singularValues()(static_cast<Eigen::Index>(n - 1));
        Eigen::JacobiSVD<FloatMatrix> axes_svd(axes_mat);
        const double axes_sigma =
            axes_svd.singularValues()(static_cast<Eigen::Index>(r - 1));

        double min_angle = M_PI;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = i + 1; j < r; ++j)
                min_angle = std::min(min_angle, angle_between(axes[i], axes[j]));

        const double safety = 10.0;
        const double lcoef = std::sqrt(static_cast<double>(r) * power_norm_sq);
        // three width caps: the Krylov stack must keep rank n under
        // perturbation, the selected vectors themselves must stay linearly
        // independent, and the cones must not touch
        double w_margin = 2.0 * std::asin(std::min(1.0, sigma_min / (safety * lcoef) / 2.0));
        double w_indep = 2.0 * std::asin(std::min(
                                  1.0, axes_sigma / (safety * std::sqrt(static_cast<double>(r))) /
                                           2.0));
        double w_disjoint = (r > 1) ? 0.45 * min_angle : M_PI / 8.0;
        double w = std::min({w_margin, w_indep, w_disjoint, M_PI / 8.0});
        if (w <= 0.0) throw NumericalError("garland cone width collapsed to zero");

        // Per-cone masses; curves may need a finer parameter scale.
        GarlandCertificate cert;
        cert.sequence = axis_vecs;
        cert.stack_sigma_min = sigma_min;
        cert.perturbation_bound = 2.0 * std::sin(w / 2.0) * lcoef;
        cert.safety_factor = sigma_min / std::max(cert.perturbation_bound, 1e-300);
        bool needs_refine = false;
        for (size_t j = 0; j < r; ++j) {
            const auto& cand = candidates[chosen[j]];
            GarlandCone cone;
            cone.axis = cand.vec;
            cone.axis_unit = axes[j];
            cone.half_width = w;
            cone.component = cand.component;
            const MeasureComponent& comp = spec.components[cand.component];
            if (comp.kind() == ComponentKind::PolynomialCurve) {
                double rmin = 0.0;
                double mass = curve_cone_mass(std::get<CurveGeometry>(comp.geometry),
                                              cone.axis_unit, w, &rmin);
                if (mass < mass_bound) {
                    needs_refine = true;
                    break;
                }
                cone.mass_infinite = false;
                cone.mass_lower_bound = mass;
                cone.inner_radius = 0.5 * rmin;
            } else {
                cone.mass_infinite = true;
                cone.mass_lower_bound = std::numeric_limits<double>::infinity();
                cone.inner_radius = 0.0;
            }
            cert.cones.push_back(std::move(cone));
        }
        if (!needs_refine) return cert;
        curve_scale = curve_scale / Rational(2);
    }
    throw NumericalError(
        "garland construction did not reach the requested mass bound; cone geometry too tight");
}

Canonical2d canonical_case_2d(const RationalMatrix& a) {
    if (!a.is_square() || a.rows() != 2) throw ShapeError("canonical_case_2d expects a 2x2 matrix");
    if (determinant(a).is_zero())
        throw ValidationError("canonical_case_2d: classification needs a nonsingular matrix");
    Rational tr = a.trace();
    Rational disc = tr * tr - Rational(4) * determinant(a);
    if (disc < Rational(0)) return Canonical2d::NoRealEigenvalue;
    if (disc > Rational(0)) return Canonical2d::DistinctRealEigenvalues;
    Rational half_tr = tr / Rational(2);
    bool scalar = a.at(0, 1).is_zero() && a.at(1, 0).is_zero() && a.at(0, 0) == half_tr &&
                  a.at(1, 1) == half_tr;
    return scalar ? Canonical2d::ScalarMultipleOfIdentity : Canonical2d::JordanCellType;
}

namespace {

bool in_target(const TargetRegion& t, const Eigen::VectorXd& x) {
    if (t.kind == TargetRegion::Kind::HalfSpace) {
        double s = 0.0;
        for (size_t i = 0; i < t.normal.size(); ++i)
            s += t.normal[i].to_double() * x(static_cast<Eigen::Index>(i));
        return s >= t.offset.to_double();
    }
    for (size_t i = 0; i < t.lo.size(); ++i) {
        double xi = x(static_cast<Eigen::Index>(i));
        if (xi < t.lo[i].to_double() || xi > t.hi[i].to_double()) return false;
    }
    return true;
}

// Fraction of s in [0,1] with flow(s) inside the target; panel endpoints are
// probed and every panel whose probes disagree is bisected, so a crossing is
// located to 2^-42 of a panel.
template <typename Flow>
double indicator_fraction(const TargetRegion& target, Flow&& flow, size_t panels) {
    constexpr int kMaxDepth = 42;
    std::function<double(double, double, bool, bool, int)> seg =
        [&](double a, double b, bool va, bool vb, int depth) -> double {
        if (depth >= kMaxDepth)
            return 0.5 * (b - a) * (static_cast<double>(va) + static_cast<double>(vb));
        const double c = 0.5 * (a + b);
        const bool vc = in_target(target, flow(c));
        if (va == vc && vc == vb && depth >= 1) return va ? (b - a) : 0.0;
        return seg(a, c, va, vc, depth + 1) + seg(c, b, vc, vb, depth + 1);
    };
    double total = 0.0;
    bool prev = in_target(target, flow(0.0));
    for (size_t p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) / static_cast<double>(panels);
        const double b = static_cast<double>(p + 1) / static_cast<double>(panels);
        const bool vb = in_target(target, flow(b));
        total += seg(a, b, prev, vb, 0);
        prev = vb;
    }
    return total;
}

// Radial tail mass scale/alpha * (lo^-alpha - hi^-alpha) of { r >= lo } cut at hi.
double radial_mass(double scale, double alpha, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    double upper = std::isinf(hi) ? 0.0 : std::pow(hi, -alpha);
    return scale / alpha * (std::pow(lo, -alpha) - upper);
}

// Mass of { r >= eps : r * y in half-space <u,x> >= c }.
double ray_halfspace_mass(const Eigen::VectorXd& y, const TargetRegion& t, double scale,
                          double alpha, double eps) {
    double a = 0.0;
    for (size_t i = 0; i < t.normal.size(); ++i)
        a += t.normal[i].to_double() * y(static_cast<Eigen::Index>(i));
    const double c = t.offset.to_double();
    const double inf = std::numeric_limits<double>::infinity();
    if (a == 0.0) return (0.0 >= c) ? radial_mass(scale, alpha, eps, inf) : 0.0;
    if (a > 0.0) return radial_mass(scale, alpha, std::max(eps, c / a), inf);
    return radial_mass(scale, alpha, eps, c / a); // negative slope: r <= c/a
}

// Mass of { r >= eps : r * y in box }: the coordinate constraints intersect
// to a single radius interval.
double ray_box_mass(const Eigen::VectorXd& y, const TargetRegion& t, double scale, double alpha,
                    double eps) {
    double lo = eps, hi = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < t.lo.size(); ++i) {
        double yi = y(static_cast<Eigen::Index>(i));
        double a = t.lo[i].to_double(), b = t.hi[i].to_double();
        if (yi == 0.0) {
            if (a > 0.0 || b < 0.0) return 0.0;
            continue;
        }
        double r1 = a / yi, r2 = b / yi;
        if (r1 > r2) std::swap(r1, r2);
        lo = std::max(lo, r1);
        hi = std::min(hi, r2);
    }
    return radial_mass(scale, alpha, lo, hi);
}

double ray_mass(const Eigen::VectorXd& y, const TargetRegion& t, double scale, double alpha,
                double eps) {
    return t.kind == TargetRegion::Kind::HalfSpace ? ray_halfspace_mass(y, t, scale, alpha, eps)
                                                   : ray_box_mass(y, t, scale, alpha, eps);
}

} // namespace

NuXEstimate levy_measure_of_x1(const RationalMatrix& a, const MeasureSpec& spec,
                               const TargetRegion& target, size_t resolution, double eps) {
    if (!a.is_square() || a.rows() != spec.ambient_dim)
        throw ShapeError("levy_measure_of_x1: dimension mismatch");
    spec.validate();
    if (resolution == 0) throw ValidationError("resolution must be positive");
    if (eps <= 0.0) throw ValidationError("truncation level eps must be positive");
    if (target.kind == TargetRegion::Kind::HalfSpace) {
        if (target.normal.size() != spec.ambient_dim)
            throw ShapeError("target normal dimension mismatch");
    } else if (target.lo.size() != spec.ambient_dim || target.hi.size() != spec.ambient_dim) {
        throw ShapeError("target box dimension mismatch");
    }

    FloatMatrix af = to_float(a);
    NuXEstimate out;
    out.eps = eps;

    const double gauss = 0.5773502691896257;
    auto gauss_sum_01 = [&](auto&& f) {
        double total = 0.0;
        for (size_t p = 0; p < resolution; ++p) {
            double lo = static_cast<double>(p) / static_cast<double>(resolution);
            double hi = static_cast<double>(p + 1) / static_cast<double>(resolution);
            double h = 0.5 * (hi - lo), c = 0.5 * (lo + hi);
            total += h * (f(c - h * gauss) + f(c + h * gauss));
        }
        return total;
    };

    for (size_t ci = 0; ci < spec.components.size(); ++ci) {
        const MeasureComponent& comp = spec.components[ci];
        switch (comp.kind()) {
            case ComponentKind::AtomSet: {
                for (const auto& atom : std::get<AtomSetGeometry>(comp.geometry).atoms) {
                    Eigen::VectorXd p = to_float(atom.point);
                    auto flow = [&](double s) -> Eigen::VectorXd { return expm(af, s) * p; };
                    out.value += atom.mass.to_double() *
                                 indicator_fraction(target, flow, resolution);
                }
                break;
            }
            case ComponentKind::PolynomialCurve: {
                out.truncated_components.push_back(ci);
                const auto& g = std::get<CurveGeometry>(comp.geometry);
                const double beta = g.beta.to_double();
                double csum = 0.0;
                for (const auto& ck : g.coefficients) csum += to_float(ck).norm();
                for (size_t j = 1;; ++j) {
                    double s = std::pow(static_cast<double>(j), -beta);
                    if (s * csum < eps) break;
                    Eigen::VectorXd p = Eigen::VectorXd::Zero(
                        static_cast<Eigen::Index>(spec.ambient_dim));
                    for (size_t k2 = g.coefficients.size(); k2-- > 0;)
                        p = s * (p + to_float(g.coefficients[k2]));
                    if (p.norm() < eps) continue;
                    auto flow = [&](double t) -> Eigen::VectorXd { return expm(af, t) * p; };
                    out.value += indicator_fraction(target, flow, resolution);
                }
                break;
            }
            case ComponentKind::InfiniteRay: {
                out.truncated_components.push_back(ci);
                const auto& g = std::get<RayGeometry>(comp.geometry);
                Eigen::VectorXd dir = to_float(g.direction);
                dir /= dir.norm();
                const double alpha = g.alpha.to_double();
                const double scale = g.scale.to_double() / (g.two_sided ? 2.0 : 1.0);
                out.value += gauss_sum_01([&](double s) {
                    Eigen::VectorXd y = expm(af, s) * dir;
                    double m = ray_mass(y, target, scale, alpha, eps);
                    if (g.two_sided) m += ray_mass(Eigen::VectorXd(-y), target, scale, alpha, eps);
                    return m;
                });
                break;
            }
            case ComponentKind::SubspaceAC: {
                out.truncated_components.push_back(ci);
                const auto& g = std::get<SubspaceGeometry>(comp.geometry);
                const double alpha = g.alpha.to_double();
                if (g.basis.size() == 1) {
                    Eigen::VectorXd dir = to_float(g.basis[0]);
                    dir /= dir.norm();
                    const double scale = g.scale.to_double() / 2.0; // both orientations
                    out.value += gauss_sum_01([&](double s) {
                        Eigen::VectorXd y = expm(af, s) * dir;
                        return ray_mass(y, target, scale, alpha, eps) +
                               ray_mass(Eigen::VectorXd(-y), target, scale, alpha, eps);
                    });
                } else if (g.basis.size() == 2) {
                    Eigen::MatrixXd frame(static_cast<Eigen::Index>(spec.ambient_dim), 2);
                    frame.col(0) = to_float(g.basis[0]);
                    frame.col(1) = to_float(g.basis[1]);
                    Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
                    Eigen::MatrixXd qmat =
                        qr.householderQ() *
                        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(spec.ambient_dim), 2);
                    const double scale = g.scale.to_double();
                    const double two_pi = 6.283185307179586476925287;
                    out.value += gauss_sum_01([&](double s) {
                        FloatMatrix es = expm(af, s);
                        double angular = 0.0;
                        const size_t nodes = std::max<size_t>(resolution, 16);
                        for (size_t t = 0; t < nodes; ++t) {
                            double theta = two_pi * (static_cast<double>(t) + 0.5) /
                                           static_cast<double>(nodes);
                            Eigen::VectorXd u =
                                qmat.col(0) * std::cos(theta) + qmat.col(1) * std::sin(theta);
                            angular += ray_mass(es * u, target, scale, alpha, eps);
                        }
                        return angular / static_cast<double>(nodes);
                    });
                } else {
                    throw ValidationError(
                        "levy_measure_of_x1: subspace components beyond dimension 2 are not "
                        "supported by the quadrature");
                }
                break;
            }
        }
    }
    return out;
}

} // namespace ouac
