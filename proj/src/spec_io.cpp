#include "ouac/spec_io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "ouac/errors.hpp"
#include "ouac/matfun.hpp"

namespace ouac {

namespace {

using nlohmann::json;

std::string shortest_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw NumericalError("double formatting failed");
    return std::string(buf, ptr);
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + ": missing required field '" + key + "'");
    return *it;
}

RationalVector rational_vector_from_json(const json& v, const std::string& where) {
    if (!v.is_array()) throw ValidationError(where + ": expected an array of rationals");
    RationalVector out;
    for (size_t i = 0; i < v.size(); ++i)
        out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

RationalMatrix rational_matrix_from_json(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty())
        throw ValidationError(where + ": expected a nonempty array of rows");
    std::vector<RationalVector> rows;
    for (size_t i = 0; i < v.size(); ++i)
        rows.push_back(rational_vector_from_json(v[i], where + "[" + std::to_string(i) + "]"));
    for (const auto& r : rows)
        if (r.size() != rows.front().size())
            throw ValidationError(where + ": ragged rows");
    return RationalMatrix::from_rows(rows, rows.front().size());
}

json rational_vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
}

json rational_matrix_to_json(const RationalMatrix& m) {
    json out = json::array();
    for (size_t i = 0; i < m.rows(); ++i) out.push_back(rational_vector_to_json(m.row(i)));
    return out;
}

MeasureComponent component_from_json(const json& j, const std::string& where) {
    std::string kind = require(j, "kind", where).get<std::string>();
    if (kind == "atoms") {
        AtomSetGeometry g;
        const json& atoms = require(j, "atoms", where);
        if (!atoms.is_array()) throw ValidationError(where + ".atoms: expected an array");
        for (size_t i = 0; i < atoms.size(); ++i) {
            std::string aw = where + ".atoms[" + std::to_string(i) + "]";
            Atom a;
            a.point = rational_vector_from_json(require(atoms[i], "point", aw), aw + ".point");
            a.mass = rational_from_json(require(atoms[i], "mass", aw), aw + ".mass");
            g.atoms.push_back(std::move(a));
        }
        return MeasureComponent{std::move(g)};
    }
    if (kind == "ray") {
        RayGeometry g;
        g.direction =
            rational_vector_from_json(require(j, "direction", where), where + ".direction");
        g.alpha = rational_from_json(require(j, "alpha", where), where + ".alpha");
        g.scale = rational_from_json(require(j, "scale", where), where + ".scale");
        g.two_sided = j.value("two_sided", false);
        return MeasureComponent{std::move(g)};
    }
    if (kind == "subspace") {
        SubspaceGeometry g;
        const json& basis = require(j, "basis", where);
        if (!basis.is_array() || basis.empty())
            throw ValidationError(where + ".basis: expected a nonempty array of vectors");
        for (size_t i = 0; i < basis.size(); ++i)
            g.basis.push_back(rational_vector_from_json(
                basis[i], where + ".basis[" + std::to_string(i) + "]"));
        g.alpha = rational_from_json(require(j, "alpha", where), where + ".alpha");
        g.scale = rational_from_json(require(j, "scale", where), where + ".scale");
        return MeasureComponent{std::move(g)};
    }
    if (kind == "curve") {
        CurveGeometry g;
        const json& coeffs = require(j, "coefficients", where);
        if (!coeffs.is_array() || coeffs.empty())
            throw ValidationError(where + ".coefficients: expected a nonempty array of vectors");
        for (size_t i = 0; i < coeffs.size(); ++i)
            g.coefficients.push_back(rational_vector_from_json(
                coeffs[i], where + ".coefficients[" + std::to_string(i) + "]"));
        g.beta = rational_from_json(require(j, "beta", where), where + ".beta");
        return MeasureComponent{std::move(g)};
    }
    throw ValidationError(where + ".kind: unknown component kind '" + kind +
                          "' (expected atoms|ray|subspace|curve)");
}

json component_to_json(const MeasureComponent& c) {
    json j;
    j["kind"] = kind_name(c.kind());
    switch (c.kind()) {
        case ComponentKind::AtomSet: {
            json atoms = json::array();
            for (const auto& a : std::get<AtomSetGeometry>(c.geometry).atoms)
                atoms.push_back(
                    {{"point", rational_vector_to_json(a.point)}, {"mass", a.mass.to_string()}});
            j["atoms"] = std::move(atoms);
            break;
        }
        case ComponentKind::InfiniteRay: {
            const auto& g = std::get<RayGeometry>(c.geometry);
            j["direction"] = rational_vector_to_json(g.direction);
            j["alpha"] = g.alpha.to_string();
            j["scale"] = g.scale.to_string();
            j["two_sided"] = g.two_sided;
            break;
        }
        case ComponentKind::SubspaceAC: {
            const auto& g = std::get<SubspaceGeometry>(c.geometry);
            json basis = json::array();
            for (const auto& b : g.basis) basis.push_back(rational_vector_to_json(b));
            j["basis"] = std::move(basis);
            j["alpha"] = g.alpha.to_string();
            j["scale"] = g.scale.to_string();
            break;
        }
        case ComponentKind::PolynomialCurve: {
            const auto& g = std::get<CurveGeometry>(c.geometry);
            json coeffs = json::array();
            for (const auto& ck : g.coefficients) coeffs.push_back(rational_vector_to_json(ck));
            j["coefficients"] = std::move(coeffs);
            j["beta"] = g.beta.to_string();
            break;
        }
    }
    return j;
}

} // namespace

Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
    try {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(static_cast<long>(v.get<int64_t>()));
        if (v.is_number_float()) return Rational::from_double_decimal(v.get<double>());
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": expected a rational (number or \"p/q\" string)");
}

ProblemSpec parse_problem_json(const nlohmann::json& j) try {
    ProblemSpec spec;
    const json& nj = require(j, "n", "problem");
    if (!nj.is_number_unsigned() || nj.get<uint64_t>() == 0)
        throw ValidationError("n: must be a positive integer");
    spec.n = nj.get<size_t>();

    spec.a = rational_matrix_from_json(require(j, "A", "problem"), "A");
    if (spec.a.rows() != spec.n || spec.a.cols() != spec.n)
        throw ValidationError("A: must be a square " + std::to_string(spec.n) + "x" +
                              std::to_string(spec.n) + " matrix");

    spec.measure.ambient_dim = spec.n;
    if (auto it = j.find("measure"); it != j.end()) {
        if (!it->is_array()) throw ValidationError("measure: expected an array of components");
        for (size_t i = 0; i < it->size(); ++i)
            spec.measure.components.push_back(
                component_from_json((*it)[i], "measure[" + std::to_string(i) + "]"));
    }
    spec.measure.validate();

    if (auto it = j.find("B"); it != j.end()) {
        RationalMatrix b = rational_matrix_from_json(*it, "B");
        if (b.rows() != spec.n)
            throw ValidationError("B: must have " + std::to_string(spec.n) + " rows");
        std::vector<RationalVector> cols;
        for (size_t c = 0; c < b.cols(); ++c) cols.push_back(b.col(c));
        Subspace image = Subspace::span_of(spec.n, cols);
        if (!image.contains(spec.measure.support_span()))
            throw ValidationError(
                "B: the measure support must lie inside the image of B");
        spec.b = std::move(b);
    }

    if (auto it = j.find("gaussian_subspace"); it != j.end()) {
        if (!it->is_array())
            throw ValidationError("gaussian_subspace: expected an array of vectors");
        std::vector<RationalVector> vecs;
        for (size_t i = 0; i < it->size(); ++i)
            vecs.push_back(rational_vector_from_json(
                (*it)[i], "gaussian_subspace[" + std::to_string(i) + "]"));
        spec.gaussian_image = Subspace::span_of(spec.n, vecs);
    }

    if (auto it = j.find("x0"); it != j.end()) {
        spec.x0 = rational_vector_from_json(*it, "x0");
        if (spec.x0.size() != spec.n)
            throw ValidationError("x0: expected " + std::to_string(spec.n) + " coordinates");
    }

    if (auto it = j.find("simulation"); it != j.end()) {
        const json& s = *it;
        if (s.contains("eps")) spec.sim.eps = rational_from_json(s["eps"], "simulation.eps").to_double();
        if (spec.sim.eps <= 0.0) throw ValidationError("simulation.eps: must be positive");
        if (s.contains("samples")) spec.sim.samples = s["samples"].get<size_t>();
        if (spec.sim.samples == 0) throw ValidationError("simulation.samples: must be positive");
        if (s.contains("seed")) spec.sim.seed = s["seed"].get<uint64_t>();
        if (s.contains("horizon"))
            spec.sim.horizon = rational_from_json(s["horizon"], "simulation.horizon").to_double();
        if (spec.sim.horizon < 0.0)
            throw ValidationError("simulation.horizon: must be nonnegative");
        if (s.contains("workers")) spec.sim.workers = s["workers"].get<unsigned>();
        if (spec.sim.workers == 0) throw ValidationError("simulation.workers: must be positive");
    }
    return spec;
} catch (const nlohmann::json::exception& e) {
    // wrong JSON types land here; field-level checks throw ValidationError directly
    throw ValidationError(std::string("problem file: ") + e.what());
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open problem file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
    }
    return parse_problem_json(j);
}

nlohmann::json problem_to_json(const ProblemSpec& spec) {
    json j;
    j["n"] = spec.n;
    j["A"] = rational_matrix_to_json(spec.a);
    if (spec.b) j["B"] = rational_matrix_to_json(*spec.b);
    if (spec.gaussian_image) {
        json vecs = json::array();
        for (const auto& v : spec.gaussian_image->basis())
            vecs.push_back(rational_vector_to_json(v));
        j["gaussian_subspace"] = std::move(vecs);
    }
    json comps = json::array();
    for (const auto& c : spec.measure.components) comps.push_back(component_to_json(c));
    j["measure"] = std::move(comps);
    if (!spec.x0.empty()) j["x0"] = rational_vector_to_json(spec.x0);
    json sim;
    sim["eps"] = shortest_double(spec.sim.eps);
    sim["samples"] = spec.sim.samples;
    if (spec.sim.seed) sim["seed"] = *spec.sim.seed;
    sim["horizon"] = shortest_double(spec.sim.horizon);
    sim["workers"] = spec.sim.workers;
    j["simulation"] = std::move(sim);
    return j;
}

nlohmann::json verdict_to_json(const ExhaustionVerdict& v) {
    json j;
    j["controllable"] = v.controllable;
    j["exhausts"] = v.exhausts;
    j["tau_zero"] = v.tau_zero;
    j["abs_continuous"] = to_string(v.abs_continuous);
    if (v.witness) {
        json w;
        w["r"] = v.witness_r;
        json basis = json::array();
        for (const auto& b : v.witness->basis()) basis.push_back(rational_vector_to_json(b));
        w["basis"] = std::move(basis);
        w["components"] = v.witness_components;
        j["witness"] = std::move(w);
    }
    if (!v.obstruction.empty()) {
        json forms = json::array();
        for (const auto& f : v.obstruction) forms.push_back(rational_vector_to_json(f));
        j["obstruction"] = std::move(forms);
    }
    j["gaussian_part"] = v.gaussian_part;
    return j;
}

nlohmann::json diagnostics_to_json(const DiagnosticsReport& d, const ConsistencyResult& c) {
    json j;
    j["samples"] = d.sample_count;
    j["duplicate_rate"] = d.duplicate_rate;
    if (d.nn.used > 0) {
        j["nn_dimension"] = {{"estimate", d.nn.estimate},
                             {"ci_low", d.nn.lo},
                             {"ci_high", d.nn.hi},
                             {"points_used", d.nn.used}};
    }
    if (d.hyperplane) {
        json h;
        h["functional"] = rational_vector_to_json(d.hyperplane->functional);
        h["offset"] = d.hyperplane->offset;
        h["tol"] = d.hyperplane->tol;
        h["concentration"] = d.hyperplane->concentration;
        if (d.hyperplane->predicted_lower_bound)
            h["predicted_lower_bound"] = *d.hyperplane->predicted_lower_bound;
        j["hyperplane_test"] = std::move(h);
    }
    j["random_functional_max_concentration"] = d.random_functional_max_concentration;
    switch (c.flag) {
        case Consistency::Consistent: j["verdict_consistency"] = "consistent"; break;
        case Consistency::Inconsistent: j["verdict_consistency"] = "inconsistent"; break;
        case Consistency::NoClaim: j["verdict_consistency"] = "no-claim"; break;
    }
    j["narrative"] = c.narrative;
    return j;
}

nlohmann::json make_report(const ProblemSpec& spec, const ExhaustionVerdict& verdict,
                           const nlohmann::json* diagnostics, uint64_t seed) {
    json j;
    j["schema"] = kReportSchemaVersion;
    j["verdict"] = verdict_to_json(verdict);

    json st;
    st["n"] = spec.n;
    st["q"] = verdict.structure.q();
    st["cyclic_index"] = verdict.structure.cyclic_index;
    st["kappa_effective"] = verdict.kappa_effective;
    st["minimal_polynomial"] = verdict.structure.minimal_polynomial.to_string();
    st["characteristic_polynomial"] = verdict.structure.characteristic_polynomial.to_string();
    st["is_singular"] = verdict.structure.is_singular;
    st["support_dimension"] = verdict.m;
    j["structure"] = std::move(st);

    if (diagnostics) j["diagnostics"] = *diagnostics;

    json prov;
    prov["tool"] = "ouac";
    prov["version"] = kToolVersion;
    prov["seed"] = seed;
    const auto now = std::chrono::system_clock::now();
    prov["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    j["provenance"] = std::move(prov);
    return j;
}

SimConfig make_sim_config(const ProblemSpec& spec) {
    SimConfig cfg;
    cfg.a = spec.a;
    cfg.spec = spec.measure;
    if (!spec.x0.empty()) cfg.x0 = to_float(spec.x0);
    cfg.horizon = spec.sim.horizon;
    cfg.eps = spec.sim.eps;
    cfg.sample_count = spec.sim.samples;
    cfg.seed = spec.sim.seed.value_or(0);
    cfg.workers = spec.sim.workers;
    return cfg;
}

void write_batch_csv(const std::string& path, const SampleBatch& batch) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    const auto n = batch.points.cols();
    for (Eigen::Index c = 0; c < n; ++c) out << "x" << (c + 1) << ",";
    out << "jumps\n";
    // worker count deliberately left out: equal seeds must give equal files
    out << "# seed=" << batch.seed << ", eps=" << shortest_double(batch.eps)
        << ", horizon=" << shortest_double(batch.horizon) << "\n";
    for (const auto& bias : batch.truncation_bias)
        out << "# truncation_bias[" << bias.component << "]=" << shortest_double(bias.bound)
            << "\n";
    for (Eigen::Index i = 0; i < batch.points.rows(); ++i) {
        for (Eigen::Index c = 0; c < n; ++c) out << shortest_double(batch.points(i, c)) << ",";
        out << batch.jump_counts[static_cast<size_t>(i)] << "\n";
    }
    if (!out) throw IoError("failed while writing: " + path);
}

CsvBatch read_batch_csv(const std::string& path, size_t expected_dim) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open samples file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("samples file is empty: " + path);
    size_t cols = static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (cols != expected_dim + 1)
        throw ValidationError("samples file has " + std::to_string(cols - 1) +
                              " coordinate columns but the problem has dimension " +
                              std::to_string(expected_dim));
    std::vector<std::vector<double>> rows;
    std::vector<uint32_t> jumps;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ValidationError("samples file has a non-numeric cell: '" + cell + "'");
            }
        }
        if (row.size() != expected_dim + 1)
            throw ValidationError("samples file row has wrong arity: " + line);
        jumps.push_back(static_cast<uint32_t>(row.back()));
        row.pop_back();
        rows.push_back(std::move(row));
    }
    CsvBatch batch;
    batch.points.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(expected_dim));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < expected_dim; ++c)
            batch.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
    batch.jump_counts = std::move(jumps);
    return batch;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << text;
    if (!out) throw IoError("failed while writing: " + path);
}

} // namespace ouac
