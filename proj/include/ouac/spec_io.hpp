#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "ouac/diagnostics.hpp"
#include "ouac/exhaustion.hpp"
#include "ouac/measure.hpp"
#include "ouac/simulator.hpp"

namespace ouac {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct SimDefaults {
    double eps = 1e-3;
    size_t samples = 10000;
    std::optional<uint64_t> seed;
    double horizon = 1.0;
    unsigned workers = 1;
};

struct ProblemSpec {
    size_t n = 0;
    RationalMatrix a;
    std::optional<RationalMatrix> b; // optional noise coefficient matrix
    std::optional<Subspace> gaussian_image;
    MeasureSpec measure;
    RationalVector x0; // empty means the origin
    SimDefaults sim;
};

// Exact parsing: rational strings ("p/q", decimals) parse exactly; JSON
// numbers are read through their shortest decimal form, so 0.1 means 1/10.
Rational rational_from_json(const nlohmann::json& v, const std::string& where);

ProblemSpec parse_problem_json(const nlohmann::json& j);
ProblemSpec load_problem_file(const std::string& path);

nlohmann::json problem_to_json(const ProblemSpec& spec);

nlohmann::json verdict_to_json(const ExhaustionVerdict& v);
nlohmann::json diagnostics_to_json(const DiagnosticsReport& d, const ConsistencyResult& c);

// Full report envelope: schema version, verdict and structure blocks, an
// optional diagnostics block, and provenance.
nlohmann::json make_report(const ProblemSpec& spec, const ExhaustionVerdict& verdict,
                           const nlohmann::json* diagnostics, uint64_t seed);

SimConfig make_sim_config(const ProblemSpec& spec);

void write_batch_csv(const std::string& path, const SampleBatch& batch);

struct CsvBatch {
    Eigen::MatrixXd points;
    std::vector<uint32_t> jump_counts;
};
CsvBatch read_batch_csv(const std::string& path, size_t expected_dim);

void write_text_file(const std::string& path, const std::string& text);

} // namespace ouac
