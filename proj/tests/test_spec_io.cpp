#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <random>

#include "ouac/spec_io.hpp"

using namespace ouac;
using nlohmann::json;

namespace {

json minimal_problem() {
    return json::parse(R"({
      "n": 2,
      "A": [["1/3", 0], [0, "2"]],
      "measure": [
        {"kind": "ray", "direction": [1, 0], "alpha": "1/2", "scale": 1},
        {"kind": "atoms", "atoms": [{"point": ["3/2", 1], "mass": "2/5"}]},
        {"kind": "subspace", "basis": [[1, 0], [0, 1]], "alpha": 0.25, "scale": "2"},
        {"kind": "curve", "coefficients": [[0, 1], [1, 0]], "beta": 1.5}
      ],
      "x0": ["1/2", 0],
      "simulation": {"eps": 0.001, "samples": 50, "seed": 9}
    })");
}

} // namespace

TEST_CASE("problem parsing keeps rationals exact") {
    ProblemSpec spec = parse_problem_json(minimal_problem());
    CHECK(spec.n == 2);
    CHECK(spec.a.at(0, 0) == Rational(1, 3));
    CHECK(spec.a.at(1, 1) == Rational(2));
    REQUIRE(spec.measure.components.size() == 4);
    const auto& atom = std::get<AtomSetGeometry>(spec.measure.components[1].geometry);
    CHECK(atom.atoms[0].mass == Rational(2, 5));
    CHECK(atom.atoms[0].point[0] == Rational(3, 2));
    const auto& sub = std::get<SubspaceGeometry>(spec.measure.components[2].geometry);
    CHECK(sub.alpha == Rational(1, 4));
    const auto& curve = std::get<CurveGeometry>(spec.measure.components[3].geometry);
    CHECK(curve.beta == Rational(3, 2));
    CHECK(spec.x0[0] == Rational(1, 2));
    CHECK(spec.sim.samples == 50);
    CHECK(spec.sim.seed == uint64_t{9});
    CHECK(spec.sim.eps == doctest::Approx(1e-3));
}

TEST_CASE("round-trip: parse, serialize, parse is the identity on rational data") {
    ProblemSpec first = parse_problem_json(minimal_problem());
    ProblemSpec second = parse_problem_json(problem_to_json(first));
    CHECK(first.a == second.a);
    REQUIRE(second.measure.components.size() == first.measure.components.size());
    for (size_t i = 0; i < first.measure.components.size(); ++i)
        CHECK(first.measure.components[i].generators() ==
              second.measure.components[i].generators());
    CHECK(first.x0 == second.x0);
    // and once more: serialization is stable
    CHECK(problem_to_json(first) == problem_to_json(second));
}

TEST_CASE("problem validation failures name their field") {
    auto expect_error = [](json j, const std::string& needle) {
        try {
            parse_problem_json(j);
            FAIL("expected a validation error mentioning ", needle);
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    json bad = minimal_problem();
    bad["measure"][0]["alpha"] = "3/2";
    expect_error(bad, "measure[0].alpha");

    bad = minimal_problem();
    bad["A"] = json::parse("[[1, 0, 0], [0, 1, 0]]");
    expect_error(bad, "A");

    bad = minimal_problem();
    bad["A"][0][0] = "1.2.3";
    expect_error(bad, "A[0][0]");

    bad = minimal_problem();
    bad["x0"] = json::parse("[1]");
    expect_error(bad, "x0");

    bad = minimal_problem();
    bad["measure"][0].erase("direction");
    expect_error(bad, "direction");

    bad = minimal_problem();
    bad["measure"][0]["kind"] = "blob";
    expect_error(bad, "kind");

    // support outside the image of an explicit noise matrix
    bad = minimal_problem();
    bad["B"] = json::parse("[[1], [0]]");
    expect_error(bad, "B");

    // wrong JSON types surface as validation errors, not crashes
    bad = minimal_problem();
    bad["simulation"]["samples"] = "plenty";
    expect_error(bad, "problem file");

    bad = minimal_problem();
    bad["n"] = -2;
    expect_error(bad, "n");
}

TEST_CASE("samples files with garbage cells are rejected cleanly") {
    const std::string path = "/tmp/ouac_bad_cells.csv";
    std::ofstream(path) << "x1,x2,jumps\n1.0,banana,0\n";
    CHECK_THROWS_AS(read_batch_csv(path, 2), ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("explicit noise matrix accepted when it covers the support") {
    json j = minimal_problem();
    j["B"] = json::parse("[[1, 0], [0, 1]]");
    ProblemSpec spec = parse_problem_json(j);
    REQUIRE(spec.b.has_value());
    CHECK(spec.b->cols() == 2);
}

TEST_CASE("gaussian subspace parsing") {
    json j = minimal_problem();
    j["gaussian_subspace"] = json::parse("[[1, 1], [2, 2]]");
    ProblemSpec spec = parse_problem_json(j);
    REQUIRE(spec.gaussian_image.has_value());
    CHECK(spec.gaussian_image->dim() == 1);
}

TEST_CASE("sample CSV round trip preserves doubles bit-exactly") {
    SampleBatch batch;
    batch.points.resize(3, 2);
    batch.points << 0.1, -2.5e-17, 3.141592653589793, 1e300, -0.0, 7.0;
    batch.jump_counts = {1, 2, 3};
    batch.seed = 9;
    batch.eps = 1e-3;
    batch.horizon = 1.0;
    batch.truncation_bias.push_back({0, 0.125});
    const std::string path = "/tmp/ouac_io_test.csv";
    write_batch_csv(path, batch);
    CsvBatch read = read_batch_csv(path, 2);
    REQUIRE(read.points.rows() == 3);
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 2; ++c) CHECK(read.points(i, c) == batch.points(i, c));
    CHECK(read.jump_counts == batch.jump_counts);
    CHECK_THROWS_AS(read_batch_csv(path, 3), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_batch_csv(path, 2), IoError);
}

TEST_CASE("mutated problem files fail cleanly, never crash") {
    const std::string base = minimal_problem().dump();
    const std::string path = "/tmp/ouac_fuzz.json";
    std::mt19937_64 rng(24680);
    size_t parsed_ok = 0, rejected = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::string text = base;
        switch (trial % 4) {
            case 0: // flip a byte
                text[rng() % text.size()] = static_cast<char>('!' + rng() % 90);
                break;
            case 1: // truncate
                text = text.substr(0, rng() % text.size());
                break;
            case 2: // duplicate a chunk
                text += text.substr(rng() % text.size());
                break;
            default: { // delete a chunk
                size_t at = rng() % text.size();
                size_t len = 1 + rng() % 7;
                text.erase(at, len);
                break;
            }
        }
        std::ofstream(path) << text;
        try {
            (void)load_problem_file(path);
            ++parsed_ok; // mutation happened to stay valid
        } catch (const ValidationError&) {
            ++rejected;
        } catch (const IoError&) {
            ++rejected;
        }
        // anything else escapes and fails the test
    }
    CHECK(parsed_ok + rejected == 300);
    CHECK(rejected > 200); // most mutations must actually be rejected
    std::remove(path.c_str());
}

TEST_CASE("report envelope carries schema, verdict, structure, and provenance") {
    ProblemSpec spec = parse_problem_json(minimal_problem());
    ExhaustionVerdict verdict = decide_exhaustion(spec.a, spec.measure);
    json report = make_report(spec, verdict, nullptr, 9);
    CHECK(report["schema"] == 1);
    CHECK(report["verdict"].contains("abs_continuous"));
    CHECK(report["verdict"].contains("tau_zero"));
    CHECK(report["structure"].contains("minimal_polynomial"));
    CHECK(report["structure"]["n"] == 2);
    CHECK(report["provenance"]["seed"] == 9);
    CHECK(report["provenance"]["tool"] == "ouac");
}
