// End-to-end checks of the installed command surface: exit codes, file
// determinism, and report contents, driven through the real binary.

#include "doctest.h"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef OUAC_BIN
#error "OUAC_BIN must point at the ouac executable"
#endif
#ifndef OUAC_FIXTURES
#error "OUAC_FIXTURES must point at the fixture directory"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "/tmp/ouac_cli_out.txt";
    std::string cmd = std::string(OUAC_BIN) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(OUAC_FIXTURES) + "/" + name;
}

} // namespace

TEST_CASE("analyze: verdicts land with exit code zero regardless of outcome") {
    auto trapped = run("analyze " + fixture("single_ray_scalar.json"));
    REQUIRE(trapped.exit_code == 0);
    auto j = nlohmann::json::parse(trapped.out);
    CHECK(j["verdict"]["exhausts"] == false);
    CHECK(j["verdict"]["abs_continuous"] == "no");
    CHECK(j["schema"] == 1);

    auto kol = run("analyze " + fixture("kolmogorov.json"));
    REQUIRE(kol.exit_code == 0);
    auto jk = nlohmann::json::parse(kol.out);
    CHECK(jk["verdict"]["abs_continuous"] == "theorem-inapplicable-singular-A");
    CHECK(jk["verdict"]["controllable"] == true);
    CHECK(jk["verdict"]["exhausts"] == true);

    auto gauss = run("analyze " + fixture("gaussian_completes.json"));
    REQUIRE(gauss.exit_code == 0);
    CHECK(nlohmann::json::parse(gauss.out)["verdict"]["abs_continuous"] == "yes");
}

TEST_CASE("analyze: malformed input names the field and exits 2") {
    auto bad = run("analyze " + fixture("bad_alpha.json"));
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("measure[0].alpha") != std::string::npos);

    auto missing = run("analyze /tmp/no_such_file_ouac.json");
    CHECK(missing.exit_code == 4);
}

TEST_CASE("simulate: determinism across reruns, seeds, and worker counts") {
    auto a = run("simulate " + fixture("two_rays_diag.json") +
                 " --n 10 --seed 7 --out /tmp/ouac_a.csv");
    REQUIRE(a.exit_code == 0);
    auto b = run("simulate " + fixture("two_rays_diag.json") +
                 " --n 10 --seed 7 --out /tmp/ouac_b.csv");
    REQUIRE(b.exit_code == 0);
    CHECK(slurp("/tmp/ouac_a.csv") == slurp("/tmp/ouac_b.csv"));

    auto w8 = run("simulate " + fixture("two_rays_diag.json") +
                  " --n 10 --seed 7 --workers 8 --out /tmp/ouac_w.csv");
    REQUIRE(w8.exit_code == 0);
    CHECK(slurp("/tmp/ouac_a.csv") == slurp("/tmp/ouac_w.csv"));

    auto other = run("simulate " + fixture("two_rays_diag.json") +
                     " --n 10 --seed 8 --out /tmp/ouac_c.csv");
    REQUIRE(other.exit_code == 0);
    CHECK(slurp("/tmp/ouac_a.csv") != slurp("/tmp/ouac_c.csv"));
}

TEST_CASE("simulate: OUAC_SEED is the fallback seed") {
    unsetenv("OUAC_SEED");
    auto env_run = run("simulate " + fixture("kolmogorov.json") +
                       " --n 5 --out /tmp/ouac_env.csv"); // no seed in file or flags
    REQUIRE(env_run.exit_code == 0);
    setenv("OUAC_SEED", "12345", 1);
    auto env_set = run("simulate " + fixture("kolmogorov.json") +
                       " --n 5 --out /tmp/ouac_env2.csv");
    unsetenv("OUAC_SEED");
    REQUIRE(env_set.exit_code == 0);
    auto explicit_seed = run("simulate " + fixture("kolmogorov.json") +
                             " --n 5 --seed 12345 --out /tmp/ouac_env3.csv");
    REQUIRE(explicit_seed.exit_code == 0);
    CHECK(slurp("/tmp/ouac_env2.csv") == slurp("/tmp/ouac_env3.csv"));
    CHECK(slurp("/tmp/ouac_env.csv") != slurp("/tmp/ouac_env2.csv"));
}

TEST_CASE("simulate: empty measure produces identical deterministic rows") {
    const std::string spec = "/tmp/ouac_empty_spec.json";
    std::ofstream(spec) << R"({"n": 2, "A": [[1, 0], [0, 1]], "measure": [], "x0": [1, 1]})";
    auto r = run("simulate " + spec + " --n 10 --seed 0 --out /tmp/ouac_empty.csv");
    REQUIRE(r.exit_code == 0);
    std::ifstream in("/tmp/ouac_empty.csv");
    std::string header, line, first_row;
    std::getline(in, header);
    size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first_row.empty()) first_row = line;
        CHECK(line == first_row);
        ++rows;
    }
    CHECK(rows == 10);
    CHECK(first_row.substr(first_row.size() - 2) == ",0"); // no jumps
}

TEST_CASE("diagnose: consistency report and dimension guard") {
    auto sim = run("simulate " + fixture("two_rays_diag.json") +
                   " --n 2000 --seed 11 --out /tmp/ouac_diag.csv");
    REQUIRE(sim.exit_code == 0);
    auto diag = run("diagnose " + fixture("two_rays_diag.json") + " /tmp/ouac_diag.csv");
    REQUIRE(diag.exit_code == 0);
    auto j = nlohmann::json::parse(diag.out);
    CHECK(j["diagnostics"]["verdict_consistency"] == "consistent");
    CHECK(j["diagnostics"]["duplicate_rate"] == 0.0);

    // obstruction concentration for the trapped single ray
    auto sim2 = run("simulate " + fixture("single_ray_scalar.json") +
                    " --n 1000 --seed 3 --out /tmp/ouac_diag2.csv");
    REQUIRE(sim2.exit_code == 0);
    auto diag2 = run("diagnose " + fixture("single_ray_scalar.json") + " /tmp/ouac_diag2.csv");
    REQUIRE(diag2.exit_code == 0);
    auto j2 = nlohmann::json::parse(diag2.out);
    CHECK(j2["diagnostics"]["hyperplane_test"]["concentration"] == 1.0);
    CHECK(j2["diagnostics"]["verdict_consistency"] == "consistent");

    // wrong-dimension samples are rejected with the validation exit code
    auto mismatch = run("diagnose " + fixture("kolmogorov.json") + " /tmp/ouac_diag.csv");
    CHECK(mismatch.exit_code == 0); // same dimension: fine
    const std::string spec1d = "/tmp/ouac_1d_spec.json";
    std::ofstream(spec1d) << R"({"n": 1, "A": [[2]], "measure": []})";
    auto bad = run("diagnose " + spec1d + " /tmp/ouac_diag.csv");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("catalog: both dimensions print verified rows, others are rejected") {
    auto two = run("catalog --dim 2");
    REQUIRE(two.exit_code == 0);
    for (const char* label : {"\na ", "\nb ", "\nc ", "\nd "})
        CHECK(two.out.find(label) != std::string::npos);
    CHECK(two.out.find("re-verified") != std::string::npos);

    auto three = run("catalog --dim 3");
    REQUIRE(three.exit_code == 0);
    for (const char* label : {"\nf ", "\ng ", "\nh ", "\ni "})
        CHECK(three.out.find(label) != std::string::npos);

    CHECK(run("catalog --dim 4").exit_code == 2);
}

TEST_CASE("verify: suites run and bad names are usage errors") {
    auto order = run("verify " + fixture("two_rays_diag.json") +
                     " --suite orderstats --trials 100000 --seed 1");
    CHECK(order.exit_code == 0);

    auto van = run("verify " + fixture("two_rays_diag.json") +
                   " --suite van1 --trials 2000 --seed 1");
    CHECK(van.exit_code == 0);
    CHECK(van.out.find("failures 0") != std::string::npos);

    auto garland = run("verify " + fixture("parabola_identity.json") +
                       " --suite garland --mass 5 --seed 1");
    CHECK(garland.exit_code == 0);
    CHECK(garland.out.find("mass >=") != std::string::npos);

    CHECK(run("verify " + fixture("two_rays_diag.json") + " --suite bogus").exit_code == 2);
}
