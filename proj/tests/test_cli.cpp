#include "doctest.h"

#include "config.hpp"
#include "report.hpp"
#include "suites.hpp"

#include "taugeo/error.hpp"
#include "taugeo/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace taugeo;
using namespace taugeo::cli;

namespace {

std::string thrown_message(const std::string& yaml) {
    try {
        parse_config(yaml, "cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

const CheckRecord* find(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing and defaults") {
    auto cfg = parse_config("preset: qplane\n");
    CHECK(cfg.seed == 42);
    CHECK(cfg.samples == 200);
    CHECK(cfg.scalar == "exact");
    CHECK(cfg.n == 4);

    auto m = parse_config(
        "preset: matrix\nscalar: float\ntolerance: 1e-8\nmatrix:\n  u:\n    - [[\"1\", \"0\"], [\"0\", \"i\"]]\n"
        "  v0: [\"0.6\", \"0.8\"]\n");
    CHECK(m.matrix.u.size() == 1);
    CHECK(m.matrix.u[0][1][1] == "i");
    CHECK(m.tolerance == doctest::Approx(1e-8));

    auto s = parse_config("preset: sphere\nsphere:\n  x_table:\n    plus: [a, b, c, d]\n    minus: [\"0\", \"0\", \"0\", \"0\"]\n"
                          "    z: [\"1\", \"1\", \"1\", \"1\"]\n");
    REQUIRE(s.sphere.x_table.has_value());
    CHECK((*s.sphere.x_table)[0][3] == "d");
}

TEST_CASE("config errors carry positions") {
    CHECK(thrown_message("preset: qplane\nqplane:\n  n: 2\n  k: 3\n") == "cfg:4:3: unknown key 'k' in qplane");
    CHECK(thrown_message("preset: qplane\nsede: 4\n").find("cfg:2:1: unknown key 'sede'") == 0);
    CHECK(thrown_message("") == "cfg: empty config");
    CHECK(thrown_message("seed: 3\n").find("missing key 'preset'") != std::string::npos);
    CHECK(thrown_message("preset: qplane\nseed: 0\n").find("cfg:2:7: seed must be positive") == 0);
    CHECK(thrown_message("preset: qplane\nsamples: -1\n").find("samples must be positive") != std::string::npos);
    CHECK(thrown_message("preset: qplane\nseed: abc\n").find("cfg:2:7: invalid value for seed") == 0);
    CHECK(thrown_message("preset: torus\n").find("preset must be one of") != std::string::npos);
    CHECK(thrown_message("preset: qplane\nscalar: float\n").find("only available for the matrix preset") !=
          std::string::npos);
    CHECK(thrown_message("preset: sphere\nsphere:\n  x_table:\n    plus: [a]\n").find("needs 'minus'") !=
          std::string::npos);
    CHECK(thrown_message("preset: matrix\nmatrix:\n  u: [[[\"1\", \"0\"], [\"0\"]]]\n").find("rows of different") !=
          std::string::npos);
    CHECK(thrown_message("preset: qplane\ninject: [nonsense]\n").find("unknown injection") != std::string::npos);
    CHECK(thrown_message("preset: [qplane\n").find("cfg:") == 0);
}

TEST_CASE("config directory lookup") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "taugeo_cfg_lookup";
    fs::create_directories(dir);
    std::ofstream(dir / "lookup_only.yaml") << "preset: shiftline\nseed: 9\n";
    setenv("TAUGEO_CONFIG_DIR", dir.c_str(), 1);
    auto cfg = load_config("lookup_only.yaml");
    CHECK(cfg.seed == 9);
    unsetenv("TAUGEO_CONFIG_DIR");
    CHECK_THROWS_AS(load_config("lookup_only.yaml"), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("report round trip and tallies") {
    Report r;
    r.config = parse_config("preset: shiftline\n").echo();
    r.checks = {{"b.two", "X = Y", "fail", "x vs y", 3, 1.5},
                {"a.one", "f = g", "pass", "", 10, 0.25},
                {"c.three", "h", "skipped", "no input", 0, 0.0}};
    r.finalize();
    CHECK(r.checks[0].name == "a.one");
    CHECK(r.summary.pass == 1);
    CHECK(r.summary.fail == 1);
    CHECK(r.summary.skipped == 1);
    CHECK(r.any_failed());

    auto j = to_json(r);
    auto back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
    CHECK(back == r);
    CHECK(back.checks[1].elapsed_ms == doctest::Approx(1.5));
    CHECK(j.begin().key() == "version");

    auto text = render_text(r);
    CHECK(text.find("[fail] b.two") != std::string::npos);
    CHECK(text.find("witness: x vs y") != std::string::npos);
    CHECK(text.find("summary: 1 pass, 1 fail, 1 skipped") != std::string::npos);

    auto dup = r;
    dup.checks.push_back(dup.checks[0]);
    CHECK_THROWS_AS(dup.finalize(), Error);
    auto bad = j;
    bad["checks"][0]["status"] = "maybe";
    CHECK_THROWS_AS(report_from_json(bad), ConfigError);
    CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::object()), ConfigError);
}

TEST_CASE("verify is deterministic and tallies match") {
    auto cfg = parse_config("preset: shiftline\nseed: 5\nsamples: 30\n");
    auto r1 = run_verify(cfg);
    auto r2 = run_verify(cfg);
    CHECK(to_json(r1, false).dump() == to_json(r2, false).dump());
    CHECK_FALSE(r1.any_failed());
    std::size_t pass = 0;
    for (const auto& c : r1.checks) pass += c.status == "pass";
    CHECK(pass == r1.summary.pass);
    CHECK(r1.summary.pass == r1.checks.size());
    CHECK(find(r1, "shiftline.negative.wrong_types") != nullptr);
}

TEST_CASE("suite selection and gamma injection on the q-plane") {
    auto cfg = parse_config("preset: qplane\nsamples: 10\nqplane: {n: 2, m: 2}\nsuites: [curvature, leibniz]\n");
    auto clean = run_verify(cfg);
    CHECK_FALSE(clean.any_failed());
    CHECK(clean.checks.size() == 4);
    CHECK(find(clean, "qplane.lie_structure") == nullptr);

    cfg.inject = {"gamma"};
    auto broken = run_verify(cfg);
    CHECK(broken.any_failed());
    const auto* worked = find(broken, "qplane.curvature.worked");
    REQUIRE(worked != nullptr);
    CHECK(worked->status == "fail");
    // The witness names elements in canonical syntax, which parses back.
    auto open = worked->witness.find("expected (");
    REQUIRE(open != std::string::npos);
    auto start = open + std::string("expected (").size();
    auto text = worked->witness.substr(start, worked->witness.find(')', start) - start);
    auto qp = build_qplane();
    CHECK(render(parse_element(qp.pres, text)) == text);
    // Leibniz rules do not depend on Γ.
    CHECK(find(broken, "qplane.leibniz.X1")->status == "pass");
}

TEST_CASE("matrix negative controls and injection") {
    auto cfg = parse_config("preset: matrix\nsamples: 10\nsuites: [negative, unique_connection]\n");
    auto clean = run_verify(cfg);
    CHECK_FALSE(clean.any_failed());
    const auto* injected = find(clean, "matrix.negative.injected_gamma");
    REQUIRE(injected != nullptr);
    CHECK(injected->witness.find("detected: ") == 0);
    cfg.inject = {"gamma"};
    auto broken = run_verify(cfg);
    CHECK(find(broken, "matrix.unique_connection.gamma_zero")->status == "fail");
    CHECK(find(broken, "matrix.unique_connection")->status == "pass");
}

TEST_CASE("sphere checks are gated on an X table") {
    auto none = run_verify(parse_config("preset: sphere\n"));
    CHECK(none.summary.skipped == none.checks.size());
    CHECK_FALSE(none.any_failed());
    CHECK(find(none, "sphere.x_table")->witness.find("no X table") != std::string::npos);

    auto cfg = parse_config("preset: sphere\nsamples: 10\nsphere: {solve: true}\n");
    auto solved = run_verify(cfg);
    CHECK(solved.summary.pass == solved.checks.size());
    cfg.inject = {"table"};
    auto broken = run_verify(cfg);
    CHECK(find(broken, "sphere.x_table")->status == "fail");
    CHECK(find(broken, "sphere.x_table")->witness.find("X-X+ - q^2 X+X- = Xz") != std::string::npos);

    CHECK_THROWS_AS(run_verify(parse_config("preset: sphere\nsphere:\n  x_table:\n    plus: [\"a+\", \"0\", \"0\", \"0\"]\n"
                                            "    minus: [\"0\", \"0\", \"0\", \"0\"]\n    z: [\"0\", \"0\", \"0\", \"0\"]\n")),
                    ConfigError);
}

TEST_CASE("demos") {
    RunConfig cfg;
    cfg.preset = "qplane";
    cfg.n = 1;
    cfg.m = 1;
    auto q = run_demo(cfg);
    CHECK_FALSE(q.any_failed());
    bool found = false;
    for (const auto& line : q.notes) found |= line == "Curv(X1,X2)(xy e1) = -q^3 x^2 y^2 e1 - q^2 [1]_q x y e2";
    CHECK(found);

    cfg.preset = "matrix";
    cfg.n = 2;
    cfg.samples = 20;
    auto m = run_demo(cfg);
    CHECK_FALSE(m.any_failed());
    CHECK(find(m, "demo.matrix.rank_one_flat")->status == "pass");

    cfg.preset = "sphere";
    auto s = run_demo(cfg);
    CHECK_FALSE(s.any_failed());
    bool dc = false;
    for (const auto& line : s.notes) dc |= line.rfind("d(c) = (as) ω+", 0) == 0;
    CHECK(dc);
}

}  // TEST_SUITE
