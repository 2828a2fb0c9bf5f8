#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qdeform/presets.hpp"
#include "qdeform/run.hpp"

using namespace qdeform;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "qdeform_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("nu grid parsing") {
    CHECK(parse_nu_grid("0.3") == std::vector<double>{0.3});
    CHECK(parse_nu_grid("0:0:0.1") == std::vector<double>{0.0});
    auto grid = parse_nu_grid("0:1:0.05");
    REQUIRE(grid.size() == 21);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(parse_nu_grid("0:1:0.5").size() == 3);
    CHECK_THROWS_AS(parse_nu_grid("1:0:0.1"), ConfigError);
    CHECK_THROWS_AS(parse_nu_grid("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_nu_grid("abc"), ConfigError);
    CHECK_THROWS_AS(parse_nu_grid("0:1"), ConfigError);
}

TEST_CASE("alpha list and misc parsing") {
    CHECK(parse_alpha_list("0.5,-0.5") == std::vector<double>{0.5, -0.5});
    CHECK_THROWS_AS(parse_alpha_list("0.5,x"), ConfigError);
    CHECK(parse_format("json") == ReportFormat::json);
    CHECK_THROWS_AS(parse_format("yaml"), ConfigError);
    CHECK(parse_mask_policy("auto").kind == MaskPolicy::Kind::automatic);
    CHECK(parse_mask_policy("3").fixed_levels == 3);
    CHECK_THROWS_AS(parse_mask_policy("-1"), ConfigError);
    CHECK(parse_complex_value("1.5+0.5i") == Complex(1.5, 0.5));
    CHECK(std::abs(parse_complex_value("exp(i*pi)") - Complex(-1, 0)) < 1e-15);
}

TEST_CASE("config file parsing and precedence") {
    auto dir = temp_dir();
    auto cfg_path = dir / "run.cfg";
    {
        std::ofstream f(cfg_path);
        f << "# comment line\n";
        f << "preset = calogero_vasiliev\n";
        f << "dim = 32   # trailing comment\n";
        f << "tol = 1e-9\n";
    }
    RunConfig cfg;
    for (const auto& [k, v] : parse_config_file(cfg_path.string())) apply_setting(cfg, k, v);
    CHECK(cfg.preset == "calogero_vasiliev");
    CHECK(cfg.dim == 32);
    CHECK(cfg.tolerance == 1e-9);
    // a later (flag-level) setting wins
    apply_setting(cfg, "dim", "64");
    CHECK(cfg.dim == 64);
    CHECK_THROWS_AS(apply_setting(cfg, "bogus", "1"), ConfigError);

    setenv("QDEFORM_TOL", "1e-8", 1);
    RunConfig env_cfg;
    apply_environment(env_cfg);
    CHECK(env_cfg.tolerance == 1e-8);
    unsetenv("QDEFORM_TOL");
    setenv("QDEFORM_TOL", "bogus", 1);
    CHECK_THROWS_AS(apply_environment(env_cfg), ConfigError);
    unsetenv("QDEFORM_TOL");
}

TEST_CASE("calogero-vasiliev check passes end to end") {
    RunConfig cfg;
    cfg.preset = "calogero_vasiliev";
    cfg.dim = 64;
    cfg.lambda = 2;
    cfg.alphas = {0.5, -0.5};
    cfg.tolerance = 1e-10;
    ResidualReport report = check_report(cfg);
    CHECK(report.overall_pass);
    REQUIRE(report.relations.size() == 2);
    for (const auto& rec : report.relations) CHECK(rec.masked_norm < 1e-12);

    std::ostringstream out, diag;
    CHECK(run_check(cfg, out, diag) == 0);

    // JSON schema fields
    auto j = nlohmann::json::parse(out.str());
    CHECK(j["schema_version"] == 1);
    CHECK(j["presentation"] == "calogero_vasiliev");
    for (const char* key : {"nu", "sign", "mu_omega", "lambda", "chi_re", "chi_im", "theta_re",
                            "theta_im", "eta_re", "eta_im", "f_choice"})
        CHECK_MESSAGE(j["params"].contains(key), "missing params.", key);
    REQUIRE(j["relations"].size() == 2);
    for (const auto& rec : j["relations"])
        for (const char* key : {"label", "raw_norm", "masked_norm", "mask_levels", "tolerance", "pass"})
            CHECK_MESSAGE(rec.contains(key), "missing relations[].", key);
    CHECK(j.contains("warnings"));
    CHECK(j["overall_pass"] == true);
}

TEST_CASE("json numbers survive a round trip bit-exactly") {
    RunConfig cfg;
    cfg.preset = "case1";
    cfg.dim = 6;
    cfg.lambda = 3;
    cfg.nu_grid = {0.3};
    ResidualReport report = check_report(cfg);
    auto j = nlohmann::json::parse(emit_json(report));
    REQUIRE(j["relations"].size() == report.relations.size());
    for (std::size_t k = 0; k < report.relations.size(); ++k) {
        const double raw = j["relations"][k]["raw_norm"].get<double>();
        const double masked = j["relations"][k]["masked_norm"].get<double>();
        CHECK(raw == report.relations[k].raw_norm);
        CHECK(masked == report.relations[k].masked_norm);
    }
    CHECK(j["params"]["chi_re"].get<double>() == report.params.chi.real());
}

TEST_CASE("empty relation list is a vacuous pass") {
    ResidualReport report;
    report.presentation = "empty";
    auto j = nlohmann::json::parse(emit_json(report));
    CHECK(j["relations"].is_array());
    CHECK(j["relations"].empty());
    CHECK(j["overall_pass"] == true);
}

TEST_CASE("exit codes are total") {
    std::ostringstream out, diag;

    SUBCASE("bad preset name") {
        RunConfig cfg;
        cfg.preset = "nonesuch";
        CHECK(run_check(cfg, out, diag) == 2);
        CHECK(diag.str().find("unknown preset") != std::string::npos);
    }
    SUBCASE("both preset and dsl") {
        RunConfig cfg;
        cfg.preset = "bosonic";
        cfg.dsl_path = "x.qdl";
        CHECK(run_check(cfg, out, diag) == 2);
    }
    SUBCASE("syntax error in a dsl file carries line and column") {
        auto bad = temp_dir() / "bad.qdl";
        std::ofstream(bad) << "algebra broken;\ngen a\nrel r: a = a;\n";
        RunConfig cfg;
        cfg.dsl_path = bad.string();
        CHECK(run_check(cfg, out, diag) == 2);
        CHECK(diag.str().find("line 3") != std::string::npos);
    }
    SUBCASE("relation failure exits 1") {
        RunConfig cfg;
        cfg.preset = "calogero_vasiliev";
        cfg.dim = 16;
        cfg.lambda = 2;
        cfg.alphas = {0.5, -0.5};
        cfg.param_overrides["kappa"] = Complex(0.9, 0.0); // inconsistent with the ladder
        CHECK(run_check(cfg, out, diag) == 1);
    }
    SUBCASE("unwritable output path") {
        RunConfig cfg;
        cfg.preset = "calogero_vasiliev";
        cfg.dim = 8;
        cfg.lambda = 2;
        cfg.out_path = "/nonexistent_dir/report.json";
        CHECK(run_check(cfg, out, diag) == 2);
    }
    SUBCASE("momentum-undefined diagnostic for lambda 2 presets that need p") {
        RunConfig cfg;
        cfg.preset = "case1";
        cfg.dim = 8;
        cfg.lambda = 2;
        cfg.nu_grid = {0.25};
        cfg.xp_source = XPSource::eq32;
        CHECK(run_check(cfg, out, diag) == 2);
        CHECK(diag.str().find("momentum undefined") != std::string::npos);
    }
}

TEST_CASE("bosonic preset at nu = 0 passes (spec CLI example)") {
    RunConfig cfg;
    cfg.preset = "bosonic";
    cfg.dim = 16;
    cfg.nu_grid = {0.0};
    std::ostringstream out, diag;
    CHECK(run_check(cfg, out, diag) == 0);
}

TEST_CASE("warnings") {
    RunConfig cfg;
    cfg.preset = "calogero_vasiliev";
    cfg.dim = 8;
    cfg.lambda = 2;
    cfg.nu_grid = {0.3};
    ResidualReport report = check_report(cfg);
    bool f_warn = false;
    for (const auto& w : report.warnings) f_warn = f_warn || w == "f_hermiticity_violated";
    CHECK(f_warn);

    cfg.nu_grid = {0.0};
    report = check_report(cfg);
    for (const auto& w : report.warnings) CHECK(w != "f_hermiticity_violated");
}

TEST_CASE("sweep artifacts") {
    RunConfig cfg;
    cfg.preset = "case1";
    cfg.dim = 6;
    cfg.lambda = 3;
    cfg.nu_grid = parse_nu_grid("0:1:0.25");
    cfg.measure_only = true;
    auto sweep = sweep_reports(cfg);
    REQUIRE(sweep.size() == 5);
    const std::string csv = emit_csv(sweep);
    // row count = |grid| x |relations| (+ header)
    std::size_t rows = 0;
    for (char c : csv) rows += c == '\n';
    CHECK(rows == 1 + 5 * 24);
    CHECK(csv.rfind("nu,relation_label,raw_norm,masked_norm,pass\n", 0) == 0);

    std::ostringstream out, diag;
    cfg.format = ReportFormat::csv;
    CHECK(run_sweep(cfg, out, diag) == 0); // measure-only never fails the run
}

TEST_CASE("validate verb") {
    auto ok = temp_dir() / "ok.qdl";
    std::ofstream(ok) << preset_source("calogero_vasiliev");
    std::ostringstream out, diag;
    CHECK(run_validate(ok.string(), out, diag) == 0);
    CHECK(out.str().find("calogero_vasiliev") != std::string::npos);
    CHECK(run_validate("/nonexistent.qdl", out, diag) == 2);
}

TEST_CASE("presets verb lists and dumps sources") {
    std::ostringstream out, diag;
    auto dump = temp_dir() / "dump";
    fs::remove_all(dump);
    CHECK(run_presets(dump.string(), 4, out, diag) == 0);
    for (const auto& name : preset_names()) {
        CHECK(out.str().find(name) != std::string::npos);
        CHECK(slurp(dump / (name + ".qdl")) == preset_source(name, 4));
    }
}

TEST_CASE("shipped preset files match the embedded sources") {
    const fs::path presets_dir = fs::path(QDEFORM_SOURCE_DIR) / "presets";
    for (const auto& name : preset_names()) {
        const auto path = presets_dir / (name + ".qdl");
        REQUIRE_MESSAGE(fs::exists(path), "missing preset file ", path.string());
        CHECK_MESSAGE(slurp(path) == preset_source(name, 4), "out-of-sync preset file ", name);
    }
}

TEST_CASE("cli binary end to end") {
    const std::string cli = QDEFORM_CLI_PATH;
    if (!fs::exists(cli)) return; // binary not built in this configuration
    auto dir = temp_dir();
    auto report_path = dir / "cli_report.json";
    std::string cmd = cli + " check --preset calogero_vasiliev --dim 64 --lambda 2 --alphas 0.5,-0.5" +
                      " --tol 1e-10 --out " + report_path.string() + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    CHECK(WEXITSTATUS(rc) == 0);
    auto j = nlohmann::json::parse(slurp(report_path));
    CHECK(j["overall_pass"] == true);
    CHECK(j["relations"].size() == 2);

    std::string bad = cli + " check --preset nonesuch 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);

    std::string validate = cli + " validate /nonexistent.qdl 2>/dev/null";
    CHECK(WEXITSTATUS(std::system(validate.c_str())) == 2);

    std::string presets_cmd = cli + " presets >/dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(presets_cmd.c_str())) == 0);
}

TEST_CASE("golden report structure for every preset") {
    const fs::path golden_dir = fs::path(QDEFORM_SOURCE_DIR) / "tests" / "golden";
    struct Case {
        const char* preset;
        int dim;
        int lambda;
        const char* nu;
    };
    const Case cases[] = {
        {"bosonic", 6, 3, "0"},          {"fermionic_case1", 6, 3, "1"},
        {"fermionic_case2", 6, 3, "1"},  {"case1", 6, 3, "0.25"},
        {"case2", 6, 3, "0.25"},         {"gdoa", 8, 4, "0"},
        {"calogero_vasiliev", 8, 2, "0"}, {"deformed_clambda", 6, 3, "0.1"},
    };
    for (const auto& c : cases) {
        RunConfig cfg;
        cfg.preset = c.preset;
        cfg.dim = c.dim;
        cfg.lambda = c.lambda;
        cfg.nu_grid = parse_nu_grid(c.nu);
        cfg.measure_only = true;
        ResidualReport report = check_report(cfg);
        auto got = nlohmann::json::parse(emit_json(report));

        const auto path = golden_dir / (std::string(c.preset) + ".json");
        if (std::getenv("QDEFORM_REGEN_GOLDEN")) {
            std::ofstream(path) << got.dump(2) << "\n";
            continue;
        }
        REQUIRE_MESSAGE(fs::exists(path), "missing golden file ", path.string(),
                        " (set QDEFORM_REGEN_GOLDEN to create)");
        auto want = nlohmann::json::parse(slurp(path));
        // structural stability: same keys, same relation labels in order,
        // numeric values within a loose tolerance
        CHECK(got["schema_version"] == want["schema_version"]);
        CHECK(got["presentation"] == want["presentation"]);
        REQUIRE(got["relations"].size() == want["relations"].size());
        for (std::size_t k = 0; k < got["relations"].size(); ++k) {
            CHECK(got["relations"][k]["label"] == want["relations"][k]["label"]);
            CHECK(got["relations"][k]["pass"] == want["relations"][k]["pass"]);
            const double gv = got["relations"][k]["masked_norm"].get<double>();
            const double wv = want["relations"][k]["masked_norm"].get<double>();
            CHECK(std::abs(gv - wv) <= 1e-9 * std::max(1.0, std::abs(wv)));
        }
        CHECK(got["params"].get<std::map<std::string, nlohmann::json>>().size() ==
              want["params"].get<std::map<std::string, nlohmann::json>>().size());
    }
}
