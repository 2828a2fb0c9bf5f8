#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qdeform/run.hpp"

namespace {

struct CommonFlags {
    CLI::App* cmd = nullptr;
    std::string preset, dsl, nu, sign, alphas, f, mask, out, format, xp_source, config_path;
    int dim = 0, lambda = 0;
    double mu_omega = 0.0, tol = 0.0;
    bool measure_only = false;
    std::vector<std::string> params;

    void attach(CLI::App* app) {
        cmd = app;
        app->add_option("--preset", preset, "built-in relation set (see `qdeform presets`)");
        app->add_option("--dsl", dsl, "path to a .qdl presentation file");
        app->add_option("--dim", dim, "Fock truncation dimension per mode");
        app->add_option("--lambda", lambda, "grading period of the C_lambda extension");
        app->add_option("--nu", nu, "statistical parameter (sweep: START:STOP:STEP)");
        app->add_option("--sign", sign, "rotation branch of chi = e^{±i nu pi}: + or -");
        app->add_option("--mu-omega", mu_omega, "mass-frequency product (> 0)");
        app->add_option("--alphas", alphas, "comma-separated alpha_mu list (length lambda)");
        app->add_option("--f", f, "scalar f(nu) choice: default | cos2");
        app->add_option("--tol", tol, "pass tolerance (relative Frobenius)");
        app->add_option("--mask", mask, "truncation mask policy: auto | <levels>");
        app->add_option("--out", out, "output path (default: stdout)");
        app->add_option("--format", format, "report format: json | csv | text");
        app->add_flag("--measure-only", measure_only,
                      "record residuals without failing the run on any relation");
        app->add_option("--xp-source", xp_source, "x/p construction: eq32 | inversion");
        app->add_option("--param", params, "override a parameter, NAME=VALUE (repeatable)");
        app->add_option("--config", config_path, "flat key=value configuration file");
    }

    qdeform::RunConfig resolve() const {
        qdeform::RunConfig cfg;
        qdeform::apply_environment(cfg);
        if (!config_path.empty())
            for (const auto& [key, value] : qdeform::parse_config_file(config_path))
                qdeform::apply_setting(cfg, key, value);
        auto flag = [&](const char* name, const char* key, const std::string& value) {
            if (cmd->count(name)) qdeform::apply_setting(cfg, key, value);
        };
        flag("--preset", "preset", preset);
        flag("--dsl", "dsl", dsl);
        flag("--dim", "dim", std::to_string(dim));
        flag("--lambda", "lambda", std::to_string(lambda));
        flag("--nu", "nu", nu);
        flag("--sign", "sign", sign);
        if (cmd->count("--mu-omega")) cfg.mu_omega = mu_omega;
        flag("--alphas", "alphas", alphas);
        flag("--f", "f", f);
        if (cmd->count("--tol")) cfg.tolerance = tol;
        flag("--mask", "mask", mask);
        flag("--out", "out", out);
        flag("--format", "format", format);
        if (measure_only) cfg.measure_only = true;
        flag("--xp-source", "xp-source", xp_source);
        for (const auto& p : params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw qdeform::ConfigError("--param expects NAME=VALUE, got '" + p + "'");
            qdeform::apply_setting(cfg, "param." + p.substr(0, eq), p.substr(eq + 1));
        }
        return cfg;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdeform: truncated Fock-space checks for deformed oscillator algebras"};
    app.require_subcommand(1);

    CommonFlags check_flags, sweep_flags;
    CLI::App* check = app.add_subcommand("check", "evaluate one relation set at a single nu");
    check_flags.attach(check);
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate a relation set over a nu grid");
    sweep_flags.attach(sweep);

    CLI::App* presets = app.add_subcommand("presets", "list built-in relation sets");
    std::string dump_dir;
    int dump_lambda = 4;
    presets->add_option("--dump", dump_dir, "write each preset's .qdl source into this directory");
    presets->add_option("--lambda", dump_lambda, "lambda used for the generated presets");

    CLI::App* validate = app.add_subcommand("validate", "parse a .qdl file and report diagnostics");
    std::string validate_path;
    validate->add_option("file", validate_path, "path to the .qdl file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return qdeform::run_check(check_flags.resolve(), std::cout, std::cerr);
        if (sweep->parsed()) return qdeform::run_sweep(sweep_flags.resolve(), std::cout, std::cerr);
        if (presets->parsed()) return qdeform::run_presets(dump_dir, dump_lambda, std::cout, std::cerr);
        if (validate->parsed()) return qdeform::run_validate(validate_path, std::cout, std::cerr);
    } catch (const qdeform::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
