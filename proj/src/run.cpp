#include "qdeform/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "qdeform/presets.hpp"

namespace qdeform {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_artifact(const std::string& payload, const std::string& out_path, std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file '" + out_path + "'");
    out << payload;
    if (!out) throw ConfigError("error while writing '" + out_path + "'");
}

ReportFormat effective_format(const RunConfig& config) {
    if (config.format_explicit || config.out_path.empty()) return config.format;
    const std::string& p = config.out_path;
    auto ends_with = [&](const char* suffix) {
        const std::size_t n = std::string(suffix).size();
        return p.size() >= n && p.compare(p.size() - n, n, suffix) == 0;
    };
    if (ends_with(".csv")) return ReportFormat::csv;
    if (ends_with(".txt")) return ReportFormat::text;
    return config.format;
}

StructureFunctionSpec resolve_spec(const RunConfig& config) {
    if (config.alphas.empty())
        return StructureFunctionSpec::from_alphas(std::vector<double>(config.lambda, 0.0));
    if (static_cast<int>(config.alphas.size()) != config.lambda)
        throw ConfigError("got " + std::to_string(config.alphas.size()) + " alphas for lambda = " +
                          std::to_string(config.lambda));
    return StructureFunctionSpec::from_alphas(config.alphas);
}

bool is_single_mode_name(const std::string& g) {
    return g == "a" || g == "N" || g == "K" || g == "fn" || (g.size() >= 2 && g[0] == 'P');
}

void fill_summary(ResidualReport& report, const RunConfig& config, const DeformationParams& params) {
    report.params.dim = config.dim;
    report.params.lambda = config.lambda;
    report.params.nu = params.nu;
    report.params.sign = params.sign;
    report.params.mu_omega = params.mu_omega;
    report.params.chi = params.chi;
    report.params.theta = params.theta;
    report.params.eta = params.eta;
    report.params.f_choice = f_choice_name(params.f_choice);
}

void fill_warnings(ResidualReport& report, const DeformationParams& params, const ModeRep& mode,
                   bool uses_xp) {
    if (params.f_choice == FChoice::default_half_one_plus_chi && params.nu != 0.0)
        report.warnings.push_back("f_hermiticity_violated");
    const Complex t2 = params.theta * params.theta * params.mu_omega * params.mu_omega;
    if (std::abs(t2 + Complex(1.0, 0.0)) > 1e-12)
        report.warnings.push_back("theta_inverse_condition_violated");
    if (uses_xp) {
        if (!mode.momentum_diagnostic.empty()) report.warnings.push_back(mode.momentum_diagnostic);
        std::ostringstream os;
        os.setf(std::ios::scientific);
        os.precision(3);
        os << "xp_inversion_mismatch x=" << mode.position_disagreement;
        if (mode.momentum && mode.momentum_from_ladder) os << " p=" << mode.momentum_disagreement;
        report.warnings.push_back(os.str());
    }
}

void apply_measure_only(ResidualReport& report) {
    for (auto& rec : report.relations) {
        rec.measured_only = true;
        rec.note = rec.note.empty() ? "measured — no representation claim"
                                    : rec.note + "; measured — no representation claim";
    }
    report.recompute_overall();
}

dsl::AlgebraPresentation resolve_presentation(const RunConfig& config, const DeformationParams& params) {
    if (!config.dsl_path.empty()) return dsl::parse_presentation(read_file(config.dsl_path));
    if (!is_preset(config.preset)) throw ConfigError("unknown preset '" + config.preset + "'");
    if (config.preset == "case1") return case1_relation_set(params);
    if (config.preset == "case2") return case2_relation_set(params);
    return preset_presentation(config.preset, config.lambda);
}

} // namespace

ResidualReport check_report(const RunConfig& config) {
    config.validate_target();
    if (config.nu_grid.size() != 1)
        throw ConfigError("check takes a single nu value; use the sweep verb for grids");
    const double nu = config.nu_grid.front();

    FockBasis basis = make_fock_space(config.dim, config.lambda);
    StructureFunctionSpec spec = resolve_spec(config);
    DeformationParams params = make_params(nu, config.sign, config.mu_omega, config.lambda,
                                           config.f_choice);
    dsl::AlgebraPresentation presentation = resolve_presentation(config, params);

    // computed parameter values for any declared parameter the presentation wants
    std::map<std::string, Complex> computed = {{"chi", params.chi},   {"theta", params.theta},
                                               {"eta", params.eta},   {"muw", params.mu_omega},
                                               {"nu", params.nu}};
    for (const auto& [name, value] : computed)
        if (presentation.has_parameter(name)) presentation.set_parameter(name, value);

    ModeRep mode = build_mode(basis, params, spec);

    // classify generators to pick the single-mode or two-mode binding map
    const auto referenced = dsl::referenced_generators(presentation);
    bool any_single = false, any_two = false;
    for (const auto& g : presentation.generators)
        (is_single_mode_name(g) ? any_single : any_two) = true;
    if (any_single && any_two)
        throw ConfigError("presentation mixes single-mode (a, N, K, fn, P*) and two-mode generator names");

    StandardBindings bindings;
    bool uses_xp = false;
    if (any_two) {
        TwoModeRep two = assemble_two_mode(mode, mode);
        bindings = two_mode_bindings(two, spec, config.xp_source);
        for (const auto& g : referenced)
            uses_xp = uses_xp || g == "x1" || g == "x2" || g == "p1" || g == "p2";
    } else {
        bindings = single_mode_bindings(mode, spec);
    }
    for (const auto& g : presentation.generators)
        if (!bindings.matrices.count(g)) {
            std::string msg = "generator '" + g + "' has no standard binding";
            if (g == "p1" || g == "p2")
                msg += " (" + (mode.momentum_diagnostic.empty()
                                   ? std::string("momentum undefined")
                                   : mode.momentum_diagnostic) + ")";
            throw ConfigError(msg);
        }
    for (const auto& [name, value] : config.param_overrides) bindings.params[name] = value;

    BoundAlgebra bound = bind_representation(presentation, bindings.matrices, bindings.params,
                                             bindings.shape, bindings.singular);
    ResidualReport report = check_relations(bound, config.tolerance, config.mask);
    report.presentation = presentation.name;
    fill_summary(report, config, params);
    fill_warnings(report, params, mode, uses_xp);
    if (config.measure_only) apply_measure_only(report);
    return report;
}

std::vector<std::pair<double, ResidualReport>> sweep_reports(const RunConfig& config) {
    config.validate_target();
    if (config.preset.empty())
        throw ConfigError("sweep requires --preset (a fixed relation family)");
    FockBasis basis = make_fock_space(config.dim, config.lambda);
    StructureFunctionSpec spec = resolve_spec(config);
    SweepSettings settings;
    settings.sign = config.sign;
    settings.mu_omega = config.mu_omega;
    settings.f_choice = config.f_choice;
    settings.tolerance = config.tolerance;
    settings.mask = config.mask;
    settings.measure_only = config.measure_only;
    settings.xp_source = config.xp_source;
    return nu_sweep(config.nu_grid, config.preset, basis, spec, settings);
}

int run_check(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    try {
        ResidualReport report = check_report(config);
        write_artifact(emit_report(report, effective_format(config)), config.out_path, out);
        return report.overall_pass ? 0 : 1;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    try {
        auto sweep = sweep_reports(config);
        const ReportFormat format = effective_format(config);
        std::string payload;
        if (format == ReportFormat::csv) {
            payload = emit_csv(sweep);
        } else if (format == ReportFormat::json) {
            nlohmann::json j;
            j["schema_version"] = 1;
            j["sweep"] = nlohmann::json::array();
            for (const auto& [nu, report] : sweep)
                j["sweep"].push_back(nlohmann::json::parse(emit_json(report)));
            payload = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            for (const auto& [nu, report] : sweep) os << emit_text(report) << "\n";
            payload = os.str();
        }
        write_artifact(payload, config.out_path, out);
        for (const auto& [nu, report] : sweep)
            if (!report.overall_pass) return 1;
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_validate(const std::string& path, std::ostream& out, std::ostream& diag) {
    try {
        dsl::AlgebraPresentation p = dsl::parse_presentation(read_file(path));
        out << "ok: algebra '" << p.name << "' with " << p.generators.size() << " generator(s), "
            << p.parameters.size() << " parameter(s), " << p.relations.size() << " relation(s)\n";
        return 0;
    } catch (const Error& e) {
        diag << "error: " << path << ": " << e.what() << "\n";
        return 2;
    }
}

int run_presets(const std::string& dump_dir, int lambda, std::ostream& out, std::ostream& diag) {
    try {
        for (const auto& name : preset_names()) {
            out << name << "\n    " << preset_description(name) << "\n";
            if (!dump_dir.empty()) {
                std::filesystem::create_directories(dump_dir);
                const auto path = std::filesystem::path(dump_dir) / (name + ".qdl");
                std::ofstream f(path);
                if (!f) throw ConfigError("cannot write '" + path.string() + "'");
                f << preset_source(name, lambda);
            }
        }
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace qdeform
