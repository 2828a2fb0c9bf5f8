#ifndef QDEFORM_CONFIG_HPP
#define QDEFORM_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdeform/eval.hpp"
#include "qdeform/exotic.hpp"
#include "qdeform/report.hpp"

namespace qdeform {

/// A resolved run configuration. Precedence: CLI flags > config file >
/// QDEFORM_TOL environment > built-in defaults.
struct RunConfig {
    std::string preset;   // exactly one of preset / dsl_path
    std::string dsl_path;
    int dim = 16;
    int lambda = 2;
    std::vector<double> nu_grid{0.0}; // one entry for check, many for sweep
    int sign = +1;
    double mu_omega = 1.0;
    std::vector<double> alphas; // empty = zeros(lambda)
    FChoice f_choice = FChoice::default_half_one_plus_chi;
    double tolerance = 1e-10;
    MaskPolicy mask = MaskPolicy::automatic();
    std::string out_path; // empty = stdout
    ReportFormat format = ReportFormat::json;
    bool format_explicit = false; // set by any format=... source; otherwise the
                                  // output extension may pick the format
    bool measure_only = false;
    XPSource xp_source = XPSource::inversion;
    std::map<std::string, Complex> param_overrides;

    void validate_target() const; // exactly one of preset/dsl
};

/// Parses "start:stop:step" (inclusive stop when it lands on the grid within
/// 1e-12) or a single value.
std::vector<double> parse_nu_grid(const std::string& text);

std::vector<double> parse_alpha_list(const std::string& text);

ReportFormat parse_format(const std::string& text);

MaskPolicy parse_mask_policy(const std::string& text);

Complex parse_complex_value(const std::string& text);

/// Flat key=value file, '#' comments. Returns the pairs in file order.
std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path);

/// Applies one key=value setting (file or flag backend share this).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Environment defaults (QDEFORM_TOL).
void apply_environment(RunConfig& config);

} // namespace qdeform

#endif
