#ifndef QDEFORM_REPORT_HPP
#define QDEFORM_REPORT_HPP

#include <complex>
#include <string>
#include <vector>

namespace qdeform {

/// One relation's residual record.
struct RelationRecord {
    std::string label;
    double raw_norm = 0.0;
    double masked_norm = 0.0;
    int mask_levels = 0;
    double tolerance = 0.0;
    bool pass = false;
    /// Measured-only relations are reported but never fail a run.
    bool measured_only = false;
    std::string note;
};

/// Summary of the representation the relations were bound to.
struct BindingSummary {
    int dim = 0;
    int lambda = 1;
    double nu = 0.0;
    int sign = +1;
    double mu_omega = 1.0;
    std::complex<double> chi{1.0, 0.0};
    std::complex<double> theta{0.0, 0.0};
    std::complex<double> eta{1.0, 0.0};
    std::string f_choice = "default";
};

struct ResidualReport {
    std::string presentation;
    BindingSummary params;
    std::vector<RelationRecord> relations;
    std::vector<std::string> warnings;
    bool overall_pass = true;

    void recompute_overall() {
        overall_pass = true;
        for (const auto& r : relations)
            if (!r.measured_only && !r.pass) overall_pass = false;
    }
};

enum class ReportFormat { json, csv, text };

/// JSON with the stable schema: schema_version, presentation, params{...},
/// relations[{label, raw_norm, masked_norm, mask_levels, tolerance, pass}],
/// warnings[], overall_pass.
std::string emit_json(const ResidualReport& report);

/// Flat rows: nu, relation_label, raw_norm, masked_norm, pass. Lossy view.
std::string emit_csv(const ResidualReport& report);
std::string emit_csv(const std::vector<std::pair<double, ResidualReport>>& sweep);

/// Aligned human-readable table.
std::string emit_text(const ResidualReport& report);

std::string emit_report(const ResidualReport& report, ReportFormat format);

} // namespace qdeform

#endif
