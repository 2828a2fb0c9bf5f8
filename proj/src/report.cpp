#include "qdeform/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace qdeform {

namespace {

nlohmann::json to_json(const ResidualReport& report) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["presentation"] = report.presentation;
    nlohmann::json params;
    params["dim"] = report.params.dim;
    params["nu"] = report.params.nu;
    params["sign"] = report.params.sign;
    params["mu_omega"] = report.params.mu_omega;
    params["lambda"] = report.params.lambda;
    params["chi_re"] = report.params.chi.real();
    params["chi_im"] = report.params.chi.imag();
    params["theta_re"] = report.params.theta.real();
    params["theta_im"] = report.params.theta.imag();
    params["eta_re"] = report.params.eta.real();
    params["eta_im"] = report.params.eta.imag();
    params["f_choice"] = report.params.f_choice;
    j["params"] = std::move(params);
    j["relations"] = nlohmann::json::array();
    for (const auto& r : report.relations) {
        nlohmann::json rec;
        rec["label"] = r.label;
        rec["raw_norm"] = r.raw_norm;
        rec["masked_norm"] = r.masked_norm;
        rec["mask_levels"] = r.mask_levels;
        rec["tolerance"] = r.tolerance;
        rec["pass"] = r.pass;
        if (r.measured_only) rec["measured_only"] = true;
        if (!r.note.empty()) rec["note"] = r.note;
        j["relations"].push_back(std::move(rec));
    }
    j["warnings"] = report.warnings;
    j["overall_pass"] = report.overall_pass;
    return j;
}

void csv_rows(std::ostream& os, double nu, const ResidualReport& report) {
    for (const auto& r : report.relations) {
        os << std::setprecision(17) << nu << ',' << r.label << ',' << r.raw_norm << ','
           << r.masked_norm << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

} // namespace

std::string emit_json(const ResidualReport& report) {
    return to_json(report).dump(2) + "\n";
}

std::string emit_csv(const ResidualReport& report) {
    std::ostringstream os;
    os << "nu,relation_label,raw_norm,masked_norm,pass\n";
    csv_rows(os, report.params.nu, report);
    return os.str();
}

std::string emit_csv(const std::vector<std::pair<double, ResidualReport>>& sweep) {
    std::ostringstream os;
    os << "nu,relation_label,raw_norm,masked_norm,pass\n";
    for (const auto& [nu, report] : sweep) csv_rows(os, nu, report);
    return os.str();
}

std::string emit_text(const ResidualReport& report) {
    std::ostringstream os;
    os << "presentation: " << report.presentation << "\n";
    os << "dim=" << report.params.dim << " lambda=" << report.params.lambda
       << " nu=" << report.params.nu << " sign=" << (report.params.sign > 0 ? "+" : "-")
       << " mu_omega=" << report.params.mu_omega << " f=" << report.params.f_choice << "\n";
    os << "chi=(" << report.params.chi.real() << ", " << report.params.chi.imag() << ")"
       << " theta=(" << report.params.theta.real() << ", " << report.params.theta.imag() << ")"
       << " eta=(" << report.params.eta.real() << ", " << report.params.eta.imag() << ")\n";
    std::size_t width = 8;
    for (const auto& r : report.relations) width = std::max(width, r.label.size());
    os << std::left << std::setw(static_cast<int>(width) + 2) << "relation" << std::right
       << std::setw(14) << "raw_norm" << std::setw(14) << "masked_norm" << std::setw(6) << "mask"
       << std::setw(11) << "tol" << std::setw(7) << "pass" << "\n";
    for (const auto& r : report.relations) {
        os << std::left << std::setw(static_cast<int>(width) + 2) << r.label << std::right
           << std::setw(14) << std::scientific << std::setprecision(3) << r.raw_norm << std::setw(14)
           << r.masked_norm << std::setw(6) << r.mask_levels << std::setw(11) << r.tolerance
           << std::setw(7) << (r.measured_only ? "meas" : r.pass ? "ok" : "FAIL");
        if (!r.note.empty()) os << "  " << r.note;
        os << "\n";
    }
    for (const auto& w : report.warnings) os << "warning: " << w << "\n";
    os << "overall: " << (report.overall_pass ? "pass" : "FAIL") << "\n";
    return os.str();
}

std::string emit_report(const ResidualReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return emit_json(report);
        case ReportFormat::csv: return emit_csv(report);
        case ReportFormat::text: return emit_text(report);
    }
    return emit_json(report);
}

} // namespace qdeform
