#ifndef QDEFORM_RUN_HPP
#define QDEFORM_RUN_HPP

#include <iosfwd>
#include <string>

#include "qdeform/config.hpp"

namespace qdeform {

/// Exit status contract: 0 all relations pass, 1 relation failure, 2
/// configuration/build error. Diagnostics go to `diag`.
int run_check(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_validate(const std::string& path, std::ostream& out, std::ostream& diag);
int run_presets(const std::string& dump_dir, int lambda, std::ostream& out, std::ostream& diag);

/// Builds the report for a check run (library entry point used by the CLI,
/// the python bindings and the tests).
ResidualReport check_report(const RunConfig& config);

std::vector<std::pair<double, ResidualReport>> sweep_reports(const RunConfig& config);

} // namespace qdeform

#endif
