#ifndef QDEFORM_PRESETS_HPP
#define QDEFORM_PRESETS_HPP

#include <string>
#include <vector>

#include "qdeform/dsl.hpp"

namespace qdeform {

/// Names of the built-in relation sets.
std::vector<std::string> preset_names();

bool is_preset(const std::string& name);

std::string preset_description(const std::string& name);

/// .qdl source text for a built-in. gdoa and deformed_clambda depend on the
/// grading and are generated for the requested lambda; the rest ignore it.
std::string preset_source(const std::string& name, int lambda = 4);

dsl::AlgebraPresentation preset_presentation(const std::string& name, int lambda = 4);

/// Collapsed form of a case preset at an exact integer nu: the printed limit
/// ladder sector plus the limit phase-space relations. `name` is "case1" or
/// "case2"; `fermionic` selects the odd-nu form.
dsl::AlgebraPresentation collapsed_case_presentation(const std::string& name, bool fermionic);

} // namespace qdeform

#endif
