#include "qdeform/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qdeform/dsl.hpp"

namespace qdeform {

void RunConfig::validate_target() const {
    if (preset.empty() == dsl_path.empty())
        throw ConfigError("exactly one of --preset and --dsl must be given");
}

std::vector<double> parse_nu_grid(const std::string& text) {
    const auto bad = [&]() { return ConfigError("invalid nu grid '" + text + "' (want VALUE or START:STOP:STEP)"); };
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    auto to_double = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw bad();
            return v;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            throw bad();
        }
    };
    if (parts.size() == 1) return {to_double(parts[0])};
    if (parts.size() != 3) throw bad();
    const double start = to_double(parts[0]), stop = to_double(parts[1]), step = to_double(parts[2]);
    if (start > stop) throw ConfigError("nu grid: start must be <= stop");
    if (start == stop) return {start};
    if (!(step > 0.0)) throw ConfigError("nu grid: step must be > 0");
    std::vector<double> grid;
    const double span = stop - start;
    const long n_steps = static_cast<long>(std::floor(span / step + 1e-12));
    for (long k = 0; k <= n_steps; ++k) grid.push_back(start + static_cast<double>(k) * step);
    // inclusive stop when (stop-start) is an integral multiple of step
    if (std::abs(grid.back() - stop) > 1e-12 * std::max(1.0, std::abs(stop))) {
        // leave as-is: stop not on the grid
    } else {
        grid.back() = stop;
    }
    return grid;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    std::stringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(cur, &used);
            if (used != cur.size() || !std::isfinite(v))
                throw ConfigError("invalid alpha value '" + cur + "'");
            out.push_back(v);
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            throw ConfigError("invalid alpha value '" + cur + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty alpha list");
    return out;
}

ReportFormat parse_format(const std::string& text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "text") return ReportFormat::text;
    throw ConfigError("unknown format '" + text + "' (expected json, csv or text)");
}

MaskPolicy parse_mask_policy(const std::string& text) {
    if (text == "auto") return MaskPolicy::automatic();
    try {
        std::size_t used = 0;
        int k = std::stoi(text, &used);
        if (used != text.size() || k < 0) throw ConfigError("");
        return MaskPolicy::fixed(k);
    } catch (...) {
        throw ConfigError("invalid mask policy '" + text + "' (expected 'auto' or a nonnegative integer)");
    }
}

Complex parse_complex_value(const std::string& text) {
    // reuse the DSL scalar machinery: parse "param v = <text>;"
    try {
        auto p = dsl::parse_presentation("algebra t; param v = " + text + ";");
        return p.parameters.at(0).second;
    } catch (const ParseError& e) {
        throw ConfigError("invalid complex value '" + text + "': " + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string s) {
            const char* ws = " \t\r";
            const auto b = s.find_first_not_of(ws);
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(ws);
            return s.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    auto to_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw ConfigError("");
            return v;
        } catch (...) {
            throw ConfigError("invalid integer for " + key + ": '" + s + "'");
        }
    };
    auto to_real = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) throw ConfigError("");
            return v;
        } catch (...) {
            throw ConfigError("invalid number for " + key + ": '" + s + "'");
        }
    };
    if (key == "preset") config.preset = value;
    else if (key == "dsl") config.dsl_path = value;
    else if (key == "dim") config.dim = to_int(value);
    else if (key == "lambda") config.lambda = to_int(value);
    else if (key == "nu") config.nu_grid = parse_nu_grid(value);
    else if (key == "sign") {
        if (value == "+" || value == "+1" || value == "1") config.sign = +1;
        else if (value == "-" || value == "-1") config.sign = -1;
        else throw ConfigError("invalid sign '" + value + "' (expected + or -)");
    } else if (key == "mu-omega" || key == "mu_omega") config.mu_omega = to_real(value);
    else if (key == "alphas") config.alphas = parse_alpha_list(value);
    else if (key == "f") config.f_choice = f_choice_from_name(value);
    else if (key == "tol") config.tolerance = to_real(value);
    else if (key == "mask") config.mask = parse_mask_policy(value);
    else if (key == "out") config.out_path = value;
    else if (key == "format") {
        config.format = parse_format(value);
        config.format_explicit = true;
    }
    else if (key == "measure-only" || key == "measure_only")
        config.measure_only = value == "true" || value == "1" || value.empty();
    else if (key == "xp-source" || key == "xp_source") {
        if (value == "eq32") config.xp_source = XPSource::eq32;
        else if (value == "inversion") config.xp_source = XPSource::inversion;
        else throw ConfigError("invalid xp-source '" + value + "' (expected eq32 or inversion)");
    } else if (key.rfind("param.", 0) == 0) {
        config.param_overrides[key.substr(6)] = parse_complex_value(value);
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

void apply_environment(RunConfig& config) {
    if (const char* tol = std::getenv("QDEFORM_TOL")) {
        try {
            std::size_t used = 0;
            double v = std::stod(tol, &used);
            if (used != std::string(tol).size() || !(v > 0.0)) throw ConfigError("");
            config.tolerance = v;
        } catch (...) {
            throw ConfigError(std::string("invalid QDEFORM_TOL value '") + tol + "'");
        }
    }
}

} // namespace qdeform
