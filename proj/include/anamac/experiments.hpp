#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anamac {

// Error families mapped to process exit codes by the command-line front end:
// usage/config 1, numeric/domain 2, input-output 3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value settings; every field is optional so each experiment can
// apply its own published defaults to whatever the user left unset.
struct ExperimentConfig {
    std::optional<unsigned> n, l, r;
    std::optional<unsigned> q;        // 0 = unquantized
    std::optional<double> sigma_w, clip_a, rho;
    std::optional<std::string> prf;
    std::optional<std::vector<double>> ebn0_grid; // dB
    std::optional<std::vector<double>> rho_grid;
    std::optional<uint64_t> trials;
    std::optional<uint64_t> seed;
    std::string out; // empty = stdout
};

// "start:stop:step" (inclusive, step > 0) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// Lines of "key = value", '#' comments. Unknown keys are usage errors.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Locale-independent cell formatting: 12 significant digits, '.' decimal.
std::string format_number(double v);

// Result of one experiment run. `ok` is false when some rows carry error
// markers; the text is still a complete artifact.
struct Artifact {
    std::string text;
    bool ok = true;
    std::string error;
};

Artifact run_distance(const ExperimentConfig& cfg);
Artifact run_bounds(const ExperimentConfig& cfg);
Artifact run_roc(const ExperimentConfig& cfg);
Artifact run_attack(const ExperimentConfig& cfg);

} // namespace anamac
