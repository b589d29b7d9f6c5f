#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rtepr/response.hpp"

namespace rtepr {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SweepSpec {
    std::string parameter;       // a model or spectrum field name
    std::vector<double> values;  // one output series per value
    std::string target = "populations"; // populations | spectrum
};

// Fully-defaulted experiment description. Defaults are the baseline
// parameter set the presets build on.
struct ExperimentConfig {
    ModelParams model;
    double t_on_end = 8.0;    // ns
    double t_total = 4000.0;  // ns
    int samples = 200;        // trajectory sample count (log spaced)

    double omega = 200.0;        // mK-equivalent microwave energy
    double epsilon = 0.1;        // mK resolvent broadening
    double field_min = 0.0;      // mK
    double field_max = 400.0;    // mK
    int field_points = 201;
    double observe_time = 1.0;   // ns
    int trepr_time_points = 32;

    std::string experiment = "populations"; // populations | spectrum | trepr | sweep
    std::optional<SweepSpec> sweep;

    std::string out_dir = "out";
    std::string format = "csv"; // csv | json
    bool normalize = false;
    int workers = 1;

    std::vector<std::string> notes; // extra metadata lines (presets use these)

    Protocol protocol() const;
    SpectrumConfig spectrum_config() const;
};

// Strict parser for the JSON configuration tree: unknown keys, wrong types
// and invariant violations raise ConfigError naming the offending key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical JSON form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Names accepted by SweepSpec::parameter, with apply semantics.
std::vector<std::string> sweepable_parameters();
void apply_parameter(ExperimentConfig& config, const std::string& name, double value);

} // namespace rtepr
