#include "rtepr/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace rtepr {

using nlohmann::json;

Protocol ExperimentConfig::protocol() const
{
    Protocol p;
    p.t_on_end = t_on_end;
    p.t_total = t_total;
    p.sample_times = default_sample_times(t_on_end, t_total, samples);
    return p;
}

SpectrumConfig ExperimentConfig::spectrum_config() const
{
    SpectrumConfig s;
    s.omega = omega;
    s.epsilon = epsilon;
    s.field_grid = uniform_field_grid(field_min, field_max, field_points);
    s.observe_time = observe_time;
    s.normalize = normalize;
    return s;
}

namespace {

struct FieldBinding {
    std::function<double(const ExperimentConfig&)> get;
    std::function<void(ExperimentConfig&, double)> set;
    bool drts_only = false;
};

const std::map<std::string, FieldBinding>& numeric_fields()
{
    static const std::map<std::string, FieldBinding> table = [] {
        std::map<std::string, FieldBinding> t;
        auto model = [&t](const std::string& name, double ModelParams::* member, bool drts_only = false) {
            t["model." + name] = FieldBinding{
                [member](const ExperimentConfig& c) { return c.model.*member; },
                [member](ExperimentConfig& c, double v) { c.model.*member = v; },
                drts_only};
        };
        model("g_t", &ModelParams::g_t);
        model("g_r", &ModelParams::g_r);
        model("zeeman", &ModelParams::zeeman);
        model("j_exchange", &ModelParams::j_exchange);
        model("d_zfs", &ModelParams::d_zfs);
        model("e_zfs", &ModelParams::e_zfs);
        model("v_laser", &ModelParams::v_laser);
        model("gamma_radical_flip", &ModelParams::gamma_radical_flip);
        model("gamma_radical_dephase", &ModelParams::gamma_radical_dephase);
        model("gamma_radical2_flip", &ModelParams::gamma_radical2_flip, true);
        model("gamma_radical2_dephase", &ModelParams::gamma_radical2_dephase, true);
        model("gamma_triplet_flip", &ModelParams::gamma_triplet_flip);
        model("gamma_triplet_dephase", &ModelParams::gamma_triplet_dephase);
        model("gamma_isc", &ModelParams::gamma_isc);
        model("gamma_decay", &ModelParams::gamma_decay);

        auto plain = [&t](const std::string& name, double ExperimentConfig::* member) {
            t[name] = FieldBinding{
                [member](const ExperimentConfig& c) { return c.*member; },
                [member](ExperimentConfig& c, double v) { c.*member = v; }};
        };
        plain("protocol.t_on_end", &ExperimentConfig::t_on_end);
        plain("protocol.t_total", &ExperimentConfig::t_total);
        plain("spectrum.omega", &ExperimentConfig::omega);
        plain("spectrum.epsilon", &ExperimentConfig::epsilon);
        plain("spectrum.field_min", &ExperimentConfig::field_min);
        plain("spectrum.field_max", &ExperimentConfig::field_max);
        plain("spectrum.observe_time", &ExperimentConfig::observe_time);
        return t;
    }();
    return table;
}

double require_number(const json& node, const std::string& path)
{
    if (!node.is_number()) throw ConfigError(path + ": expected a number");
    return node.get<double>();
}

int require_int(const json& node, const std::string& path)
{
    if (!node.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return node.get<int>();
}

bool require_bool(const json& node, const std::string& path)
{
    if (!node.is_boolean()) throw ConfigError(path + ": expected a boolean");
    return node.get<bool>();
}

std::string require_string(const json& node, const std::string& path)
{
    if (!node.is_string()) throw ConfigError(path + ": expected a string");
    return node.get<std::string>();
}

// Walks an object with a fixed handler per key; anything else is rejected.
void walk_object(const json& node, const std::string& path,
                 const std::map<std::string, std::function<void(const json&)>>& handlers)
{
    if (!node.is_object()) throw ConfigError(path.empty() ? std::string("config root: expected an object") : path + ": expected an object");
    for (auto it = node.begin(); it != node.end(); ++it) {
        const std::string child = path.empty() ? it.key() : path + "." + it.key();
        auto handler = handlers.find(it.key());
        if (handler == handlers.end()) throw ConfigError(child + ": unknown key");
        handler->second(it.value());
    }
}

void check_config(const ExperimentConfig& c)
{
    try {
        validate(c.model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("model." + std::string(e.what()));
    }
    if (c.model.kind == ModelKind::SRTS && c.model.gamma_radical2_flip != 0.0) {
        throw ConfigError("model.gamma_radical2_flip: second-radical rates apply to DRTS only");
    }
    if (c.model.kind == ModelKind::SRTS && c.model.gamma_radical2_dephase != 0.0) {
        throw ConfigError("model.gamma_radical2_dephase: second-radical rates apply to DRTS only");
    }
    if (!(c.t_on_end > 0.0) || !(c.t_on_end <= c.t_total)) {
        throw ConfigError("protocol.t_on_end: requires 0 < t_on_end <= t_total");
    }
    if (c.samples < 2) throw ConfigError("protocol.samples: need at least 2");
    if (!(c.epsilon > 0.0)) throw ConfigError("spectrum.epsilon: must be > 0");
    if (!(c.field_max > c.field_min)) throw ConfigError("spectrum.field_max: must exceed field_min");
    if (c.field_points < 2) throw ConfigError("spectrum.field_points: need at least 2");
    if (c.observe_time < 0.0 || c.observe_time > c.t_total) {
        throw ConfigError("spectrum.observe_time: outside [0, t_total]");
    }
    if (c.trepr_time_points < 2) throw ConfigError("trepr.time_points: need at least 2");
    if (c.experiment != "populations" && c.experiment != "spectrum" && c.experiment != "trepr" && c.experiment != "sweep") {
        throw ConfigError("experiment: must be populations, spectrum, trepr or sweep");
    }
    if (c.experiment == "sweep") {
        if (!c.sweep) throw ConfigError("sweep: required when experiment = sweep");
        const auto& table = numeric_fields();
        auto it = table.find(c.sweep->parameter);
        if (it == table.end()) throw ConfigError("sweep.parameter: unknown parameter '" + c.sweep->parameter + "'");
        if (it->second.drts_only && c.model.kind == ModelKind::SRTS) {
            throw ConfigError("sweep.parameter: '" + c.sweep->parameter + "' applies to DRTS only");
        }
        if (c.sweep->values.empty()) throw ConfigError("sweep.values: must be nonempty");
        for (double v : c.sweep->values) {
            if (!std::isfinite(v)) throw ConfigError("sweep.values: must be finite");
        }
        if (c.sweep->target != "populations" && c.sweep->target != "spectrum") {
            throw ConfigError("sweep.target: must be populations or spectrum");
        }
    } else if (c.sweep) {
        throw ConfigError("sweep: only allowed when experiment = sweep");
    }
    if (c.format != "csv" && c.format != "json") throw ConfigError("output.format: must be csv or json");
    if (c.workers < 1) throw ConfigError("workers: must be >= 1");
}

} // namespace

std::vector<std::string> sweepable_parameters()
{
    std::vector<std::string> names;
    for (const auto& [name, binding] : numeric_fields()) names.push_back(name);
    return names;
}

void apply_parameter(ExperimentConfig& config, const std::string& name, double value)
{
    const auto& table = numeric_fields();
    auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown parameter '" + name + "'");
    it->second.set(config, value);
}

ExperimentConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig c;

    std::map<std::string, std::function<void(const json&)>> model_keys = {
        {"kind", [&](const json& v) {
             try {
                 c.model.kind = kind_from_name(require_string(v, "model.kind"));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError("model.kind: " + std::string(e.what()));
             }
         }},
    };
    for (const auto& [name, binding] : numeric_fields()) {
        if (name.rfind("model.", 0) != 0) continue;
        const std::string key = name.substr(6);
        model_keys[key] = [&c, name = name](const json& v) { apply_parameter(c, name, require_number(v, name)); };
    }

    walk_object(root, "", {
        {"model", [&](const json& v) { walk_object(v, "model", model_keys); }},
        {"protocol", [&](const json& v) {
             walk_object(v, "protocol", {
                 {"t_on_end", [&](const json& n) { c.t_on_end = require_number(n, "protocol.t_on_end"); }},
                 {"t_total", [&](const json& n) { c.t_total = require_number(n, "protocol.t_total"); }},
                 {"samples", [&](const json& n) { c.samples = require_int(n, "protocol.samples"); }},
             });
         }},
        {"spectrum", [&](const json& v) {
             walk_object(v, "spectrum", {
                 {"omega", [&](const json& n) { c.omega = require_number(n, "spectrum.omega"); }},
                 {"epsilon", [&](const json& n) { c.epsilon = require_number(n, "spectrum.epsilon"); }},
                 {"field_min", [&](const json& n) { c.field_min = require_number(n, "spectrum.field_min"); }},
                 {"field_max", [&](const json& n) { c.field_max = require_number(n, "spectrum.field_max"); }},
                 {"field_points", [&](const json& n) { c.field_points = require_int(n, "spectrum.field_points"); }},
                 {"observe_time", [&](const json& n) { c.observe_time = require_number(n, "spectrum.observe_time"); }},
             });
         }},
        {"trepr", [&](const json& v) {
             walk_object(v, "trepr", {
                 {"time_points", [&](const json& n) { c.trepr_time_points = require_int(n, "trepr.time_points"); }},
             });
         }},
        {"experiment", [&](const json& v) { c.experiment = require_string(v, "experiment"); }},
        {"sweep", [&](const json& v) {
             SweepSpec spec;
             walk_object(v, "sweep", {
                 {"parameter", [&](const json& n) { spec.parameter = require_string(n, "sweep.parameter"); }},
                 {"values", [&](const json& n) {
                      if (!n.is_array()) throw ConfigError("sweep.values: expected an array");
                      for (const json& e : n) spec.values.push_back(require_number(e, "sweep.values[]"));
                  }},
                 {"target", [&](const json& n) { spec.target = require_string(n, "sweep.target"); }},
             });
             c.sweep = std::move(spec);
         }},
        {"output", [&](const json& v) {
             walk_object(v, "output", {
                 {"directory", [&](const json& n) { c.out_dir = require_string(n, "output.directory"); }},
                 {"format", [&](const json& n) { c.format = require_string(n, "output.format"); }},
             });
         }},
        {"normalize", [&](const json& v) { c.normalize = require_bool(v, "normalize"); }},
        {"workers", [&](const json& v) { c.workers = require_int(v, "workers"); }},
    });

    check_config(c);
    return c;
}

ExperimentConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c)
{
    json root;
    json& model = root["model"];
    model["kind"] = kind_name(c.model.kind);
    for (const auto& [name, binding] : numeric_fields()) {
        if (name.rfind("model.", 0) != 0) continue;
        model[name.substr(6)] = binding.get(c);
    }
    root["protocol"] = {{"t_on_end", c.t_on_end}, {"t_total", c.t_total}, {"samples", c.samples}};
    root["spectrum"] = {{"omega", c.omega},       {"epsilon", c.epsilon},
                        {"field_min", c.field_min}, {"field_max", c.field_max},
                        {"field_points", c.field_points}, {"observe_time", c.observe_time}};
    root["trepr"] = {{"time_points", c.trepr_time_points}};
    root["experiment"] = c.experiment;
    if (c.sweep) {
        root["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}, {"target", c.sweep->target}};
    }
    root["output"] = {{"directory", c.out_dir}, {"format", c.format}};
    root["normalize"] = c.normalize;
    root["workers"] = c.workers;
    return root.dump(2);
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b)
{
    return serialize_config(a) == serialize_config(b) && a.notes == b.notes;
}

} // namespace rtepr
