#include "rtepr/sweep.hpp"

#include <filesystem>

#include "rtepr/parallel.hpp"

namespace rtepr {

namespace {

std::string output_path(const ExperimentConfig& config, const std::string& stem)
{
    return (std::filesystem::path(config.out_dir) / (stem + "." + config.format)).string();
}

ExperimentConfig with_parameter(const ExperimentConfig& config, const std::string& name, double value)
{
    ExperimentConfig out = config;
    apply_parameter(out, name, value);
    try {
        validate(out.model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep.values: " + name + " = " + format_number(value) + ": " + e.what());
    }
    return out;
}

} // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config)
{
    const UnitSystem units = UnitSystem::codata();
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + config.out_dir + "': " + ec.message());

    const Protocol protocol = config.protocol();

    if (config.experiment == "populations") {
        const std::string path = output_path(config, "populations");
        write_populations(path, config, units,
                          {{SeriesTag{}, evolve_protocol(config.model, protocol, units)}});
        return {path};
    }

    if (config.experiment == "spectrum") {
        const std::string path = output_path(config, "spectrum");
        SpectrumResult result = epr_sweep(config.model, config.spectrum_config(), protocol,
                                          config.observe_time, units, config.workers);
        write_spectrum(path, config, units, {{SeriesTag{}, std::move(result)}});
        return {path};
    }

    if (config.experiment == "trepr") {
        const std::string path = output_path(config, "trepr");
        const std::vector<double> times = default_sample_times(config.t_on_end, config.t_total, config.trepr_time_points);
        TreprSurface surface = trepr_surface(config.model, config.spectrum_config(), protocol,
                                             times, units, config.workers);
        write_trepr(path, config, units, surface);
        return {path};
    }

    // experiment == "sweep"
    if (!config.sweep) throw ConfigError("sweep experiment without sweep block");
    const SweepSpec& spec = *config.sweep;

    if (spec.target == "populations") {
        std::vector<PopulationSeries> series(spec.values.size());
        // Each value is an independent trajectory; run them concurrently.
        std::vector<ExperimentConfig> configs;
        configs.reserve(spec.values.size());
        for (double v : spec.values) configs.push_back(with_parameter(config, spec.parameter, v));
        parallel_for(static_cast<int>(spec.values.size()), config.workers, [&](int i) {
            const ExperimentConfig& c = configs[static_cast<size_t>(i)];
            series[static_cast<size_t>(i)] = {SeriesTag{spec.parameter, spec.values[static_cast<size_t>(i)]},
                                              evolve_protocol(c.model, c.protocol(), units)};
        });
        const std::string path = output_path(config, "populations");
        write_populations(path, config, units, series);
        return {path};
    }

    std::vector<SpectrumSeries> series;
    series.reserve(spec.values.size());
    for (double v : spec.values) {
        const ExperimentConfig c = with_parameter(config, spec.parameter, v);
        series.push_back({SeriesTag{spec.parameter, v},
                          epr_sweep(c.model, c.spectrum_config(), c.protocol(), c.observe_time, units, config.workers)});
    }
    const std::string path = output_path(config, "spectrum");
    write_spectrum(path, config, units, series);
    return {path};
}

} // namespace rtepr
