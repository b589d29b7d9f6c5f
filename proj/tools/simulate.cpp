#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "rtepr/presets.hpp"
#include "rtepr/sweep.hpp"

namespace {

constexpr int EXIT_CONFIG_ERROR = 2;
constexpr int EXIT_NUMERICAL_ERROR = 3;
constexpr int EXIT_IO_ERROR = 4;

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"TR-EPR simulator for radical-triplet systems"};

    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string format;
    int workers = 0;
    bool normalize = false;
    bool list_presets = false;

    app.add_option("--config", config_path, "JSON experiment configuration file");
    app.add_option("--preset", preset, "named experiment preset (fig2a..fig7b)");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--format", format, "output format: csv or json (overrides config)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--workers", workers, "number of worker threads (overrides config)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--normalize", normalize, "normalize spectra by the peak |Im chi|");
    app.add_flag("--list-presets", list_presets, "list preset names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const std::string& name : rtepr::preset_names()) std::cout << name << "\n";
        return 0;
    }

    try {
        if (config_path.empty() == preset.empty()) {
            throw rtepr::ConfigError("exactly one of --config or --preset is required");
        }
        rtepr::ExperimentConfig config = preset.empty()
            ? rtepr::load_config_file(config_path)
            : rtepr::preset_config(preset);

        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.format = format;
        if (workers > 0) config.workers = workers;
        if (normalize) config.normalize = true;

        const std::vector<std::string> files = rtepr::run_experiment(config);
        for (const std::string& file : files) std::cout << file << "\n";
        return 0;
    } catch (const rtepr::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG_ERROR;
    } catch (const rtepr::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return EXIT_NUMERICAL_ERROR;
    } catch (const rtepr::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return EXIT_IO_ERROR;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
