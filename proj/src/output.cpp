#include "rtepr/output.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace rtepr {

using nlohmann::json;

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

// The echoed config describes the experiment, not the execution: worker
// count and output location must not influence the output bytes.
json experiment_json(const ExperimentConfig& config)
{
    json compact = json::parse(serialize_config(config));
    compact.erase("workers");
    compact.erase("output");
    return compact;
}

} // namespace

std::vector<std::string> metadata_lines(const ExperimentConfig& config, const UnitSystem& units)
{
    std::vector<std::string> lines;
    lines.push_back("config = " + experiment_json(config).dump());
    lines.push_back("mk_to_rad_per_ns = " + format_number(units.mk_to_rad_per_ns));
    lines.push_back("chi_convention = chi(omega+i*eps, t) = -Tr[A (L0 + i*omega - eps)^-1 (-i[B, rho(t)])], Kubo-limit checked");
    lines.push_back("signal = -Im(chi)");
    for (const std::string& note : config.notes) lines.push_back("note: " + note);
    return lines;
}

namespace {

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    return out;
}

void write_header(std::ofstream& out, const std::string& kind, const ExperimentConfig& config, const UnitSystem& units)
{
    out << "# rtepr " << kind << " output\n";
    for (const std::string& line : metadata_lines(config, units)) {
        out << "# " << line << "\n";
    }
}

std::string series_comment(const SeriesTag& tag)
{
    return "# series: " + tag.parameter + " = " + format_number(tag.value);
}

json metadata_json(const ExperimentConfig& config, const UnitSystem& units)
{
    json meta;
    meta["config"] = experiment_json(config);
    meta["mk_to_rad_per_ns"] = units.mk_to_rad_per_ns;
    meta["chi_convention"] = "chi(omega+i*eps, t) = -Tr[A (L0 + i*omega - eps)^-1 (-i[B, rho(t)])], Kubo-limit checked";
    meta["signal"] = "-Im(chi)";
    meta["notes"] = config.notes;
    return meta;
}

void finish(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

} // namespace

void write_populations(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                       const std::vector<PopulationSeries>& series)
{
    const bool with_corr = config.model.kind == ModelKind::DRTS;
    if (config.format == "csv") {
        std::ofstream out = open_output(path);
        write_header(out, "populations", config, units);
        out << "t_ns,pop_gs,pop_es,pop_t" << (with_corr ? ",corr_s1s2" : "") << "\n";
        for (const PopulationSeries& s : series) {
            if (!s.tag.parameter.empty()) out << series_comment(s.tag) << "\n";
            for (size_t i = 0; i < s.trajectory.times.size(); ++i) {
                out << format_number(s.trajectory.times[i]) << ','
                    << format_number(s.trajectory.pop_gs[i]) << ','
                    << format_number(s.trajectory.pop_es[i]) << ','
                    << format_number(s.trajectory.pop_t[i]);
                if (with_corr) out << ',' << format_number(s.trajectory.corr_s1s2[i]);
                out << "\n";
            }
        }
        finish(out, path);
        return;
    }

    json root;
    root["metadata"] = metadata_json(config, units);
    root["series"] = json::array();
    for (const PopulationSeries& s : series) {
        json entry;
        if (!s.tag.parameter.empty()) {
            entry["parameter"] = s.tag.parameter;
            entry["value"] = s.tag.value;
        }
        entry["t_ns"] = s.trajectory.times;
        entry["pop_gs"] = s.trajectory.pop_gs;
        entry["pop_es"] = s.trajectory.pop_es;
        entry["pop_t"] = s.trajectory.pop_t;
        if (with_corr) entry["corr_s1s2"] = s.trajectory.corr_s1s2;
        root["series"].push_back(std::move(entry));
    }
    std::ofstream out = open_output(path);
    out << root.dump(2) << "\n";
    finish(out, path);
}

void write_spectrum(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                    const std::vector<SpectrumSeries>& series)
{
    if (series.empty()) throw std::invalid_argument("write_spectrum needs at least one series");
    const std::vector<std::string>& labels = series.front().result.component_labels;

    if (config.format == "csv") {
        std::ofstream out = open_output(path);
        write_header(out, "spectrum", config, units);
        out << "field_mK,chi_re,chi_im";
        for (const std::string& label : labels) {
            out << ",comp_" << label << "_re,comp_" << label << "_im";
        }
        out << "\n";
        for (const SpectrumSeries& s : series) {
            if (!s.tag.parameter.empty()) out << series_comment(s.tag) << "\n";
            if (s.result.normalization != 1.0) {
                out << "# normalization = " << format_number(s.result.normalization) << "\n";
            }
            for (size_t i = 0; i < s.result.field.size(); ++i) {
                out << format_number(s.result.field[i]) << ','
                    << format_number(s.result.chi[i].real()) << ','
                    << format_number(s.result.chi[i].imag());
                for (const Complex& c : s.result.components[i]) {
                    out << ',' << format_number(c.real()) << ',' << format_number(c.imag());
                }
                out << "\n";
            }
        }
        finish(out, path);
        return;
    }

    json root;
    root["metadata"] = metadata_json(config, units);
    root["series"] = json::array();
    for (const SpectrumSeries& s : series) {
        json entry;
        if (!s.tag.parameter.empty()) {
            entry["parameter"] = s.tag.parameter;
            entry["value"] = s.tag.value;
        }
        entry["normalization"] = s.result.normalization;
        entry["field_mK"] = s.result.field;
        json chi_re = json::array(), chi_im = json::array();
        for (const Complex& c : s.result.chi) {
            chi_re.push_back(c.real());
            chi_im.push_back(c.imag());
        }
        entry["chi_re"] = std::move(chi_re);
        entry["chi_im"] = std::move(chi_im);
        json comps;
        for (size_t k = 0; k < labels.size(); ++k) {
            json re = json::array(), im = json::array();
            for (size_t i = 0; i < s.result.field.size(); ++i) {
                re.push_back(s.result.components[i][k].real());
                im.push_back(s.result.components[i][k].imag());
            }
            comps[labels[k]] = {{"re", std::move(re)}, {"im", std::move(im)}};
        }
        entry["components"] = std::move(comps);
        root["series"].push_back(std::move(entry));
    }
    std::ofstream out = open_output(path);
    out << root.dump(2) << "\n";
    finish(out, path);
}

void write_trepr(const std::string& path, const ExperimentConfig& config, const UnitSystem& units,
                 const TreprSurface& surface)
{
    if (config.format == "csv") {
        std::ofstream out = open_output(path);
        write_header(out, "trepr", config, units);
        if (surface.normalization != 1.0) {
            out << "# normalization = " << format_number(surface.normalization) << "\n";
        }
        out << "t_ns,field_mK,chi_re,chi_im\n";
        for (size_t row = 0; row < surface.times.size(); ++row) {
            for (size_t i = 0; i < surface.field.size(); ++i) {
                out << format_number(surface.times[row]) << ','
                    << format_number(surface.field[i]) << ','
                    << format_number(surface.chi[row][i].real()) << ','
                    << format_number(surface.chi[row][i].imag()) << "\n";
            }
        }
        finish(out, path);
        return;
    }

    json root;
    root["metadata"] = metadata_json(config, units);
    root["normalization"] = surface.normalization;
    root["t_ns"] = surface.times;
    root["field_mK"] = surface.field;
    json re = json::array(), im = json::array();
    for (const auto& row : surface.chi) {
        json row_re = json::array(), row_im = json::array();
        for (const Complex& c : row) {
            row_re.push_back(c.real());
            row_im.push_back(c.imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    root["chi_re"] = std::move(re);
    root["chi_im"] = std::move(im);
    std::ofstream out = open_output(path);
    out << root.dump(2) << "\n";
    finish(out, path);
}

} // namespace rtepr
