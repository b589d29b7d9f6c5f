#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rtepr/presets.hpp"
#include "rtepr/response.hpp"
#include "rtepr/sweep.hpp"

namespace py = pybind11;
using namespace rtepr;

namespace {

SuperOp model_liouvillian(const ModelParams& params, bool laser_on)
{
    return liouvillian(build_hamiltonian(params, laser_on), build_jump_channels(params), UnitSystem::codata());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Lindblad TR-EPR simulator for radical-triplet systems";

    py::enum_<ModelKind>(m, "ModelKind")
        .value("SRTS", ModelKind::SRTS)
        .value("DRTS", ModelKind::DRTS);

    py::class_<SpinOps>(m, "SpinOps")
        .def_readonly("s", &SpinOps::s)
        .def_readonly("sx", &SpinOps::sx)
        .def_readonly("sy", &SpinOps::sy)
        .def_readonly("sz", &SpinOps::sz)
        .def_readonly("sp", &SpinOps::sp)
        .def_readonly("sm", &SpinOps::sm);
    m.def("spin_matrices", &spin_matrices, py::arg("s"));

    py::class_<CoupledBasis>(m, "CoupledBasis")
        .def_readonly("spins", &CoupledBasis::spins)
        .def_readonly("transform", &CoupledBasis::transform)
        .def_property_readonly("labels", [](const CoupledBasis& b) {
            py::list out;
            for (const auto& l : b.labels) out.append(py::make_tuple(l.s_total, l.m, l.multiplet));
            return out;
        });
    m.def("couple_to_total_spin", &couple_to_total_spin, py::arg("spins"));

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def_readwrite("kind", &ModelParams::kind)
        .def_readwrite("g_t", &ModelParams::g_t)
        .def_readwrite("g_r", &ModelParams::g_r)
        .def_readwrite("zeeman", &ModelParams::zeeman)
        .def_readwrite("j_exchange", &ModelParams::j_exchange)
        .def_readwrite("d_zfs", &ModelParams::d_zfs)
        .def_readwrite("e_zfs", &ModelParams::e_zfs)
        .def_readwrite("v_laser", &ModelParams::v_laser)
        .def_readwrite("gamma_radical_flip", &ModelParams::gamma_radical_flip)
        .def_readwrite("gamma_radical_dephase", &ModelParams::gamma_radical_dephase)
        .def_readwrite("gamma_radical2_flip", &ModelParams::gamma_radical2_flip)
        .def_readwrite("gamma_radical2_dephase", &ModelParams::gamma_radical2_dephase)
        .def_readwrite("gamma_triplet_flip", &ModelParams::gamma_triplet_flip)
        .def_readwrite("gamma_triplet_dephase", &ModelParams::gamma_triplet_dephase)
        .def_readwrite("gamma_isc", &ModelParams::gamma_isc)
        .def_readwrite("gamma_decay", &ModelParams::gamma_decay);
    m.def("baseline_params", &baseline_params, py::arg("kind"));

    m.def("space_dimensions", [](ModelKind kind) {
        const StructuredSpace space = build_space(kind);
        py::dict out;
        for (const Manifold& mf : space.manifolds) {
            out[manifold_name(mf.label).c_str()] = py::make_tuple(mf.offset, mf.dim);
        }
        out["total"] = space.total_dim;
        return out;
    }, py::arg("kind"));

    m.def("build_spin_hamiltonian", &build_spin_hamiltonian, py::arg("params"));
    m.def("build_hamiltonian", &build_hamiltonian, py::arg("params"), py::arg("laser_on"));
    m.def("initial_state", &initial_state, py::arg("params"));
    m.def("jump_channels", [](const ModelParams& params) {
        py::list out;
        for (const JumpChannel& c : build_jump_channels(params)) {
            out.append(py::make_tuple(c.label, c.rate, c.op));
        }
        return out;
    }, py::arg("params"));
    m.def("liouvillian_matrix", [](const ModelParams& params, bool laser_on) {
        return model_liouvillian(params, laser_on).m;
    }, py::arg("params"), py::arg("laser_on"));

    py::class_<Protocol>(m, "Protocol")
        .def(py::init<>())
        .def_readwrite("t_on_end", &Protocol::t_on_end)
        .def_readwrite("t_total", &Protocol::t_total)
        .def_readwrite("sample_times", &Protocol::sample_times);

    m.def("evolve_protocol", [](const ModelParams& params, const Protocol& protocol) {
        const Trajectory traj = evolve_protocol(params, protocol, UnitSystem::codata());
        py::dict out;
        out["t_ns"] = traj.times;
        out["pop_gs"] = traj.pop_gs;
        out["pop_es"] = traj.pop_es;
        out["pop_t"] = traj.pop_t;
        if (!traj.corr_s1s2.empty()) out["corr_s1s2"] = traj.corr_s1s2;
        return out;
    }, py::arg("params"), py::arg("protocol") = Protocol{});

    py::class_<SpectrumConfig>(m, "SpectrumConfig")
        .def(py::init<>())
        .def_readwrite("omega", &SpectrumConfig::omega)
        .def_readwrite("epsilon", &SpectrumConfig::epsilon)
        .def_readwrite("field_grid", &SpectrumConfig::field_grid)
        .def_readwrite("observe_time", &SpectrumConfig::observe_time)
        .def_readwrite("normalize", &SpectrumConfig::normalize);
    m.def("uniform_field_grid", &uniform_field_grid, py::arg("min_mk"), py::arg("max_mk"), py::arg("points"));

    m.def("epr_sweep", [](const ModelParams& params, const SpectrumConfig& config, const Protocol& protocol, int workers) {
        const SpectrumResult r = epr_sweep(params, config, protocol, config.observe_time, UnitSystem::codata(), workers);
        py::dict out;
        out["field_mK"] = r.field;
        out["chi"] = r.chi;
        out["component_labels"] = r.component_labels;
        out["components"] = r.components;
        out["normalization"] = r.normalization;
        return out;
    }, py::arg("params"), py::arg("config"), py::arg("protocol") = Protocol{}, py::arg("workers") = 1);

    m.def("trepr_surface", [](const ModelParams& params, const SpectrumConfig& config, const Protocol& protocol,
                              const std::vector<double>& times, int workers) {
        const TreprSurface s = trepr_surface(params, config, protocol, times, UnitSystem::codata(), workers);
        py::dict out;
        out["t_ns"] = s.times;
        out["field_mK"] = s.field;
        out["chi"] = s.chi;
        out["normalization"] = s.normalization;
        return out;
    }, py::arg("params"), py::arg("config"), py::arg("protocol"), py::arg("times"), py::arg("workers") = 1);

    m.def("chi_nonstationary", [](const Matrix& l0, const Matrix& a, const Matrix& b, const Matrix& rho_t,
                                  double omega, double epsilon) {
        const int d = static_cast<int>(rho_t.rows());
        return chi_nonstationary(SuperOp(l0, d), make_probe(a, b), rho_t, omega, epsilon).chi;
    }, py::arg("l0"), py::arg("a"), py::arg("b"), py::arg("rho_t"), py::arg("omega"), py::arg("epsilon"),
       "chi(omega+i*eps, t) for a generic Liouvillian matrix; omega/epsilon in rad/ns");

    m.def("kubo_closed", [](const Matrix& h, const Matrix& a, const Matrix& b, const Matrix& rho0,
                            double omega, double epsilon) {
        return kubo_closed(h, make_probe(a, b), rho0, omega, epsilon);
    }, py::arg("h"), py::arg("a"), py::arg("b"), py::arg("rho0"), py::arg("omega"), py::arg("epsilon"));

    m.def("mk_to_rad_per_ns", [] { return UnitSystem::codata().mk_to_rad_per_ns; });

    m.def("run_preset", [](const std::string& name, const std::string& out_dir, const std::string& format, int workers) {
        ExperimentConfig config = preset_config(name);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.format = format;
        if (workers > 0) config.workers = workers;
        return run_experiment(config);
    }, py::arg("name"), py::arg("out_dir") = "", py::arg("format") = "", py::arg("workers") = 0);

    m.def("preset_names", &preset_names);
}
