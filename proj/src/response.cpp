#include "rtepr/response.hpp"

#include <algorithm>
#include <cmath>

#include "rtepr/parallel.hpp"

namespace rtepr {

void Probe::check() const
{
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("probe operators must be square and equally sized");
    }
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("probe perturbation B must be Hermitian");
    }
    if (!components.empty()) {
        if (components.size() != component_labels.size()) {
            throw std::invalid_argument("probe component labels/operators mismatch");
        }
        Matrix sum = Matrix::Zero(a.rows(), a.cols());
        for (const Matrix& c : components) sum += c;
        if ((sum - a).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
            throw std::invalid_argument("probe components must sum to the observable");
        }
    }
}

Probe make_probe(const Matrix& a, const Matrix& b)
{
    Probe probe;
    probe.a = a;
    probe.b = b;
    probe.component_labels = {"total"};
    probe.components = {a};
    probe.check();
    return probe;
}

Probe model_probe(const ModelParams& params)
{
    const StructuredSpace space = build_space(params.kind);
    const SpinOps half = spin_matrices(0.5);
    const SpinOps one = spin_matrices(1.0);

    Probe probe;
    probe.component_labels.push_back("triplet_sx");
    probe.components.push_back(triplet_operator(space, one.sx));
    for (int r = 1; r <= params.radical_count(); ++r) {
        probe.component_labels.push_back(params.radical_count() == 1 ? "radical_sx" : "radical" + std::to_string(r) + "_sx");
        probe.components.push_back(radical_operator(params, space, r, half.sx));
    }
    probe.a = Matrix::Zero(space.total_dim, space.total_dim);
    for (const Matrix& c : probe.components) probe.a += c;
    probe.b = probe.a;
    probe.check();
    return probe;
}

namespace {

// Solve (m + shift I) x = z with an accuracy contract: relative residual
// <= 1e-10, with iterative refinement before giving up.
Vector shifted_solve(const Matrix& m, Complex shift, const Vector& z)
{
    Matrix shifted = m;
    shifted.diagonal().array() += shift;
    Eigen::PartialPivLU<Matrix> lu(shifted);
    Vector x = lu.solve(z);

    const double z_norm = z.norm();
    if (z_norm == 0.0) return Vector::Zero(z.size());
    for (int pass = 0; pass < 3; ++pass) {
        const Vector residual = z - shifted * x;
        if (residual.norm() <= 1e-10 * z_norm) return x;
        x += lu.solve(residual);
    }
    const double rel = (z - shifted * x).norm() / z_norm;
    if (rel > 1e-10) {
        throw NumericalFailure("resolvent solve residual " + std::to_string(rel) + " exceeds 1e-10 (shift too close to the spectrum?)");
    }
    return x;
}

Matrix commutator_kick(const Matrix& b, const Matrix& rho)
{
    return -I_UNIT * (b * rho - rho * b);
}

} // namespace

ChiPoint chi_nonstationary(const SuperOp& l0, const Probe& probe, const Matrix& rho_t,
                           double omega, double epsilon)
{
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    probe.check();
    if (probe.a.rows() != l0.dim) throw std::invalid_argument("probe dimension does not match Liouvillian");

    const Vector kick = vectorize(commutator_kick(probe.b, rho_t));
    const Vector x = shifted_solve(l0.m, Complex(-epsilon, omega), kick);
    const Matrix evolved = devectorize(x, l0.dim);

    ChiPoint out;
    out.components.reserve(probe.components.size());
    for (const Matrix& c : probe.components) {
        out.components.push_back(-hs_inner(c, evolved));
    }
    if (!out.components.empty()) {
        // Summing the component traces keeps "components add up to chi" exact.
        out.chi = Complex(0.0, 0.0);
        for (const Complex& c : out.components) out.chi += c;
    } else {
        out.chi = -hs_inner(probe.a, evolved);
    }
    return out;
}

Complex chi_stationary(const SuperOp& l0, const Probe& probe, const Matrix& rho0,
                       double omega, double epsilon, double stationarity_tol)
{
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    probe.check();
    const double defect = (l0.m * vectorize(rho0)).norm();
    if (defect > stationarity_tol) {
        throw std::invalid_argument("chi_stationary: state is not stationary (||L rho|| = " + std::to_string(defect) + ")");
    }
    // (L0^dag - i omega - eps) X = A, then the two trace terms of the
    // stationary response share this single resolvent application.
    const Vector y = shifted_solve(l0.m.adjoint(), Complex(-epsilon, -omega), vectorize(probe.a));
    const Matrix x = devectorize(y, l0.dim);
    return I_UNIT * hs_inner(x, probe.b * rho0 - rho0 * probe.b);
}

Complex kubo_closed(const Matrix& h, const Probe& probe, const Matrix& rho0,
                    double omega, double epsilon)
{
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be > 0");
    probe.check();
    const double h_scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * h_scale) {
        throw std::invalid_argument("kubo_closed: hamiltonian must be Hermitian");
    }
    const double rho_scale = std::max(1.0, rho0.cwiseAbs().maxCoeff());
    if ((h * rho0 - rho0 * h).cwiseAbs().maxCoeff() > 1e-9 * h_scale * rho_scale) {
        throw std::invalid_argument("kubo_closed: rho0 must commute with the hamiltonian");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Matrix u = solver.eigenvectors();
    const RealVector energies = solver.eigenvalues();
    const Eigen::Index d = h.rows();

    // Within degenerate clusters rho0 need not come out diagonal; rotate the
    // cluster basis so it does.
    Matrix rho_e = u.adjoint() * rho0 * u;
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && std::abs(energies(end) - energies(start)) < 1e-9 * h_scale) ++end;
        if (end - start > 1) {
            Eigen::SelfAdjointEigenSolver<Matrix> block(rho_e.block(start, start, end - start, end - start));
            u.middleCols(start, end - start) = (u.middleCols(start, end - start) * block.eigenvectors()).eval();
        }
        start = end;
    }
    rho_e = u.adjoint() * rho0 * u;

    const Matrix a_e = u.adjoint() * probe.a * u;
    const Matrix b_e = u.adjoint() * probe.b * u;

    Complex chi = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double dp = rho_e(k, k).real() - rho_e(l, l).real();
            if (dp == 0.0) continue;
            chi -= dp * b_e(k, l) * a_e(l, k) / Complex(omega + energies(l) - energies(k), epsilon);
        }
    }
    return chi;
}

std::vector<Complex> phi_time_domain(const SuperOp& l0, const Probe& probe, const Matrix& rho_t,
                                     const std::vector<double>& tau_grid)
{
    probe.check();
    for (double tau : tau_grid) {
        if (tau < 0.0) throw std::invalid_argument("phi_time_domain requires tau >= 0");
    }
    const Propagator prop(l0);
    const Vector kick = vectorize(commutator_kick(probe.b, rho_t));
    std::vector<Complex> phi;
    phi.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        const Matrix evolved = devectorize(prop.apply_vec(kick, tau), l0.dim);
        phi.push_back(hs_inner(probe.a, evolved));
    }
    return phi;
}

void SpectrumConfig::check() const
{
    if (!(epsilon > 0.0)) throw std::invalid_argument("spectrum epsilon must be > 0");
    if (field_grid.empty()) throw std::invalid_argument("spectrum field grid must be nonempty");
    for (double f : field_grid) {
        if (!std::isfinite(f)) throw std::invalid_argument("spectrum field grid must be finite");
    }
    if (!std::isfinite(omega)) throw std::invalid_argument("spectrum omega must be finite");
    if (!(observe_time >= 0.0)) throw std::invalid_argument("observe_time must be >= 0");
}

std::vector<double> uniform_field_grid(double min_mk, double max_mk, int points)
{
    if (points < 2 || !(max_mk > min_mk)) {
        throw std::invalid_argument("field grid needs at least two points and max > min");
    }
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        grid[i] = min_mk + (max_mk - min_mk) * i / (points - 1);
    }
    return grid;
}

namespace {

// Everything one field point needs. Evolution through a segment uses the
// truncated-Taylor exponential for short propagations and a lazily built
// spectral propagator (shared by all observation times) for long ones; the
// choice depends only on ||L||*t, so sweep and surface rows at the same time
// are computed identically.
struct FieldPoint {
    static constexpr double kTaylorBudget = 600.0;

    ModelParams params;
    SuperOp l_on, l_off;
    double norm_on = 0.0, norm_off = 0.0;
    Probe probe;
    Matrix rho0;
    double t_on_end = 0.0;
    std::optional<Propagator> prop_on;
    std::optional<Propagator> prop_off;
    std::optional<Matrix> rho_switch;

    FieldPoint(const ModelParams& base, double field_mk, const Protocol& protocol, const UnitSystem& units)
    {
        params = base;
        params.zeeman = field_mk;
        const std::vector<JumpChannel> channels = build_jump_channels(params);
        l_on = liouvillian(build_hamiltonian(params, true), channels, units);
        l_off = liouvillian(build_hamiltonian(params, false), channels, units);
        norm_on = l_on.m.cwiseAbs().colwise().sum().maxCoeff();
        norm_off = l_off.m.cwiseAbs().colwise().sum().maxCoeff();
        probe = model_probe(params);
        rho0 = initial_state(params);
        t_on_end = protocol.t_on_end;
    }

    Vector segment_apply(const SuperOp& l, double norm1, std::optional<Propagator>& prop,
                         const Vector& v, double t)
    {
        if (norm1 * t <= kTaylorBudget) return expm_multiply(l, v, t);
        if (!prop) prop.emplace(l);
        return prop->apply_vec(v, t);
    }

    Matrix state_at(double t)
    {
        Vector v;
        if (t <= t_on_end) {
            v = segment_apply(l_on, norm_on, prop_on, vectorize(rho0), t);
        } else {
            if (!rho_switch) {
                rho_switch = devectorize(segment_apply(l_on, norm_on, prop_on, vectorize(rho0), t_on_end), l_on.dim);
            }
            v = segment_apply(l_off, norm_off, prop_off, vectorize(*rho_switch), t - t_on_end);
        }
        Matrix rho_t = devectorize(v, l_on.dim);
        const double drift = std::abs(rho_t.trace().real() - 1.0) + std::abs(rho_t.trace().imag());
        if (drift > 1e-6) {
            throw NumericalFailure("sweep evolution trace drift " + std::to_string(drift));
        }
        return rho_t;
    }

    ChiPoint evaluate(double t, double omega_internal, double epsilon_internal)
    {
        const Matrix rho_t = state_at(t);
        const SuperOp& l0 = (t < t_on_end) ? l_on : l_off;
        return chi_nonstationary(l0, probe, rho_t, omega_internal, epsilon_internal);
    }
};

double max_abs_signal(const std::vector<Complex>& chi)
{
    double peak = 0.0;
    for (const Complex& c : chi) peak = std::max(peak, std::abs(c.imag()));
    return peak;
}

} // namespace

SpectrumResult epr_sweep(const ModelParams& params, const SpectrumConfig& config,
                         const Protocol& protocol, double observe_time,
                         const UnitSystem& units, int workers)
{
    validate(params);
    config.check();
    protocol.check();
    if (observe_time < 0.0 || observe_time > protocol.t_total) {
        throw std::invalid_argument("observe_time outside the protocol window");
    }

    const double omega_internal = units.to_internal(config.omega);
    const double epsilon_internal = units.to_internal(config.epsilon);

    SpectrumResult result;
    result.field = config.field_grid;
    result.chi.resize(config.field_grid.size());
    result.components.resize(config.field_grid.size());
    result.component_labels = model_probe(params).component_labels;

    parallel_for(static_cast<int>(config.field_grid.size()), workers, [&](int i) {
        FieldPoint point(params, config.field_grid[static_cast<size_t>(i)], protocol, units);
        ChiPoint chi = point.evaluate(observe_time, omega_internal, epsilon_internal);
        result.chi[static_cast<size_t>(i)] = chi.chi;
        result.components[static_cast<size_t>(i)] = std::move(chi.components);
    });

    if (config.normalize) {
        const double peak = max_abs_signal(result.chi);
        if (peak > 0.0) {
            result.normalization = peak;
            for (Complex& c : result.chi) c /= peak;
            for (std::vector<Complex>& comps : result.components) {
                for (Complex& c : comps) c /= peak;
            }
        }
    }
    return result;
}

TreprSurface trepr_surface(const ModelParams& params, const SpectrumConfig& config,
                           const Protocol& protocol, const std::vector<double>& time_grid,
                           const UnitSystem& units, int workers)
{
    validate(params);
    config.check();
    protocol.check();
    if (time_grid.empty()) throw std::invalid_argument("trepr_surface needs a nonempty time grid");
    for (double t : time_grid) {
        if (t < 0.0 || t > protocol.t_total) {
            throw std::invalid_argument("trepr time grid outside the protocol window");
        }
    }

    const double omega_internal = units.to_internal(config.omega);
    const double epsilon_internal = units.to_internal(config.epsilon);

    TreprSurface surface;
    surface.times = time_grid;
    surface.field = config.field_grid;
    surface.chi.assign(time_grid.size(), std::vector<Complex>(config.field_grid.size()));

    parallel_for(static_cast<int>(config.field_grid.size()), workers, [&](int i) {
        FieldPoint point(params, config.field_grid[static_cast<size_t>(i)], protocol, units);
        for (size_t row = 0; row < time_grid.size(); ++row) {
            surface.chi[row][static_cast<size_t>(i)] = point.evaluate(time_grid[row], omega_internal, epsilon_internal).chi;
        }
    });

    if (config.normalize) {
        double peak = 0.0;
        for (const auto& row : surface.chi) peak = std::max(peak, max_abs_signal(row));
        if (peak > 0.0) {
            surface.normalization = peak;
            for (auto& row : surface.chi) {
                for (Complex& c : row) c /= peak;
            }
        }
    }
    return surface;
}

} // namespace rtepr
