#include "rtepr/propagate.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace rtepr {

void Protocol::check() const
{
    if (!(t_on_end > 0.0) || !(t_on_end <= t_total)) {
        throw std::invalid_argument("protocol requires 0 < t_on_end <= t_total");
    }
    double prev = -1.0;
    for (double t : sample_times) {
        if (t < 0.0 || t > t_total) {
            throw std::invalid_argument("sample time outside [0, t_total]");
        }
        if (t <= prev) {
            throw std::invalid_argument("sample times must be strictly increasing");
        }
        prev = t;
    }
}

std::vector<double> default_sample_times(double t_on_end, double t_total, int count)
{
    if (count < 2) throw std::invalid_argument("need at least two sample times");
    // Span both the ns-scale pumping window and the us-scale decay.
    const double t_min = std::min(0.05, t_on_end / 10.0);
    std::vector<double> times;
    times.reserve(count + 1);
    const double log_min = std::log(t_min);
    const double log_max = std::log(t_total);
    for (int k = 0; k < count; ++k) {
        times.push_back(std::min(t_total, std::exp(log_min + (log_max - log_min) * k / (count - 1))));
    }
    times.push_back(t_on_end);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                times.end());
    return times;
}

SpectralDecomposition spectral_decompose(const SuperOp& l)
{
    SpectralDecomposition sd;
    Eigen::ComplexEigenSolver<Matrix> solver(l.m);
    if (solver.info() != Eigen::Success) {
        sd.well_conditioned = false;
        return sd;
    }
    sd.eigenvalues = solver.eigenvalues();
    sd.right = solver.eigenvectors();

    Eigen::PartialPivLU<Matrix> lu(sd.right);
    sd.left_t = lu.solve(Matrix::Identity(sd.right.rows(), sd.right.cols()));

    const double norm_v = sd.right.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_vi = sd.left_t.cwiseAbs().colwise().sum().maxCoeff();
    sd.condition = norm_v * norm_vi;

    // Residual of the decomposition itself, relative to the generator scale.
    const double scale = std::max(1.0, l.m.cwiseAbs().maxCoeff());
    const double residual = (l.m * sd.right - sd.right * sd.eigenvalues.asDiagonal()).cwiseAbs().maxCoeff();
    sd.well_conditioned = std::isfinite(sd.condition) && sd.condition < 1e9 && residual < 1e-11 * scale;
    return sd;
}

namespace {

// Dissipative generators have spectra in the closed left half-plane; shave
// off roundoff-level positive real parts so long-time factors cannot blow up.
Vector clamped_eigenvalues(const SpectralDecomposition& sd, double scale)
{
    Vector ev = sd.eigenvalues;
    const double tol = 1e-10 * std::max(1.0, scale);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i).real() > 0.0 && ev(i).real() < tol) {
            ev(i) = Complex(0.0, ev(i).imag());
        }
    }
    return ev;
}

} // namespace

Propagator::Propagator(SuperOp l) : l_(std::move(l))
{
    sd_ = spectral_decompose(l_);
    use_spectral_ = sd_.well_conditioned;
    if (use_spectral_) {
        const double scale = l_.m.cwiseAbs().maxCoeff();
        sd_.eigenvalues = clamped_eigenvalues(sd_, scale);
    }
}

Vector Propagator::apply_vec(const Vector& v, double t) const
{
    if (t < 0.0) throw std::invalid_argument("propagation time must be >= 0");
    if (t == 0.0) return v;
    if (use_spectral_) {
        Vector coeff = sd_.left_t * v;
        for (Eigen::Index i = 0; i < coeff.size(); ++i) {
            coeff(i) *= std::exp(sd_.eigenvalues(i) * t);
        }
        return sd_.right * coeff;
    }
    const Matrix propagator = (l_.m * t).exp();
    return propagator * v;
}

Matrix Propagator::apply(const Matrix& rho, double t) const
{
    const double trace_in = rho.trace().real();
    Matrix out = devectorize(apply_vec(vectorize(rho), t), l_.dim);
    const double drift = std::abs(out.trace().real() - trace_in) + std::abs(out.trace().imag());
    if (drift > 1e-6) {
        throw NumericalFailure("propagation trace drift " + std::to_string(drift) + " at t=" + std::to_string(t));
    }
    return out;
}

Vector expm_multiply(const SuperOp& l, const Vector& v, double t)
{
    if (t < 0.0) throw std::invalid_argument("propagation time must be >= 0");
    if (t == 0.0 || v.norm() == 0.0) return v;

    const double norm1 = l.m.cwiseAbs().colwise().sum().maxCoeff() * t;
    // Sub-stepping keeps the Taylor series short and well conditioned.
    const int steps = std::max(1, static_cast<int>(std::ceil(norm1 / 4.0)));
    const double h = t / steps;

    Vector w = v;
    for (int s = 0; s < steps; ++s) {
        Vector term = w;
        Vector acc = w;
        for (int k = 1; k <= 64; ++k) {
            term = (l.m * term) * (h / k);
            acc += term;
            if (term.norm() <= 1e-16 * acc.norm()) break;
        }
        w = std::move(acc);
    }
    return w;
}

Matrix matrix_exponential_apply(const SuperOp& l, const Matrix& rho, double t)
{
    if (t < 0.0) throw std::invalid_argument("propagation time must be >= 0");
    const double trace_in = rho.trace().real();
    const Matrix propagator = (l.m * t).exp();
    Matrix out = devectorize(propagator * vectorize(rho), l.dim);
    const double drift = std::abs(out.trace().real() - trace_in) + std::abs(out.trace().imag());
    if (drift > 1e-6) {
        throw NumericalFailure("matrix_exponential_apply trace drift " + std::to_string(drift));
    }
    return out;
}

double manifold_population(const Matrix& rho, const StructuredSpace& space, ManifoldLabel label)
{
    const Manifold& m = space.manifold(label);
    return rho.block(m.offset, m.offset, m.dim, m.dim).trace().real();
}

double spin_correlation(const Matrix& rho, const ModelParams& params)
{
    if (params.kind != ModelKind::DRTS) {
        throw std::invalid_argument("spin_correlation is defined for DRTS only");
    }
    const StructuredSpace space = build_space(params.kind);
    const SpinOps half = spin_matrices(0.5);
    Complex value = 0.0;
    for (const Matrix* axis : {&half.sx, &half.sy, &half.sz}) {
        const Matrix s1 = radical_operator(params, space, 1, *axis);
        const Matrix s2 = radical_operator(params, space, 2, *axis);
        value += (s1 * s2 * rho).trace();
    }
    return value.real();
}

Trajectory evolve_protocol(const ModelParams& params, const Protocol& protocol, const UnitSystem& units)
{
    validate(params);
    protocol.check();

    const StructuredSpace space = build_space(params.kind);
    const std::vector<JumpChannel> channels = build_jump_channels(params);
    const SuperOp l_on = liouvillian(build_hamiltonian(params, true), channels, units);
    const SuperOp l_off = liouvillian(build_hamiltonian(params, false), channels, units);

    std::vector<double> times = protocol.sample_times;
    if (times.empty()) {
        times = default_sample_times(protocol.t_on_end, protocol.t_total);
    }

    const Matrix rho0 = initial_state(params);
    const Propagator prop_on(l_on);
    std::optional<Propagator> prop_off;
    std::optional<Matrix> rho_switch;

    Trajectory traj;
    traj.times = times;
    traj.states.reserve(times.size());
    for (double t : times) {
        Matrix rho_t;
        if (t <= protocol.t_on_end) {
            rho_t = prop_on.apply(rho0, t);
        } else {
            if (!prop_off) {
                prop_off.emplace(l_off);
                rho_switch = prop_on.apply(rho0, protocol.t_on_end);
            }
            rho_t = prop_off->apply(*rho_switch, t - protocol.t_on_end);
        }
        traj.pop_gs.push_back(manifold_population(rho_t, space, ManifoldLabel::gs));
        traj.pop_es.push_back(manifold_population(rho_t, space, ManifoldLabel::es));
        traj.pop_t.push_back(manifold_population(rho_t, space, ManifoldLabel::t));
        if (params.kind == ModelKind::DRTS) {
            traj.corr_s1s2.push_back(spin_correlation(rho_t, params));
        }
        traj.states.push_back(std::move(rho_t));
    }
    return traj;
}

} // namespace rtepr
