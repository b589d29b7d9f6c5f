#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "rtepr/propagate.hpp"
#include "test_helpers.hpp"

using namespace rtepr;
using rtepr::testing::max_abs;

namespace {

// Fixed-step RK4 on d(vec rho)/dt = L vec(rho); the independent integrator
// oracle for the exponential propagators.
Vector rk4_evolve(const Matrix& l, Vector v, double t_final, double dt)
{
    double t = 0.0;
    while (t < t_final - 1e-12) {
        const double h = std::min(dt, t_final - t);
        const Vector k1 = l * v;
        const Vector k2 = l * (v + 0.5 * h * k1);
        const Vector k3 = l * (v + 0.5 * h * k2);
        const Vector k4 = l * (v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return v;
}

SpinOps half()
{
    return spin_matrices(0.5);
}

} // namespace

TEST_CASE("matrix_exponential_apply: zero generator leaves the state alone")
{
    const SuperOp l(Matrix::Zero(4, 4), 2);
    const Matrix rho = (Matrix(2, 2) << 0.7, 0.1, 0.1, 0.3).finished();
    CHECK(max_abs(matrix_exponential_apply(l, rho, 3.7) - rho) == 0.0);
}

TEST_CASE("matrix_exponential_apply: Larmor precession")
{
    const double w0 = 4.2;
    const SpinOps s = half();
    const SuperOp l = hamiltonian_superop(w0 * s.sz);
    Matrix rho0(2, 2);
    rho0 << 0.5, 0.5, 0.5, 0.5; // |+x><+x|

    const double period = 2.0 * M_PI / w0;
    for (int k = 0; k <= 20; ++k) {
        const double t = k * period / 2.1;
        const Matrix rho_t = matrix_exponential_apply(l, rho0, t);
        const double sx_t = (s.sx * rho_t).trace().real();
        CHECK(std::abs(sx_t - 0.5 * std::cos(w0 * t)) < 1e-9);
    }
}

TEST_CASE("matrix_exponential_apply: amplitude damping")
{
    const double gamma = 0.8;
    const SuperOp l = dissipator(half().sm, gamma);
    Matrix rho0 = Matrix::Zero(2, 2);
    rho0(0, 0) = 1.0; // excited (m = +1/2)

    for (int k = 0; k <= 10; ++k) {
        const double t = k * (1.0 / gamma);
        const Matrix rho_t = matrix_exponential_apply(l, rho0, t);
        CHECK(std::abs(rho_t(0, 0).real() - std::exp(-gamma * t)) < 1e-9);
        CHECK(std::abs(rho_t(1, 1).real() - (1.0 - std::exp(-gamma * t))) < 1e-9);
    }
}

TEST_CASE("matrix_exponential_apply: trace drift is an error")
{
    // A generator that shrinks the trace on purpose.
    const SuperOp bad(-0.5 * Matrix::Identity(4, 4), 2);
    const Matrix rho = 0.5 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(matrix_exponential_apply(bad, rho, 1.0), NumericalFailure);
}

TEST_CASE("propagator: semigroup property within a segment")
{
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::SRTS);
    const SuperOp l = liouvillian(build_hamiltonian(params, true), build_jump_channels(params), units);
    const Propagator prop(l);

    const Matrix rho0 = initial_state(params);
    const Matrix one_shot = prop.apply(rho0, 5.5);
    const Matrix two_step = prop.apply(prop.apply(rho0, 2.25), 3.25);
    CHECK(max_abs(one_shot - two_step) < 1e-9);
}

TEST_CASE("propagator: spectral path agrees with scaling-and-squaring")
{
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::SRTS);
    const SuperOp l = liouvillian(build_hamiltonian(params, false), build_jump_channels(params), units);
    const Propagator prop(l);
    CHECK(prop.spectral_path());

    const Matrix rho0 = initial_state(params);
    for (double t : {0.1, 1.0, 10.0}) {
        const Matrix via_spectral = prop.apply(rho0, t);
        const Matrix via_expm = matrix_exponential_apply(l, rho0, t);
        CHECK(max_abs(via_spectral - via_expm) < 1e-8);
    }
}

TEST_CASE("spectral_decompose: diagonal generators and the stationary mode")
{
    Matrix d = Matrix::Zero(4, 4);
    d.diagonal() << Complex(-1.0, 2.0), Complex(-2.0, 0.0), Complex(-0.5, -1.0), Complex(0.0, 0.0);
    const SpectralDecomposition sd = spectral_decompose(SuperOp(d, 2));
    CHECK(sd.well_conditioned);
    std::vector<double> got, want;
    for (int i = 0; i < 4; ++i) {
        got.push_back(sd.eigenvalues(i).real());
        want.push_back(d(i, i).real());
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 4; ++i) CHECK(got[static_cast<size_t>(i)] == doctest::Approx(want[static_cast<size_t>(i)]));

    // SRTS baseline, laser off: exactly one stationary mode.
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::SRTS);
    const SuperOp l = liouvillian(build_hamiltonian(params, false), build_jump_channels(params), units);
    const SpectralDecomposition lsd = spectral_decompose(l);
    REQUIRE(lsd.well_conditioned);
    int zero_modes = 0;
    for (Eigen::Index i = 0; i < lsd.eigenvalues.size(); ++i) {
        if (std::abs(lsd.eigenvalues(i)) < 1e-8) ++zero_modes;
    }
    CHECK(zero_modes == 1);

    // Reconstruction against the matrix exponential at t = 10 ns.
    const Matrix direct = (l.m * 10.0).exp();
    Vector phases(lsd.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(lsd.eigenvalues(i) * 10.0);
    const Matrix rebuilt = lsd.right * phases.asDiagonal() * lsd.left_t;
    CHECK(max_abs(rebuilt - direct) <= 1e-8);
}

TEST_CASE("expm_multiply: matches the full matrix exponential")
{
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::SRTS);
    const SuperOp l = liouvillian(build_hamiltonian(params, true), build_jump_channels(params), units);
    const Vector v = vectorize(initial_state(params));
    for (double t : {0.05, 1.0, 4.0}) {
        const Vector direct = (l.m * t).exp() * v;
        const Vector taylor = expm_multiply(l, v, t);
        CHECK((direct - taylor).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK((expm_multiply(l, v, 0.0) - v).norm() == 0.0);
}

TEST_CASE("propagator: RK4 integrator oracle")
{
    const UnitSystem units = UnitSystem::codata();
    ModelParams params = baseline_params(ModelKind::SRTS);
    const SuperOp l = liouvillian(build_hamiltonian(params, true), build_jump_channels(params), units);

    const Matrix rho0 = initial_state(params);
    const Vector direct = vectorize(matrix_exponential_apply(l, rho0, 10.0));
    const Vector integrated = rk4_evolve(l.m, vectorize(rho0), 10.0, 1e-3);
    CHECK((direct - integrated).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("evolve_protocol: physical state along the trajectory")
{
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::SRTS);
    Protocol protocol;
    protocol.sample_times = default_sample_times(protocol.t_on_end, protocol.t_total, 60);

    const Trajectory traj = evolve_protocol(params, protocol, units);
    REQUIRE(traj.states.size() == protocol.sample_times.size());
    for (size_t i = 0; i < traj.states.size(); ++i) {
        const Matrix& rho = traj.states[i];
        CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-9);
        CHECK(max_abs(rho - rho.adjoint()) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
        CHECK(traj.pop_gs[i] + traj.pop_es[i] + traj.pop_t[i] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("evolve_protocol: frozen pumping when all transfer terms vanish")
{
    const UnitSystem units = UnitSystem::codata();
    ModelParams params = baseline_params(ModelKind::SRTS);
    params.v_laser = 0.0;
    params.gamma_isc = 0.0;
    params.gamma_decay = 0.0;

    Protocol protocol;
    protocol.sample_times = {0.5, 4.0, 8.0, 100.0, 4000.0};
    const Trajectory traj = evolve_protocol(params, protocol, units);
    for (double pop : traj.pop_gs) CHECK(pop == doctest::Approx(1.0).epsilon(1e-10));
    for (double pop : traj.pop_t) CHECK(std::abs(pop) < 1e-10);
}

TEST_CASE("manifold decoupling: no exchange, no transfer")
{
    // J = 0 and no ISC/decay: the t block evolves independently of gs/es,
    // so manifold populations are conserved even with the laser running.
    const UnitSystem units = UnitSystem::codata();
    ModelParams params = baseline_params(ModelKind::SRTS);
    params.j_exchange = 0.0;
    params.gamma_isc = 0.0;
    params.gamma_decay = 0.0;
    params.v_laser = 1.0;

    const StructuredSpace space = build_space(params.kind);
    const SuperOp l = liouvillian(build_hamiltonian(params, true), build_jump_channels(params), units);
    const Propagator prop(l);

    Matrix rho0 = 0.5 * initial_state(params) + 0.5 / 6.0 * manifold_projector(space, ManifoldLabel::t);
    for (double t : {0.3, 2.0, 9.0, 50.0}) {
        const Matrix rho_t = prop.apply(rho0, t);
        CHECK(std::abs(manifold_population(rho_t, space, ManifoldLabel::t) - 0.5) < 1e-10);
        const double singlet = manifold_population(rho_t, space, ManifoldLabel::gs)
                             + manifold_population(rho_t, space, ManifoldLabel::es);
        CHECK(std::abs(singlet - 0.5) < 1e-10);
    }
}

TEST_CASE("spin_correlation: reference states")
{
    const ModelParams params = baseline_params(ModelKind::DRTS);
    const StructuredSpace space = build_space(params.kind);

    CHECK(spin_correlation(initial_state(params), params) == doctest::Approx(0.0).epsilon(1e-12));

    // Pure radical singlet / triplet in the gs manifold.
    const CoupledBasis pair = couple_to_total_spin({0.5, 0.5});
    for (auto [s_tot, m, expected] : {std::tuple<double, double, double>{0.0, 0.0, -0.75},
                                      std::tuple<double, double, double>{1.0, 1.0, 0.25}}) {
        Vector state = Vector::Zero(space.total_dim);
        state.segment(0, 4) = pair.state(s_tot, m);
        const Matrix rho = state * state.adjoint();
        CHECK(spin_correlation(rho, params) == doctest::Approx(expected).epsilon(1e-12));
    }

    CHECK_THROWS_AS(spin_correlation(initial_state(baseline_params(ModelKind::SRTS)), baseline_params(ModelKind::SRTS)),
                    std::invalid_argument);
}

TEST_CASE("DRTS trapping: quintet holds more than its statistical share")
{
    const UnitSystem units = UnitSystem::codata();
    const ModelParams params = baseline_params(ModelKind::DRTS);
    Protocol protocol;
    protocol.sample_times = {protocol.t_total};
    const Trajectory traj = evolve_protocol(params, protocol, units);

    const StructuredSpace space = build_space(params.kind);
    const CoupledBasis basis = couple_to_total_spin(space.manifold(ManifoldLabel::t).spins);
    Matrix quintet = Matrix::Zero(12, 12);
    for (double m = -2.0; m <= 2.0; m += 1.0) {
        const Vector v = basis.state(2.0, m);
        quintet += v * v.adjoint();
    }
    const Matrix p_quintet = embed_block(quintet, space, ManifoldLabel::t);

    const Matrix& rho = traj.states.back();
    const double t_pop = manifold_population(rho, space, ManifoldLabel::t);
    const double quintet_pop = (p_quintet * rho).trace().real();
    REQUIRE(t_pop > 0.0);
    // Statistical share of the quintet inside the 12-dim t manifold is 5/12.
    CHECK(quintet_pop / t_pop > 5.0 / 12.0);
}

TEST_CASE("default_sample_times: ordered, bounded, includes the switch")
{
    const std::vector<double> times = default_sample_times(8.0, 4000.0, 200);
    CHECK(times.size() >= 200);
    CHECK(std::is_sorted(times.begin(), times.end()));
    CHECK(times.front() > 0.0);
    CHECK(times.back() == doctest::Approx(4000.0));
    CHECK(std::find(times.begin(), times.end(), 8.0) != times.end());
}

TEST_CASE("protocol validation")
{
    Protocol p;
    p.t_on_end = 0.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = Protocol{};
    p.sample_times = {1.0, 1.0};
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = Protocol{};
    p.sample_times = {1.0, 5000.0};
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
}
