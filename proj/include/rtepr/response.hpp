#pragma once

#include <string>
#include <vector>

#include "rtepr/propagate.hpp"

namespace rtepr {

// Observable A and perturbation source B (both Hermitian), plus an additive
// decomposition of A used for per-component spectra. The perturbation enters
// the dynamics as the commutator superoperator -i[B, .].
struct Probe {
    Matrix a;
    Matrix b;
    std::vector<std::string> component_labels;
    std::vector<Matrix> components; // sums to `a` exactly

    void check() const;
};

Probe make_probe(const Matrix& a, const Matrix& b);

// Standard EPR probe: A = B = S_x + sum_r s_rx lifted across all manifolds,
// decomposed into the triplet and per-radical contributions.
Probe model_probe(const ModelParams& params);

// chi(omega + i eps, t) = -Tr[ A (L0 + i omega - eps)^(-1) (-i[B, rho_t]) ].
// One linear solve of the shifted superoperator per call; the component
// values replace A by each component operator, so they sum to chi exactly.
// omega and epsilon in rad/ns. The sign/shift convention is pinned by the
// closed-system Kubo limit (see kubo_closed).
struct ChiPoint {
    Complex chi;
    std::vector<Complex> components;
};

ChiPoint chi_nonstationary(const SuperOp& l0, const Probe& probe, const Matrix& rho_t,
                           double omega, double epsilon);

// Stationary-state susceptibility via the adjoint resolvent: one solve of
// (L0^dag - i omega - eps) X = A, then chi = i Tr[X^dag [B, rho0]].
// Requires ||L0 vec(rho0)|| <= stationarity_tol.
Complex chi_stationary(const SuperOp& l0, const Probe& probe, const Matrix& rho0,
                       double omega, double epsilon, double stationarity_tol = 1e-8);

// Closed-system Kubo susceptibility through the eigendecomposition of h:
//   chi = -sum_kl (p_k - p_l) B_kl A_lk / (omega + w_l - w_k + i eps),
// independent of any superoperator machinery. Requires [h, rho0] = 0.
Complex kubo_closed(const Matrix& h, const Probe& probe, const Matrix& rho0,
                    double omega, double epsilon);

// Time-domain response phi(t, tau) = Tr[A e^(L0 tau) (-i[B, rho_t])] on a
// grid of tau >= 0 (ns).
std::vector<Complex> phi_time_domain(const SuperOp& l0, const Probe& probe, const Matrix& rho_t,
                                     const std::vector<double>& tau_grid);

// Field-swept spectrum settings. omega/epsilon are quoted as mK-equivalent
// energies; field_grid lists zeeman values (mu_B B) in mK.
struct SpectrumConfig {
    double omega = 200.0;
    double epsilon = 0.1;
    std::vector<double> field_grid;
    double observe_time = 1.0; // ns
    bool normalize = false;

    void check() const;
};

std::vector<double> uniform_field_grid(double min_mk, double max_mk, int points);

struct SpectrumResult {
    std::vector<double> field;             // mK
    std::vector<Complex> chi;              // per field point
    std::vector<std::string> component_labels;
    std::vector<std::vector<Complex>> components; // [field][component]
    double normalization = 1.0;            // divisor applied when normalized
};

// For each field value: rebuild the model, evolve the initial state through
// the protocol to observe_time, and evaluate the non-stationary response with
// the Liouvillian active at that time. Field points are independent work
// items; `workers` threads produce identical output in input order.
SpectrumResult epr_sweep(const ModelParams& params, const SpectrumConfig& config,
                         const Protocol& protocol, double observe_time,
                         const UnitSystem& units, int workers = 1);

struct TreprSurface {
    std::vector<double> times;   // ns
    std::vector<double> field;   // mK
    std::vector<std::vector<Complex>> chi; // [time][field]
    double normalization = 1.0;
};

// epr_sweep evaluated on a time grid; per-field model data and propagators
// are built once and reused across times, and each row equals the
// corresponding single-time sweep exactly.
TreprSurface trepr_surface(const ModelParams& params, const SpectrumConfig& config,
                           const Protocol& protocol, const std::vector<double>& time_grid,
                           const UnitSystem& units, int workers = 1);

} // namespace rtepr
