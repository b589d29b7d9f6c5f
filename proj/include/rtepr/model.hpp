#pragma once

#include <string>
#include <vector>

#include "rtepr/spin.hpp"
#include "rtepr/types.hpp"

namespace rtepr {

enum class ModelKind { SRTS, DRTS };

std::string kind_name(ModelKind kind);
ModelKind kind_from_name(const std::string& name);

// Energy/rate unit conversion. All physical inputs are quoted in mK; the
// dynamics runs in rad/ns. The factor is k_B * (1 mK) / hbar expressed per ns,
// computed from the SI constants rather than hard-coded.
struct UnitSystem {
    double mk_to_rad_per_ns;

    static UnitSystem codata();
    double to_internal(double mk) const { return mk * mk_to_rad_per_ns; }
};

// All model parameters in mK (field along z; `zeeman` is mu_B*|B|).
// The *2 rates apply to the second radical and must stay zero for SRTS.
struct ModelParams {
    ModelKind kind = ModelKind::SRTS;
    double g_t = 2.0;
    double g_r = 2.0;
    double zeeman = 200.0;
    double j_exchange = -10.0;
    double d_zfs = 20.0;
    double e_zfs = 3.0;
    double v_laser = 0.67;
    double gamma_radical_flip = 0.067;
    double gamma_radical_dephase = 0.0;
    double gamma_radical2_flip = 0.0;
    double gamma_radical2_dephase = 0.0;
    double gamma_triplet_flip = 67.0;
    double gamma_triplet_dephase = 0.0;
    double gamma_isc = 33.0;
    double gamma_decay = 0.035;

    int radical_count() const { return kind == ModelKind::DRTS ? 2 : 1; }
};

// Baseline parameter set; the DRTS variant relaxes the second radical at the
// same rate as the first.
ModelParams baseline_params(ModelKind kind);

// Throws std::invalid_argument when rates are negative, values non-finite,
// or DRTS-only fields are set for an SRTS model.
void validate(const ModelParams& params);

// SRTS: (gs,es,t) = (2,2,6); DRTS: (4,4,12).
StructuredSpace build_space(ModelKind kind);

// Spin Hamiltonian of the triplet manifold block (6x6 or 12x12), in mK:
//   g_t*zeeman*Sz + g_r*zeeman*sum(sz) + J*S.sum(s) + D*Sz^2 + E*(Sx^2-Sy^2)
Matrix build_spin_hamiltonian(const ModelParams& params);

// Full-space Hamiltonian in mK. gs/es blocks carry the radical Zeeman term
// only (both electronic energies are 0: resonant rotating frame); laser_on
// adds the spin-diagonal gs<->es coupling V.
Matrix build_hamiltonian(const ModelParams& params, bool laser_on);

struct JumpChannel {
    std::string label;
    double rate; // gamma in mK
    Matrix op;   // on the full structured space
};

// Relaxation, inter-system crossing and decay channels with their rates.
std::vector<JumpChannel> build_jump_channels(const ModelParams& params);

// Maximally mixed state over the ground-state manifold.
Matrix initial_state(const ModelParams& params);

// Radical spin operator lifted to the full space (present in every manifold).
// `radical` is 1-based; `op` acts on a single spin-1/2.
Matrix radical_operator(const ModelParams& params, const StructuredSpace& space, int radical, const Matrix& op);

// Triplet spin operator, lifted to the t manifold only.
Matrix triplet_operator(const StructuredSpace& space, const Matrix& op);

} // namespace rtepr
