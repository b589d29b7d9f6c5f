#pragma once

#include <optional>
#include <vector>

#include "rtepr/liouville.hpp"

namespace rtepr {

// Laser-on -> laser-off pumping protocol (times in ns).
struct Protocol {
    double t_on_end = 8.0;
    double t_total = 4000.0;
    std::vector<double> sample_times; // strictly increasing, within [0, t_total]

    void check() const;
};

// Logarithmically spaced samples on (0, t_total], plus the switch time.
std::vector<double> default_sample_times(double t_on_end, double t_total, int count = 200);

// Non-Hermitian eigendecomposition of a superoperator with biorthonormal
// left/right vectors: L = right * diag(eigenvalues) * left_t, left_t * right = I.
struct SpectralDecomposition {
    Vector eigenvalues;
    Matrix right;
    Matrix left_t;
    double condition = 0.0; // 1-norm condition estimate of the eigenvector matrix
    bool well_conditioned = false;
};

SpectralDecomposition spectral_decompose(const SuperOp& l);

// exp(L t) applied through the spectral decomposition when it is reliable,
// otherwise through scaling-and-squaring matrix exponentials. The choice
// depends only on the matrix, so results are reproducible across callers.
class Propagator {
public:
    explicit Propagator(SuperOp l);

    Vector apply_vec(const Vector& v, double t) const;
    // Density-operator path: checks the trace stays within 1e-6 of its start.
    Matrix apply(const Matrix& rho, double t) const;

    bool spectral_path() const { return use_spectral_; }
    const SpectralDecomposition& decomposition() const { return sd_; }
    const SuperOp& generator() const { return l_; }

private:
    SuperOp l_;
    SpectralDecomposition sd_;
    bool use_spectral_ = false;
};

// One-shot exp(L t) rho via scaling-and-squaring; trace drift > 1e-6 throws.
Matrix matrix_exponential_apply(const SuperOp& l, const Matrix& rho, double t);

// exp(L t) v for a single vector via scaled truncated-Taylor evaluation;
// much cheaper than forming the full exponential when ||L t|| is moderate.
Vector expm_multiply(const SuperOp& l, const Vector& v, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;
    // Derived series, aligned with `times`.
    std::vector<double> pop_gs, pop_es, pop_t;
    std::vector<double> corr_s1s2; // empty for SRTS
};

Trajectory evolve_protocol(const ModelParams& params, const Protocol& protocol, const UnitSystem& units);

double manifold_population(const Matrix& rho, const StructuredSpace& space, ManifoldLabel label);

// <s1 . s2> for DRTS states, radical operators lifted across all manifolds.
double spin_correlation(const Matrix& rho, const ModelParams& params);

} // namespace rtepr
