#pragma once

#include <vector>

#include "rtepr/model.hpp"
#include "rtepr/types.hpp"

namespace rtepr {

// One global vectorization convention, tagged on every superoperator so that
// mixing can be rejected where superoperators are combined.
enum class VecConvention { ColumnStacking };

// vec(X)[j*d + i] = X(i, j): column stacking.
Vector vectorize(const Matrix& op);
Matrix devectorize(const Vector& v, int dim);

// Hilbert-Schmidt scalar product Tr[a^dagger b].
Complex hs_inner(const Matrix& a, const Matrix& b);

// d^2 x d^2 matrix acting on vectorized operators.
struct SuperOp {
    Matrix m;
    int dim = 0; // Hilbert-space dimension d
    VecConvention conv = VecConvention::ColumnStacking;

    SuperOp() = default;
    SuperOp(Matrix mat, int hilbert_dim, VecConvention c = VecConvention::ColumnStacking);

    SuperOp& operator+=(const SuperOp& other);
    friend SuperOp operator+(SuperOp a, const SuperOp& b) { return a += b; }
};

// X -> a*X and X -> X*a as Liouville-space matrices.
Matrix left_mult(const Matrix& a);
Matrix right_mult(const Matrix& a);

// rho -> -i [h, rho]. `h` must be Hermitian, in rad/ns (hbar = 1).
SuperOp hamiltonian_superop(const Matrix& h);

// rho -> rate * ( l rho l^dag - 1/2 {rho, l^dag l} ), rate in 1/ns.
SuperOp dissipator(const Matrix& l, double rate_per_ns);
SuperOp dissipator(const JumpChannel& channel, const UnitSystem& units);

// Full Lindblad generator: commutator part plus all jump dissipators.
// Hamiltonian and rates in mK; this is the single mK -> rad/ns boundary.
SuperOp liouvillian(const Matrix& h_mk, const std::vector<JumpChannel>& channels, const UnitSystem& units);

// Adjoint with respect to the Hilbert-Schmidt product: the ordinary matrix
// conjugate transpose of the d^2 x d^2 representation.
SuperOp adjoint(const SuperOp& l);

} // namespace rtepr
