#include "rtepr/liouville.hpp"

namespace rtepr {

Vector vectorize(const Matrix& op)
{
    if (op.rows() != op.cols()) {
        throw std::invalid_argument("vectorize expects a square operator");
    }
    // Eigen matrices are column-major, so the flat view is the column stack.
    return Eigen::Map<const Vector>(op.data(), op.size());
}

Matrix devectorize(const Vector& v, int dim)
{
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("devectorize: vector length does not match dimension");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Complex hs_inner(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return (a.adjoint() * b).trace();
}

SuperOp::SuperOp(Matrix mat, int hilbert_dim, VecConvention c) : m(std::move(mat)), dim(hilbert_dim), conv(c)
{
    if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(dim) * dim) {
        throw std::invalid_argument("superoperator matrix must be d^2 x d^2");
    }
}

SuperOp& SuperOp::operator+=(const SuperOp& other)
{
    if (dim != other.dim || conv != other.conv) {
        throw std::invalid_argument("cannot combine superoperators with different spaces or vectorization conventions");
    }
    m += other.m;
    return *this;
}

Matrix left_mult(const Matrix& a)
{
    // kron(I, a): block diagonal copies of a.
    const Eigen::Index d = a.rows();
    Matrix out = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.block(i * d, i * d, d, d) = a;
    }
    return out;
}

Matrix right_mult(const Matrix& a)
{
    // kron(a^T, I): entry a(j, i) on the diagonal of block (i, j).
    const Eigen::Index d = a.rows();
    Matrix out = Matrix::Zero(d * d, d * d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const Complex v = a(j, i);
            if (v == Complex(0.0, 0.0)) continue;
            for (Eigen::Index k = 0; k < d; ++k) {
                out(i * d + k, j * d + k) = v;
            }
        }
    }
    return out;
}

SuperOp hamiltonian_superop(const Matrix& h)
{
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hamiltonian must be square");
    }
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (defect > 1e-10 * scale) {
        throw std::invalid_argument("hamiltonian_superop: input is not Hermitian");
    }
    const int d = static_cast<int>(h.rows());
    return SuperOp(-I_UNIT * (left_mult(h) - right_mult(h)), d);
}

SuperOp dissipator(const Matrix& l, double rate_per_ns)
{
    if (rate_per_ns < 0.0) {
        throw std::invalid_argument("dissipator rate must be >= 0");
    }
    const int d = static_cast<int>(l.rows());
    const Matrix ldl = l.adjoint() * l;
    // vec(L rho L^dag) = (conj(L) x L) vec(rho) under column stacking.
    Matrix m = kron(l.conjugate(), l);
    m -= 0.5 * left_mult(ldl);
    m -= 0.5 * right_mult(ldl);
    return SuperOp(rate_per_ns * m, d);
}

SuperOp dissipator(const JumpChannel& channel, const UnitSystem& units)
{
    return dissipator(channel.op, units.to_internal(channel.rate));
}

SuperOp liouvillian(const Matrix& h_mk, const std::vector<JumpChannel>& channels, const UnitSystem& units)
{
    SuperOp l = hamiltonian_superop(units.to_internal(1.0) * h_mk);
    for (const JumpChannel& c : channels) {
        if (c.rate == 0.0) continue; // zero-rate channels contribute nothing
        l += dissipator(c, units);
    }
    return l;
}

SuperOp adjoint(const SuperOp& l)
{
    return SuperOp(l.m.adjoint(), l.dim, l.conv);
}

} // namespace rtepr
