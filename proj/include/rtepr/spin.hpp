#pragma once

#include <utility>
#include <vector>

#include "rtepr/types.hpp"

namespace rtepr {

// Angular momentum matrices for a single spin s, in the |s,m> basis ordered
// by decreasing m (index 0 <-> m = +s). Dimensionless, hbar = 1.
struct SpinOps {
    double s;
    Matrix sx, sy, sz;
    Matrix sp, sm; // ladder operators s+ = sx + i sy, s- = (s+)^dagger
};

// Number of magnetic sublevels 2s+1. Rejects s <= 0 or non-half-integer s.
int spin_dim(double s);

SpinOps spin_matrices(double s);

// Kronecker product, row-major block convention: (a x b)(i*p+k, j*q+l) = a(i,j) b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

enum class ManifoldLabel { gs, es, t };

std::string manifold_name(ManifoldLabel label);

struct Manifold {
    ManifoldLabel label;
    std::vector<double> spins; // tensor factors in order
    int dim = 0;               // product of (2s+1)
    int offset = 0;            // first global index of the block
};

// Block-structured Hilbert space: ordered electronic manifolds, each carrying
// a tensor product of spins. Global index = manifold offset + local index.
struct StructuredSpace {
    std::vector<Manifold> manifolds;
    int total_dim = 0;

    bool has(ManifoldLabel label) const;
    const Manifold& manifold(ManifoldLabel label) const;
    int index_of(ManifoldLabel label, int local) const;
};

StructuredSpace make_space(const std::vector<std::pair<ManifoldLabel, std::vector<double>>>& parts);

// Operator acting on one spin factor of a manifold, lifted to the full space:
// identity on the other factors of that manifold, zero on all other manifolds.
Matrix embed(const Matrix& op, const StructuredSpace& space, ManifoldLabel label, int factor);

// Operator on the whole manifold block lifted to the full space.
Matrix embed_block(const Matrix& op, const StructuredSpace& space, ManifoldLabel label);

Matrix manifold_projector(const StructuredSpace& space, ManifoldLabel label);

// Total-spin eigenbasis of a product of spins. Columns of `transform` are the
// coupled states |S,M;k> expressed in the product basis; the basis is built by
// sequential coupling (((s1 x s2) x s3) ...), so multiplets with the same S are
// distinguished by their intermediate-spin path. Ordering: S descending, then
// multiplet index (descending intermediate path), then M descending. Phases
// follow Condon-Shortley: the first nonzero product-basis coefficient of each
// highest-M state is real positive.
struct CoupledBasis {
    struct Label {
        double s_total;
        double m;
        int multiplet; // 1-based among multiplets sharing s_total
    };

    std::vector<double> spins;
    Matrix transform;
    std::vector<Label> labels;

    // Column index of |S,M;k>, or -1 if absent.
    int find(double s_total, double m, int multiplet = 1) const;
    int multiplicity(double s_total) const;
    Vector state(double s_total, double m, int multiplet = 1) const;
};

CoupledBasis couple_to_total_spin(const std::vector<double>& spins);

} // namespace rtepr
