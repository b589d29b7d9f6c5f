#include "rtepr/spin.hpp"

#include <algorithm>
#include <cmath>

namespace rtepr {

namespace {

bool is_half_integer(double s)
{
    const double twice = 2.0 * s;
    return std::abs(twice - std::round(twice)) < 1e-9;
}

} // namespace

int spin_dim(double s)
{
    if (s <= 0.0 || !is_half_integer(s)) {
        throw std::invalid_argument("spin quantum number must be a positive half-integer, got " + std::to_string(s));
    }
    return static_cast<int>(std::lround(2.0 * s)) + 1;
}

SpinOps spin_matrices(double s)
{
    const int d = spin_dim(s);
    SpinOps ops;
    ops.s = s;
    ops.sz = Matrix::Zero(d, d);
    ops.sp = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = s - k; // basis ordered by decreasing m
        ops.sz(k, k) = m;
        if (k > 0) {
            // <m+1| s+ |m> = sqrt(s(s+1) - m(m+1))
            ops.sp(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
        }
    }
    ops.sm = ops.sp.adjoint();
    ops.sx = 0.5 * (ops.sp + ops.sm);
    ops.sy = -0.5 * I_UNIT * (ops.sp - ops.sm);
    return ops;
}

Matrix kron(const Matrix& a, const Matrix& b)
{
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    Matrix out(ar * br, ac * bc);
    // Column-major fill, indexing out directly: noticeably faster than
    // assigning scaled blocks when this runs per jump channel.
    for (Eigen::Index j = 0; j < ac; ++j) {
        for (Eigen::Index l = 0; l < bc; ++l) {
            const Eigen::Index col = j * bc + l;
            for (Eigen::Index i = 0; i < ar; ++i) {
                const Complex aij = a(i, j);
                if (aij == Complex(0.0, 0.0)) {
                    out.col(col).segment(i * br, br).setZero();
                    continue;
                }
                for (Eigen::Index k = 0; k < br; ++k) {
                    out(i * br + k, col) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

std::string manifold_name(ManifoldLabel label)
{
    switch (label) {
    case ManifoldLabel::gs: return "gs";
    case ManifoldLabel::es: return "es";
    case ManifoldLabel::t: return "t";
    }
    throw std::logic_error("unreachable manifold label");
}

bool StructuredSpace::has(ManifoldLabel label) const
{
    return std::any_of(manifolds.begin(), manifolds.end(),
                       [label](const Manifold& m) { return m.label == label; });
}

const Manifold& StructuredSpace::manifold(ManifoldLabel label) const
{
    for (const Manifold& m : manifolds) {
        if (m.label == label) return m;
    }
    throw std::invalid_argument("space has no manifold '" + manifold_name(label) + "'");
}

int StructuredSpace::index_of(ManifoldLabel label, int local) const
{
    const Manifold& m = manifold(label);
    if (local < 0 || local >= m.dim) {
        throw std::out_of_range("local index " + std::to_string(local) + " outside manifold '" + manifold_name(label) + "'");
    }
    return m.offset + local;
}

StructuredSpace make_space(const std::vector<std::pair<ManifoldLabel, std::vector<double>>>& parts)
{
    StructuredSpace space;
    int offset = 0;
    for (const auto& [label, spins] : parts) {
        Manifold m;
        m.label = label;
        m.spins = spins;
        m.dim = 1;
        for (double s : spins) m.dim *= spin_dim(s);
        m.offset = offset;
        offset += m.dim;
        space.manifolds.push_back(std::move(m));
    }
    space.total_dim = offset;
    return space;
}

Matrix embed(const Matrix& op, const StructuredSpace& space, ManifoldLabel label, int factor)
{
    const Manifold& m = space.manifold(label);
    if (factor < 0 || factor >= static_cast<int>(m.spins.size())) {
        throw std::invalid_argument("manifold '" + manifold_name(label) + "' has no spin factor " + std::to_string(factor));
    }
    const int fd = spin_dim(m.spins[factor]);
    if (op.rows() != fd || op.cols() != fd) {
        throw std::invalid_argument("operator dimension " + std::to_string(op.rows()) + " does not match spin factor dimension " + std::to_string(fd));
    }
    int pre = 1, post = 1;
    for (int k = 0; k < factor; ++k) pre *= spin_dim(m.spins[k]);
    for (int k = factor + 1; k < static_cast<int>(m.spins.size()); ++k) post *= spin_dim(m.spins[k]);

    Matrix block = kron(kron(Matrix::Identity(pre, pre), op), Matrix::Identity(post, post));
    return embed_block(block, space, label);
}

Matrix embed_block(const Matrix& op, const StructuredSpace& space, ManifoldLabel label)
{
    const Manifold& m = space.manifold(label);
    if (op.rows() != m.dim || op.cols() != m.dim) {
        throw std::invalid_argument("block dimension " + std::to_string(op.rows()) + " does not match manifold dimension " + std::to_string(m.dim));
    }
    Matrix out = Matrix::Zero(space.total_dim, space.total_dim);
    out.block(m.offset, m.offset, m.dim, m.dim) = op;
    return out;
}

Matrix manifold_projector(const StructuredSpace& space, ManifoldLabel label)
{
    const Manifold& m = space.manifold(label);
    return embed_block(Matrix::Identity(m.dim, m.dim), space, label);
}

namespace {

// One irreducible multiplet under construction: states |S,M> for M = S..-S
// as vectors in the accumulated product space, plus the intermediate-spin
// path that identifies it.
struct BuildMultiplet {
    double s;
    std::vector<Vector> states; // index k <-> M = s - k
    std::vector<double> path;
};

double condon_shortley_fix(Vector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) {
            const Complex phase = v(i) / std::abs(v(i));
            v /= phase;
            return std::abs(v(i));
        }
    }
    throw std::logic_error("coupled state vector is numerically zero");
}

} // namespace

int CoupledBasis::find(double s_total, double m, int multiplet) const
{
    for (size_t i = 0; i < labels.size(); ++i) {
        if (std::abs(labels[i].s_total - s_total) < 1e-9 && std::abs(labels[i].m - m) < 1e-9
            && labels[i].multiplet == multiplet) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

int CoupledBasis::multiplicity(double s_total) const
{
    int count = 0;
    for (const Label& l : labels) {
        if (std::abs(l.s_total - s_total) < 1e-9 && std::abs(l.m - s_total) < 1e-9) ++count;
    }
    return count;
}

Vector CoupledBasis::state(double s_total, double m, int multiplet) const
{
    const int col = find(s_total, m, multiplet);
    if (col < 0) {
        throw std::invalid_argument("no coupled state S=" + std::to_string(s_total) + " M=" + std::to_string(m) + " k=" + std::to_string(multiplet));
    }
    return transform.col(col);
}

CoupledBasis couple_to_total_spin(const std::vector<double>& spins)
{
    if (spins.empty()) {
        throw std::invalid_argument("couple_to_total_spin needs at least one spin");
    }

    // Seed with the first spin.
    std::vector<BuildMultiplet> multiplets;
    {
        const int d0 = spin_dim(spins[0]);
        BuildMultiplet m0;
        m0.s = spins[0];
        m0.path = {spins[0]};
        for (int k = 0; k < d0; ++k) m0.states.push_back(Vector::Unit(d0, k));
        multiplets.push_back(std::move(m0));
    }
    int dim = spin_dim(spins[0]);
    Matrix lowering = spin_matrices(spins[0]).sm;

    for (size_t idx = 1; idx < spins.size(); ++idx) {
        const double s2 = spins[idx];
        const int d2 = spin_dim(s2);
        const int new_dim = dim * d2;
        const SpinOps ops2 = spin_matrices(s2);
        const Matrix new_lowering = kron(lowering, Matrix::Identity(d2, d2)) + kron(Matrix::Identity(dim, dim), ops2.sm);

        std::vector<BuildMultiplet> next;
        for (const BuildMultiplet& parent : multiplets) {
            const double j1 = parent.s;
            // Product states |j1,m1> x |s2,m2> lifted to the new space.
            auto product_state = [&](int m1_idx, int m2_idx) {
                Vector v = Vector::Zero(new_dim);
                const Vector& p = parent.states[m1_idx];
                for (Eigen::Index r = 0; r < p.size(); ++r) {
                    v(r * d2 + m2_idx) = p(r);
                }
                return v;
            };

            std::vector<BuildMultiplet> children; // J descending within this coupling
            for (double J = j1 + s2; J >= std::abs(j1 - s2) - 1e-9; J -= 1.0) {
                BuildMultiplet child;
                child.s = J;
                child.path = parent.path;
                child.path.push_back(J);

                Vector top;
                if (std::abs(J - (j1 + s2)) < 1e-9) {
                    top = product_state(0, 0); // stretched state
                } else {
                    // Highest-weight state of J: in the M = J sector, orthogonal
                    // to the descendants of all higher-J children of this coupling.
                    // Candidate basis: |j1,m1>|s2,J-m1>.
                    std::vector<Vector> sector;
                    for (int m1_idx = 0; m1_idx < static_cast<int>(parent.states.size()); ++m1_idx) {
                        const double m1 = j1 - m1_idx;
                        const double m2 = J - m1;
                        if (m2 < -s2 - 1e-9 || m2 > s2 + 1e-9) continue;
                        const int m2_idx = static_cast<int>(std::lround(s2 - m2));
                        sector.push_back(product_state(m1_idx, m2_idx));
                    }
                    // Pick the candidate with the largest residual after
                    // projecting out the already-built multiplets (deterministic).
                    Vector best;
                    double best_norm = -1.0;
                    for (const Vector& cand : sector) {
                        Vector r = cand;
                        for (const BuildMultiplet& built : children) {
                            const int k = static_cast<int>(std::lround(built.s - J));
                            const Vector& u = built.states[k];
                            r -= u * u.dot(r);
                        }
                        const double n = r.norm();
                        if (n > best_norm + 1e-12) {
                            best_norm = n;
                            best = r;
                        }
                    }
                    if (best_norm < 1e-8) {
                        throw std::logic_error("failed to construct highest-weight state in spin coupling");
                    }
                    top = best / best.norm();
                }
                condon_shortley_fix(top);

                child.states.push_back(top);
                const int nm = static_cast<int>(std::lround(2.0 * J)) + 1; // J = 0 is a valid total spin
                for (int k = 1; k < nm; ++k) {
                    const double m = J - (k - 1);
                    const double c = std::sqrt(J * (J + 1.0) - m * (m - 1.0));
                    Vector nextv = (new_lowering * child.states.back()) / c;
                    child.states.push_back(std::move(nextv));
                }
                children.push_back(std::move(child));
            }
            for (BuildMultiplet& c : children) next.push_back(std::move(c));
        }
        multiplets = std::move(next);
        dim = new_dim;
        lowering = new_lowering;
    }

    // Order: S descending, then intermediate path descending, then M descending.
    std::sort(multiplets.begin(), multiplets.end(), [](const BuildMultiplet& a, const BuildMultiplet& b) {
        if (std::abs(a.s - b.s) > 1e-9) return a.s > b.s;
        return a.path > b.path;
    });

    CoupledBasis basis;
    basis.spins = spins;
    basis.transform = Matrix::Zero(dim, dim);
    int col = 0;
    double last_s = -1.0;
    int k_index = 0;
    for (BuildMultiplet& m : multiplets) {
        if (std::abs(m.s - last_s) > 1e-9) {
            last_s = m.s;
            k_index = 1;
        } else {
            ++k_index;
        }
        // Final global-phase pass: Condon-Shortley on the highest-M state,
        // same phase applied to the whole multiplet.
        Vector& top = m.states[0];
        Complex phase{1.0, 0.0};
        for (Eigen::Index i = 0; i < top.size(); ++i) {
            if (std::abs(top(i)) > 1e-9) {
                phase = top(i) / std::abs(top(i));
                break;
            }
        }
        for (size_t k = 0; k < m.states.size(); ++k) {
            basis.transform.col(col) = m.states[k] / phase;
            basis.labels.push_back({m.s, m.s - static_cast<double>(k), k_index});
            ++col;
        }
    }
    if (col != dim) {
        throw std::logic_error("coupled basis does not span the product space");
    }
    return basis;
}

} // namespace rtepr
