#include "rtepr/model.hpp"

#include <cmath>

namespace rtepr {

std::string kind_name(ModelKind kind)
{
    return kind == ModelKind::SRTS ? "SRTS" : "DRTS";
}

ModelKind kind_from_name(const std::string& name)
{
    if (name == "SRTS") return ModelKind::SRTS;
    if (name == "DRTS") return ModelKind::DRTS;
    throw std::invalid_argument("unknown model kind '" + name + "' (expected SRTS or DRTS)");
}

UnitSystem UnitSystem::codata()
{
    const double k_b = 1.380649e-23;        // J/K (exact, SI 2019)
    const double hbar = 1.054571817e-34;    // J s (CODATA 2018)
    // k_B * 1 mK / hbar, expressed in rad/ns.
    return UnitSystem{k_b * 1e-3 / hbar * 1e-9};
}

ModelParams baseline_params(ModelKind kind)
{
    ModelParams p;
    p.kind = kind;
    if (kind == ModelKind::DRTS) {
        p.gamma_radical2_flip = p.gamma_radical_flip;
        p.gamma_radical2_dephase = p.gamma_radical_dephase;
    }
    return p;
}

void validate(const ModelParams& p)
{
    auto finite = [](double v, const char* name) {
        if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
    };
    finite(p.g_t, "g_t");
    finite(p.g_r, "g_r");
    finite(p.zeeman, "zeeman");
    finite(p.j_exchange, "j_exchange");
    finite(p.d_zfs, "d_zfs");
    finite(p.e_zfs, "e_zfs");
    finite(p.v_laser, "v_laser");

    auto rate = [&finite](double v, const char* name) {
        finite(v, name);
        if (v < 0.0) throw std::invalid_argument(std::string(name) + " must be >= 0");
    };
    rate(p.gamma_radical_flip, "gamma_radical_flip");
    rate(p.gamma_radical_dephase, "gamma_radical_dephase");
    rate(p.gamma_radical2_flip, "gamma_radical2_flip");
    rate(p.gamma_radical2_dephase, "gamma_radical2_dephase");
    rate(p.gamma_triplet_flip, "gamma_triplet_flip");
    rate(p.gamma_triplet_dephase, "gamma_triplet_dephase");
    rate(p.gamma_isc, "gamma_isc");
    rate(p.gamma_decay, "gamma_decay");
}

StructuredSpace build_space(ModelKind kind)
{
    if (kind == ModelKind::SRTS) {
        return make_space({{ManifoldLabel::gs, {0.5}},
                           {ManifoldLabel::es, {0.5}},
                           {ManifoldLabel::t, {1.0, 0.5}}});
    }
    return make_space({{ManifoldLabel::gs, {0.5, 0.5}},
                       {ManifoldLabel::es, {0.5, 0.5}},
                       {ManifoldLabel::t, {1.0, 0.5, 0.5}}});
}

namespace {

// Spin factor index of radical `r` (1-based) within a manifold: the triplet
// occupies factor 0 of the t manifold, so radicals shift by one there.
int radical_factor(ManifoldLabel label, int radical)
{
    return label == ManifoldLabel::t ? radical : radical - 1;
}

// Operator on one factor of the t-manifold block (not lifted to full space).
Matrix t_block_factor(const StructuredSpace& space, int factor, const Matrix& op)
{
    const Manifold& m = space.manifold(ManifoldLabel::t);
    Matrix out;
    for (int k = 0; k < static_cast<int>(m.spins.size()); ++k) {
        const int d = spin_dim(m.spins[k]);
        const Matrix part = (k == factor) ? op : Matrix::Identity(d, d);
        out = (k == 0) ? part : kron(out, part);
    }
    return out;
}

} // namespace

Matrix radical_operator(const ModelParams& params, const StructuredSpace& space, int radical, const Matrix& op)
{
    if (radical < 1 || radical > params.radical_count()) {
        throw std::invalid_argument("model has no radical " + std::to_string(radical));
    }
    Matrix out = Matrix::Zero(space.total_dim, space.total_dim);
    for (const Manifold& m : space.manifolds) {
        out += embed(op, space, m.label, radical_factor(m.label, radical));
    }
    return out;
}

Matrix triplet_operator(const StructuredSpace& space, const Matrix& op)
{
    return embed(op, space, ManifoldLabel::t, 0);
}

Matrix build_spin_hamiltonian(const ModelParams& params)
{
    validate(params);
    const StructuredSpace space = build_space(params.kind);
    const Manifold& tm = space.manifold(ManifoldLabel::t);

    const SpinOps triplet = spin_matrices(1.0);
    const SpinOps half = spin_matrices(0.5);

    const Matrix sz_t = t_block_factor(space, 0, triplet.sz);
    const Matrix sx_t = t_block_factor(space, 0, triplet.sx);
    const Matrix sy_t = t_block_factor(space, 0, triplet.sy);

    Matrix rad_x = Matrix::Zero(tm.dim, tm.dim);
    Matrix rad_y = Matrix::Zero(tm.dim, tm.dim);
    Matrix rad_z = Matrix::Zero(tm.dim, tm.dim);
    for (int r = 1; r <= params.radical_count(); ++r) {
        const int f = radical_factor(ManifoldLabel::t, r);
        rad_x += t_block_factor(space, f, half.sx);
        rad_y += t_block_factor(space, f, half.sy);
        rad_z += t_block_factor(space, f, half.sz);
    }

    Matrix h = params.g_t * params.zeeman * sz_t
             + params.g_r * params.zeeman * rad_z
             + params.j_exchange * (sx_t * rad_x + sy_t * rad_y + sz_t * rad_z)
             + params.d_zfs * sz_t * sz_t
             + params.e_zfs * (sx_t * sx_t - sy_t * sy_t);
    return h;
}

Matrix build_hamiltonian(const ModelParams& params, bool laser_on)
{
    validate(params);
    const StructuredSpace space = build_space(params.kind);
    const SpinOps half = spin_matrices(0.5);

    Matrix h = embed_block(build_spin_hamiltonian(params), space, ManifoldLabel::t);

    // Radical Zeeman on the singlet manifolds (the t block already carries it).
    for (ManifoldLabel label : {ManifoldLabel::gs, ManifoldLabel::es}) {
        for (int r = 1; r <= params.radical_count(); ++r) {
            h += params.g_r * params.zeeman * embed(half.sz, space, label, radical_factor(label, r));
        }
    }

    if (laser_on) {
        // Spin-diagonal dipole coupling V(|es><gs| + |gs><es|).
        const Manifold& gs = space.manifold(ManifoldLabel::gs);
        const Manifold& es = space.manifold(ManifoldLabel::es);
        for (int i = 0; i < gs.dim; ++i) {
            h(es.offset + i, gs.offset + i) += params.v_laser;
            h(gs.offset + i, es.offset + i) += params.v_laser;
        }
    }
    return h;
}

namespace {

std::string half_integer_string(double v)
{
    const int twice = static_cast<int>(std::lround(2.0 * v));
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string coupled_state_name(const CoupledBasis::Label& l, int multiplicity)
{
    std::string name = "S" + half_integer_string(l.s_total) + ".M" + (l.m < 0 ? "-" : "+") + half_integer_string(std::abs(l.m));
    if (multiplicity > 1) name += "." + std::to_string(l.multiplet);
    return name;
}

// Rank-one transfer operator |to(state)> <from(state)| between two manifolds.
Matrix transfer_operator(const StructuredSpace& space, ManifoldLabel to, const Vector& to_state,
                         ManifoldLabel from, const Vector& from_state)
{
    const Manifold& mt = space.manifold(to);
    const Manifold& mf = space.manifold(from);
    Vector ket = Vector::Zero(space.total_dim);
    Vector bra = Vector::Zero(space.total_dim);
    ket.segment(mt.offset, mt.dim) = to_state;
    bra.segment(mf.offset, mf.dim) = from_state;
    return ket * bra.adjoint();
}

} // namespace

std::vector<JumpChannel> build_jump_channels(const ModelParams& params)
{
    validate(params);
    const StructuredSpace space = build_space(params.kind);
    const SpinOps triplet = spin_matrices(1.0);
    const SpinOps half = spin_matrices(0.5);

    std::vector<JumpChannel> channels;

    // Radical spin relaxation: s+, s- with the flip rate, s_z pure dephasing.
    for (int r = 1; r <= params.radical_count(); ++r) {
        const double flip = (r == 1) ? params.gamma_radical_flip : params.gamma_radical2_flip;
        const double dephase = (r == 1) ? params.gamma_radical_dephase : params.gamma_radical2_dephase;
        const std::string prefix = "radical" + std::to_string(r);
        channels.push_back({prefix + ".s_plus", flip, radical_operator(params, space, r, half.sp)});
        channels.push_back({prefix + ".s_minus", flip, radical_operator(params, space, r, half.sm)});
        channels.push_back({prefix + ".s_z", dephase, radical_operator(params, space, r, half.sz)});
    }

    // Triplet relaxation acts on the bare triplet spin inside the t manifold.
    channels.push_back({"triplet.s_plus", params.gamma_triplet_flip, triplet_operator(space, triplet.sp)});
    channels.push_back({"triplet.s_minus", params.gamma_triplet_flip, triplet_operator(space, triplet.sm)});
    channels.push_back({"triplet.s_z", params.gamma_triplet_dephase, triplet_operator(space, triplet.sz)});

    // Spin-conserving inter-system crossing (es -> t) and decay (t -> gs):
    // |S,M;k>_target <S,M|_source over the coupled total-spin bases.
    const CoupledBasis t_basis = couple_to_total_spin(space.manifold(ManifoldLabel::t).spins);
    const CoupledBasis singlet_basis = couple_to_total_spin(space.manifold(ManifoldLabel::es).spins);

    for (const CoupledBasis::Label& sl : singlet_basis.labels) {
        const Vector source = singlet_basis.state(sl.s_total, sl.m, sl.multiplet);
        const int mult = t_basis.multiplicity(sl.s_total);
        // Degenerate target multiplets share one source state; the 1/sqrt(n)
        // weight keeps the total crossing rate of every es state equal to
        // gamma_isc (spin-independent ISC), and makes the channel operators
        // resolve the es projector: sum l^dag l = P_es.
        const double weight = 1.0 / std::sqrt(static_cast<double>(mult));
        for (int k = 1; k <= mult; ++k) {
            const Vector target = t_basis.state(sl.s_total, sl.m, k);
            const std::string state_name = coupled_state_name({sl.s_total, sl.m, k}, mult);
            channels.push_back({"isc." + state_name, params.gamma_isc,
                                weight * transfer_operator(space, ManifoldLabel::t, target, ManifoldLabel::es, source)});
        }
    }
    for (const CoupledBasis::Label& sl : singlet_basis.labels) {
        const Vector gs_state = singlet_basis.state(sl.s_total, sl.m, sl.multiplet);
        const int mult = t_basis.multiplicity(sl.s_total);
        for (int k = 1; k <= mult; ++k) {
            const Vector source = t_basis.state(sl.s_total, sl.m, k);
            const std::string state_name = coupled_state_name({sl.s_total, sl.m, k}, mult);
            channels.push_back({"decay." + state_name, params.gamma_decay,
                                transfer_operator(space, ManifoldLabel::gs, gs_state, ManifoldLabel::t, source)});
        }
    }
    return channels;
}

Matrix initial_state(const ModelParams& params)
{
    validate(params);
    const StructuredSpace space = build_space(params.kind);
    const Manifold& gs = space.manifold(ManifoldLabel::gs);
    return manifold_projector(space, ManifoldLabel::gs) / static_cast<double>(gs.dim);
}

} // namespace rtepr
