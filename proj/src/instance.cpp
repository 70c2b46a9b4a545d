#include "semiradius/harness/instance.hpp"

#include <array>
#include <numeric>
#include <utility>

namespace semiradius::harness {

namespace {

constexpr std::array<std::pair<Construction, std::string_view>, 4> construction_names = {{
    {Construction::random, "random"},
    {Construction::nilpotent_half, "nilpotent_half"},
    {Construction::shared_eigenbasis_selfadjoint, "shared_eigenbasis_selfadjoint"},
    {Construction::nonadjointable_probe, "nonadjointable_probe"},
}};

MatrixXcd diag_in_basis(const MatrixXcd& u, const Eigen::VectorXd& d) {
    MatrixXcd m = u * d.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    return (m + m.adjoint()) / 2.0;
}

// eigenvalues in [0.25, 1.25), zero on the first n - r slots
Eigen::VectorXd spread_spectrum(Rng& rng, int n, int r) {
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
    for (int i = n - r; i < n; ++i)
        lam(i) = 0.25 + rng.uniform();
    return lam;
}

Instance gen_random(const InstanceSpec& spec, Rng& rng) {
    const int n = spec.dim, r = spec.rank_a;
    const MatrixXcd g = rng.complex_gaussian_matrix<double>(n, n);
    const auto e = hermitian_eig<double>(MatrixXcd(g * g.adjoint()));
    Eigen::VectorXd lam = e.eigenvalues;
    lam.head(n - r).setZero();
    const MatrixXcd& u = e.eigenvectors;

    // in the eigenbasis the first n - r coordinates span null(A); zeroing the
    // range-row/null-column block keeps null(A) invariant
    MatrixXcd tt = rng.complex_gaussian_matrix<double>(n, n);
    tt.bottomLeftCorner(r, n - r).setZero();
    return {diag_in_basis(u, lam), u * tt * u.adjoint(), {}, {}, {}, {}};
}

// N = [[0, B], [0, 0]] with B of size k x (n - k), k = n / 2. A monomial
// unitary (permutation with phases) carries N to T without creating any
// rounding, so T^2 = 0 holds exactly. null(A) is spanned by the first
// n - r columns of diag(Q, R): inside the first block (which N kills) when
// n - r <= k, otherwise containing it (and range N lies in it). Either way
// null(A) is T-invariant.
Instance gen_nilpotent(const InstanceSpec& spec, Rng& rng) {
    const int n = spec.dim, r = spec.rank_a, k = n / 2;
    MatrixXcd nn = MatrixXcd::Zero(n, n);
    nn.topRightCorner(k, n - k) = rng.complex_gaussian_matrix<double>(k, n - k);

    MatrixXcd u0 = MatrixXcd::Zero(n, n);
    u0.topLeftCorner(k, k) = random_unitary<double>(rng, k);
    u0.bottomRightCorner(n - k, n - k) = random_unitary<double>(rng, n - k);
    const MatrixXcd a0 = diag_in_basis(u0, spread_spectrum(rng, n, r));

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[std::size_t(rng.next_u64() % std::uint64_t(i + 1))]);
    std::vector<std::complex<double>> phase(n);
    for (auto& p : phase)
        p = std::polar(1.0, 2.0 * M_PI * rng.uniform());

    // (P M P*)_{perm[i], perm[j]} = phase_i M_ij conj(phase_j)
    auto conjugate = [&](const MatrixXcd& m) {
        MatrixXcd out(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(perm[i], perm[j]) = m(i, j) == 0.0 ? std::complex<double>(0) : phase[i] * m(i, j) * std::conj(phase[j]);
        return out;
    };
    const MatrixXcd ap = conjugate(a0);
    const MatrixXcd a = (ap + ap.adjoint()) / 2.0;
    return {a, conjugate(nn), {}, {}, {}, {}};
}

Instance gen_shared(const InstanceSpec& spec, Rng& rng) {
    const int n = spec.dim, r = spec.rank_a;
    const MatrixXcd u = random_unitary<double>(rng, n);
    const Eigen::VectorXd lam = spread_spectrum(rng, n, r);
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i)
        mu(i) = rng.gaussian();
    return {diag_in_basis(u, lam), diag_in_basis(u, mu), {}, {}, {}, {}};
}

Instance gen_probe(const InstanceSpec& spec, Rng& rng) {
    const int n = spec.dim, r = spec.rank_a;
    const MatrixXcd u = random_unitary<double>(rng, n);
    const MatrixXcd a = diag_in_basis(u, spread_spectrum(rng, n, r));
    const auto ctx = psd_decompose<double>(a);
    for (int attempt = 0; attempt < probe_retry_budget; ++attempt) {
        MatrixXcd t = rng.complex_gaussian_matrix<double>(n, n);
        if (!is_adjointable(*ctx, t))
            return {a, std::move(t), {}, {}, {}, {}};
    }
    throw Error(ErrorKind::invalid_argument, "nonadjointable_probe: no non-adjointable T within " +
                                                 std::to_string(probe_retry_budget) + " attempts");
}

} // namespace

std::string_view to_string(Construction c) {
    for (const auto& [k, name] : construction_names)
        if (k == c)
            return name;
    return "unknown";
}

std::optional<Construction> parse_construction(std::string_view name) {
    for (const auto& [k, n] : construction_names)
        if (n == name)
            return k;
    return std::nullopt;
}

void InstanceSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::invalid_argument, msg); };
    if (dim < 2 || dim > 64)
        fail("dim must lie in 2..64, got " + std::to_string(dim));
    if (rank_a < 0 || rank_a > dim)
        fail("rank_a must lie in 0..dim, got " + std::to_string(rank_a));
    if (construction == Construction::nonadjointable_probe && rank_a >= dim)
        fail("nonadjointable_probe needs rank_a < dim");
    if (!std::isfinite(scale) || scale <= 0)
        fail("scale must be positive and finite");
}

Instance gen_instance(const InstanceSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Instance inst;
    switch (spec.construction) {
    case Construction::random:
        inst = gen_random(spec, rng);
        break;
    case Construction::nilpotent_half:
        inst = gen_nilpotent(spec, rng);
        break;
    case Construction::shared_eigenbasis_selfadjoint:
        inst = gen_shared(spec, rng);
        break;
    case Construction::nonadjointable_probe:
        inst = gen_probe(spec, rng);
        break;
    }
    if (spec.scale != 1.0) {
        inst.a *= spec.scale;
        inst.t *= spec.scale;
    }
    inst.spec = spec;
    return inst;
}

MatrixXcd random_adjointable(Rng& rng, const PsdContext<double>& ctx) {
    const Eigen::Index n = ctx.dim, k = n - ctx.rank;
    MatrixXcd tt = rng.complex_gaussian_matrix<double>(n, n);
    tt.bottomLeftCorner(ctx.rank, k).setZero();
    const MatrixXcd& u = ctx.eig.eigenvectors;
    return u * tt * u.adjoint();
}

void add_companions(Instance& inst, const PsdContext<double>& ctx, std::uint64_t seed) {
    Rng rng(seed);
    inst.x = random_adjointable(rng, ctx);
    inst.y = random_adjointable(rng, ctx);
    inst.s = random_adjointable(rng, ctx);
}

} // namespace semiradius::harness
