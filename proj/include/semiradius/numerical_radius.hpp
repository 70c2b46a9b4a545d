#pragma once
//
// A-numerical radius.
//
// w_A(T) = sup_theta f(theta), f(theta) = ||Re_A(e^{i theta} T)||_A.
//
// f is evaluated on the compressed operator C = L^{1/2} U_r* T U_r L^{-1/2}:
// Re_A(e^{i theta} T) compresses to the Hermitian (e^{i theta} C + e^{-i theta} C*)/2,
// so f(theta) is the largest eigenvalue magnitude of an r x r Hermitian matrix.
// f has period pi.
//
// Enclosure. f is the supremum of rectified cosinusoids r_x |cos(theta + phi_x)|,
// so on a cell of width h the supremum exceeds the larger endpoint value by at
// most a factor 1 / cos(h / 2). A uniform grid therefore yields
// upper = grid_max / cos(pi / (2 N)). With refinement enabled, cells whose bound
// is above the best value seen are bisected (best first) until every remaining
// cell bound is within a relative 1e-12 of it or the evaluation budget runs out.
// Both ends are finally widened by a few r * eps to cover eigenvalue rounding.
//

#include "semiradius/random.hpp"
#include "semiradius/semi_hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace semiradius {

enum class RadiusMethod { theta_scan, sampling };

inline const char* to_string(RadiusMethod m) {
    return m == RadiusMethod::theta_scan ? "theta_scan" : "sampling";
}

template <typename Real> struct RadiusEstimate {
    Real lower = 0;
    Real upper = 0;
    Real theta_star = 0; // in [0, pi)
    int grid_n = 0;
    RadiusMethod method = RadiusMethod::theta_scan;
    bool refined = false;
    std::int64_t evaluations = 0;

    Real width() const { return upper - lower; }
    bool contains(Real w) const { return lower <= w && w <= upper; }
};

template <typename Real> struct SamplingResult {
    Real value = 0;
    std::int64_t accepted = 0;
    bool degenerate = false; // rank(A) == 0
};

template <typename Real> struct RangeCloud {
    std::vector<Complex<Real>> points;
    std::vector<Real> thetas; // NaN for interior (sampled) points
    std::size_t boundary_count = 0;
};

template <typename Real> struct DiskTestResult {
    bool is_disk = false;
    Real radius_k = 0;
    Real max_deviation = 0;
};

namespace detail {

template <typename Real> void require_adjointable(const AOperator<Real>& op) {
    if (!op.adjointable || !op.ctx)
        throw Error(ErrorKind::not_adjointable, "operator has no A-adjoint");
}

inline double wrap_pi(double theta) {
    double t = std::fmod(theta, std::numbers::pi);
    if (t < 0)
        t += std::numbers::pi;
    if (t >= std::numbers::pi)
        t = 0;
    return t;
}

} // namespace detail

/// f(theta) = ||Re_A(e^{i theta} T)||_A via the compressed operator.
template <typename Real> Real support_norm(const Matrix<Real>& compressed, Real theta) {
    if (compressed.size() == 0)
        return Real(0);
    const Complex<Real> e = std::polar(Real(1), theta);
    const Matrix<Real> h = (e * compressed + std::conj(e) * compressed.adjoint()) / Real(2);
    return hermitian_abs_max<Real>(h);
}

template <typename Real> Real support_norm(const AOperator<Real>& op, Real theta) {
    return support_norm<Real>(op.compressed, theta);
}

/// Same quantity through the uncompressed definition; slower, used as a cross-check.
template <typename Real> Real support_norm_direct(const AOperator<Real>& op, Real theta) {
    const Matrix<Real> rotated = std::polar(Real(1), theta) * op.t;
    return a_seminorm(*op.ctx, re_a(*op.ctx, rotated));
}

template <typename Real>
RadiusEstimate<Real> radius_theta_scan(const AOperator<Real>& op, int grid_n = 720, bool refine = true) {
    detail::require_adjointable(op);
    if (grid_n < 4)
        throw Error(ErrorKind::invalid_argument, "grid_n must be at least 4");

    const Real pi = std::numbers::pi_v<Real>;
    RadiusEstimate<Real> est;
    est.grid_n = grid_n;
    est.method = RadiusMethod::theta_scan;
    est.refined = refine;
    if (op.compressed.size() == 0)
        return est;

    std::int64_t evals = 0;
    auto f = [&](Real theta) {
        ++evals;
        return support_norm<Real>(op.compressed, theta);
    };

    const int n = grid_n;
    std::vector<Real> values(n);
    for (int j = 0; j < n; ++j)
        values[j] = f(Real(j) * pi / Real(n));

    int arg = 0;
    for (int j = 1; j < n; ++j)
        if (values[j] > values[arg])
            arg = j;
    Real lower = values[arg];
    Real theta_star = Real(arg) * pi / Real(n);

    // grid certificate, tightened over the nested dyadic subgrids so that
    // doubling grid_n can never loosen it
    Real cert = lower / std::cos(pi / Real(2 * n));
    for (int stride = 2, m = n / 2; n % stride == 0 && m >= 4; stride *= 2, m /= 2) {
        Real sub = 0;
        for (int j = 0; j < n; j += stride)
            sub = std::max(sub, values[j]);
        cert = std::min(cert, sub / std::cos(pi / Real(2 * m)));
        if (m % 2 != 0)
            break;
    }
    Real upper = cert;

    if (refine) {
        // golden-section search inside one grid cell on either side of the argmax
        const Real step = pi / Real(n);
        Real a = theta_star - step, b = theta_star + step;
        const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
        Real c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
        Real fc = f(c), fd = f(d);
        for (int it = 0; it < 200 && (b - a) > Real(1e-13); ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = f(d);
            }
        }
        const Real t_best = fc >= fd ? c : d;
        const Real f_best = std::max(fc, fd);
        if (f_best > lower) {
            lower = f_best;
            theta_star = Real(detail::wrap_pi(double(t_best)));
        }

        // best-first bisection of cells whose bound exceeds the best value
        struct Cell {
            Real a, b, fa, fb, bound;
            bool operator<(const Cell& o) const { return bound < o.bound; }
        };
        std::priority_queue<Cell> heap;
        for (int j = 0; j < n; ++j) {
            const Real fa = values[j], fb = values[(j + 1) % n];
            const Real h = pi / Real(n);
            const Real bound = std::min(cert, std::max(fa, fb) / std::cos(h / Real(2)));
            heap.push({Real(j) * h, Real(j + 1) * h, fa, fb, bound});
        }
        const Real rel_target = Real(1e-12);
        const std::int64_t budget = evals + std::int64_t(16) * n;
        while (!heap.empty()) {
            const Cell top = heap.top();
            if (top.bound <= lower * (Real(1) + rel_target) || evals >= budget)
                break;
            heap.pop();
            const Real mid = (top.a + top.b) / Real(2);
            const Real fm = f(mid);
            if (fm > lower) {
                lower = fm;
                theta_star = Real(detail::wrap_pi(double(mid)));
            }
            const Real half = (top.b - top.a) / Real(2);
            const Real c4 = std::cos(half / Real(2));
            heap.push({top.a, mid, top.fa, fm, std::min(top.bound, std::max(top.fa, fm) / c4)});
            heap.push({mid, top.b, fm, top.fb, std::min(top.bound, std::max(fm, top.fb) / c4)});
        }
        upper = heap.empty() ? lower : std::min(cert, heap.top().bound);
    }

    // eigenvalue rounding: a few r * eps relative on either side
    const Real slop = Real(8) * Real(op.compressed.rows() + 1) * std::numeric_limits<Real>::epsilon();
    est.lower = lower * (Real(1) - slop);
    est.upper = std::max(upper, lower) * (Real(1) + slop);
    est.theta_star = theta_star;
    est.evaluations = evals;
    return est;
}

///
/// Monte-Carlo lower oracle for w_A(T). Draws are complex Gaussian vectors
/// projected onto range(A) and whitened by (A^{1/2})^+ (uniform directions in
/// the A-geometry); draws with ||x||_A < 1e-8 sqrt(lambda_max) are rejected.
/// Evaluates <Tx, x>_A from A and T directly, not from the compressed form.
///
template <typename Real>
SamplingResult<Real> radius_sampling(const AOperator<Real>& op, std::int64_t n_samples, std::uint64_t seed) {
    detail::require_adjointable(op);
    const auto& ctx = *op.ctx;
    SamplingResult<Real> res;
    if (ctx.rank == 0) {
        res.degenerate = true;
        return res;
    }
    Rng rng(seed);
    const Matrix<Real> at = ctx.a * op.t;
    const Real reject = Real(1e-8) * std::sqrt(ctx.lambda_max);
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const Vector<Real> g = rng.complex_gaussian_vector<Real>(ctx.dim);
        const Vector<Real> x = ctx.pinv_sqrt_a * (ctx.proj * g);
        const Real q = std::real(x.dot(ctx.a * x));
        if (!(q > Real(0)) || std::sqrt(q) < reject)
            continue;
        const Real v = std::abs(x.dot(at * x)) / q;
        res.value = std::max(res.value, v);
        ++res.accepted;
    }
    return res;
}

///
/// Points of W_A(T): one support point per direction theta_j = 2 pi j / n_theta,
/// followed by `n_interior` sampled points.
///
template <typename Real>
RangeCloud<Real> range_cloud(const AOperator<Real>& op, int n_theta, std::uint64_t seed, int n_interior = -1) {
    detail::require_adjointable(op);
    const auto& ctx = *op.ctx;
    if (ctx.rank == 0)
        throw Error(ErrorKind::rank_zero, "W_A(T) is empty when A = 0");
    if (n_theta < 1)
        throw Error(ErrorKind::invalid_argument, "n_theta must be positive");
    if (n_interior < 0)
        n_interior = n_theta;

    const Real pi = std::numbers::pi_v<Real>;
    RangeCloud<Real> cloud;
    const Matrix<Real> at = ctx.a * op.t;
    const Matrix<Real>& ur = ctx.range_basis;
    for (int j = 0; j < n_theta; ++j) {
        const Real theta = Real(2) * pi * Real(j) / Real(n_theta);
        const Complex<Real> e = std::polar(Real(1), theta);
        const Matrix<Real> h = (e * at + std::conj(e) * at.adjoint()) / Real(2);
        const Matrix<Real> m = ctx.pinv_sqrt_a * h * ctx.pinv_sqrt_a;
        const Matrix<Real> mr = hermitian_part<Real>(Matrix<Real>(ur.adjoint() * m * ur));
        Eigen::SelfAdjointEigenSolver<Matrix<Real>> es(mr);
        const Vector<Real> y = ur * es.eigenvectors().col(mr.rows() - 1);
        Vector<Real> x = ctx.pinv_sqrt_a * y;
        x /= a_norm_vec(ctx, x);
        cloud.points.push_back(x.dot(at * x));
        cloud.thetas.push_back(theta);
    }
    cloud.boundary_count = cloud.points.size();

    Rng rng(seed);
    const Real reject = Real(1e-8) * std::sqrt(ctx.lambda_max);
    int emitted = 0;
    for (int guard = 0; emitted < n_interior && guard < 100 * n_interior + 100; ++guard) {
        const Vector<Real> g = rng.complex_gaussian_vector<Real>(ctx.dim);
        Vector<Real> x = ctx.pinv_sqrt_a * (ctx.proj * g);
        const Real nx = a_norm_vec(ctx, x);
        if (!(nx >= reject) || nx == Real(0))
            continue;
        x /= nx;
        cloud.points.push_back(x.dot(at * x));
        cloud.thetas.push_back(std::numeric_limits<Real>::quiet_NaN());
        ++emitted;
    }
    return cloud;
}

/// Constant support function <=> W_A(T) is a disk centred at 0.
template <typename Real> DiskTestResult<Real> disk_test(const AOperator<Real>& op, int n_theta = 360) {
    detail::require_adjointable(op);
    if (n_theta < 8)
        throw Error(ErrorKind::invalid_argument, "n_theta must be at least 8");
    const Real pi = std::numbers::pi_v<Real>;
    std::vector<Real> f(n_theta);
    Real sum = 0;
    for (int j = 0; j < n_theta; ++j) {
        f[j] = support_norm(op, Real(j) * pi / Real(n_theta));
        sum += f[j];
    }
    DiskTestResult<Real> res;
    res.radius_k = sum / Real(n_theta);
    for (Real v : f)
        res.max_deviation = std::max(res.max_deviation, std::abs(v - res.radius_k));
    const Real scale = std::max(res.radius_k, op.ctx->lambda_max);
    res.is_disk = res.max_deviation <= op.ctx->tol.equality_rel_tol * scale;
    return res;
}

} // namespace semiradius
