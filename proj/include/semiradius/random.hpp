#pragma once
//
// Seeded sampling. The generator is std::mt19937_64; Gaussians come from the
// Box-Muller transform of 53-bit uniforms so the stream depends only on the
// seed, not on the standard library's distribution implementations.
//

#include "semiradius/core_linalg.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace semiradius {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// uniform on (0, 1)
    double uniform() {
        double u;
        do {
            u = double(engine_() >> 11) * 0x1.0p-53;
        } while (u == 0.0);
        return u;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    /// standard complex Gaussian, E|z|^2 = 1
    template <typename Real> Complex<Real> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {Real(re * std::numbers::sqrt2 / 2), Real(im * std::numbers::sqrt2 / 2)};
    }

    template <typename Real> Vector<Real> complex_gaussian_vector(Eigen::Index n) {
        Vector<Real> v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = complex_gaussian<Real>();
        return v;
    }

    /// filled column by column
    template <typename Real> Matrix<Real> complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        Matrix<Real> m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i)
                m(i, j) = complex_gaussian<Real>();
        return m;
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
template <typename Real> Matrix<Real> random_unitary(Rng& rng, Eigen::Index n) {
    const Matrix<Real> g = rng.complex_gaussian_matrix<Real>(n, n);
    Eigen::HouseholderQR<Matrix<Real>> qr(g);
    Matrix<Real> q = qr.householderQ() * Matrix<Real>::Identity(n, n);
    const Matrix<Real>& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex<Real> d = r(j, j);
        const Real mag = std::abs(d);
        if (mag > Real(0))
            q.col(j) *= d / mag;
    }
    return q;
}

} // namespace semiradius
