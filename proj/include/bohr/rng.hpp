#pragma once

#include <cmath>
#include <cstdint>

#include "bohr/eig.hpp"

namespace bohr {

// splitmix64 finalizer. Any implementation reproduces the stream from the
// same 64-bit state sequence.
inline std::uint64_t splitmix64_avalanche(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Per-trial seed derivation: avalanche of (master XOR trial * golden gamma).
// Trials are independent streams; reports are reproducible without shared
// generator state.
inline std::uint64_t per_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64_avalanche(master_seed ^ (trial_index * 0x9E3779B97F4A7C15ull));
}

// Deterministic splitmix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_avalanche(state_);
    }

    // Uniform in [0, 1) with 53 bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Box-Muller standard normal (pairs cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    cplx complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

enum class MatrixKind { General, Hermitian, Psd, PositiveWithBounds, Unitary };

namespace detail {

inline ComplexMatrix general_from_stream(std::size_t dim, SplitMix64& rng, double scale) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = cplx{rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    return m;
}

// Modified Gram-Schmidt on Gaussian columns, one re-orthogonalization pass.
inline ComplexMatrix unitary_from_stream(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix q(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::vector<cplx> v(dim);
        for (int attempt = 0;; ++attempt) {
            for (std::size_t i = 0; i < dim; ++i) v[i] = rng.complex_normal();
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < col; ++k) {
                    cplx proj{0.0, 0.0};
                    for (std::size_t i = 0; i < dim; ++i) proj += std::conj(q(i, k)) * v[i];
                    for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q(i, k);
                }
            }
            double norm = 0.0;
            for (const cplx& z : v) norm += std::norm(z);
            norm = std::sqrt(norm);
            if (norm > 1e-8 || attempt > 64) {
                for (std::size_t i = 0; i < dim; ++i) q(i, col) = v[i] / norm;
                break;
            }
        }
    }
    return q;
}

inline ComplexMatrix random_matrix_from_stream(MatrixKind kind, std::size_t dim,
                                               SplitMix64& rng, double scale, double lo,
                                               double hi, const Tolerance& tol) {
    switch (kind) {
    case MatrixKind::General:
        return general_from_stream(dim, rng, scale);
    case MatrixKind::Hermitian:
        return hermitian_part(general_from_stream(dim, rng, scale));
    case MatrixKind::Psd: {
        const ComplexMatrix g = general_from_stream(dim, rng, 1.0);
        ComplexMatrix p = abs_squared(g);
        const double norm = norm2_hermitian(p, tol);
        return norm > 0.0 ? (scale / norm) * p : p;
    }
    case MatrixKind::PositiveWithBounds: {
        if (!(lo > 0.0) || !(hi >= lo))
            throw BadParam("random_matrix: positive_with_bounds needs 0 < m <= M");
        const ComplexMatrix u = unitary_from_stream(dim, rng);
        std::vector<double> d(dim);
        for (double& x : d) x = rng.uniform(lo, hi);
        ComplexMatrix m(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                cplx acc{0.0, 0.0};
                for (std::size_t k = 0; k < dim; ++k)
                    acc += u(i, k) * d[k] * std::conj(u(j, k));
                m(i, j) = acc;
            }
        return hermitian_part(m);
    }
    case MatrixKind::Unitary:
        return unitary_from_stream(dim, rng);
    }
    throw BadParam("random_matrix: unknown kind");
}

} // namespace detail

// Deterministic random matrix drawn from an existing stream: general entries
// bounded by scale, hermitian the Hermitian part of a general draw, psd a
// normalized Gram square G*G with spectral norm = scale, positive_with_bounds
// a rotated uniform spectrum in [m, M], unitary a Gram-Schmidt
// orthonormalization.
inline ComplexMatrix random_matrix(MatrixKind kind, std::size_t dim, SplitMix64& stream,
                                   double scale = 1.0, double lo = 0.0, double hi = 0.0,
                                   const Tolerance& tol = {}) {
    if (dim == 0) throw BadParam("random_matrix: dim must be >= 1");
    if (!(scale > 0.0)) throw BadParam("random_matrix: scale must be positive");
    return detail::random_matrix_from_stream(kind, dim, stream, scale, lo, hi, tol);
}

// Same, from a fresh stream seeded with `seed`.
inline ComplexMatrix random_matrix(MatrixKind kind, std::size_t dim, std::uint64_t seed,
                                   double scale = 1.0, double lo = 0.0, double hi = 0.0,
                                   const Tolerance& tol = {}) {
    SplitMix64 rng(seed);
    return random_matrix(kind, dim, rng, scale, lo, hi, tol);
}

} // namespace bohr
