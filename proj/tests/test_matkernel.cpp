#include "helpers.hpp"

using namespace bohr;
using bohr::testing::max_entry_diff;
using bohr::testing::random_general;
using bohr::testing::random_hermitian;
using bohr::testing::random_unitary;
using bohr::testing::real_matrix;

TEST_CASE("matrix arithmetic basics") {
    SECTION("adjoint conjugates") {
        ComplexMatrix m(1, 1, {cplx{0.0, 1.0}});
        const ComplexMatrix adj = m.adjoint();
        REQUIRE(adj(0, 0) == cplx{0.0, -1.0});
    }
    SECTION("identity is neutral") {
        const ComplexMatrix a = random_general(3, 7);
        REQUIRE(max_entry_diff(a * ComplexMatrix::identity(3), a) == 0.0);
    }
    SECTION("hand multiply") {
        const ComplexMatrix a = real_matrix({{1, 1}, {0, 1}});
        const ComplexMatrix b = real_matrix({{1, 0}, {1, 1}});
        REQUIRE(max_entry_diff(a * b, real_matrix({{2, 1}, {1, 1}})) == 0.0);
    }
    SECTION("shape mismatch throws") {
        const ComplexMatrix a(2, 3), b(2, 3);
        REQUIRE_THROWS_AS(a * b, ShapeError);
        REQUIRE_THROWS_AS(a + b.transpose(), ShapeError);
    }
    SECTION("non-finite entries rejected") {
        REQUIRE_THROWS_AS(ComplexMatrix(1, 1, {cplx{std::nan(""), 0.0}}), BadParam);
    }
}

TEST_CASE("herm_eig on closed-form matrices") {
    SECTION("symmetric flip") {
        const HermitianEig eig = herm_eig(real_matrix({{0, 1}, {1, 0}}));
        REQUIRE(eig.eigenvalues[0] == Catch::Approx(1.0).margin(1e-13));
        REQUIRE(eig.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-13));
    }
    SECTION("diagonal input sorts descending") {
        const HermitianEig eig = herm_eig(ComplexMatrix::diagonal({4.0, 9.0}));
        REQUIRE(eig.eigenvalues[0] == 9.0);
        REQUIRE(eig.eigenvalues[1] == 4.0);
        // vectors are the permuted identity
        REQUIRE(std::abs(eig.vectors(1, 0)) == Catch::Approx(1.0));
        REQUIRE(std::abs(eig.vectors(0, 1)) == Catch::Approx(1.0));
    }
    SECTION("non-square rejected") {
        REQUIRE_THROWS_AS(herm_eig(ComplexMatrix(2, 3)), ShapeError);
    }
    SECTION("asymmetry beyond tolerance rejected") {
        REQUIRE_THROWS_AS(herm_eig(real_matrix({{0, 1}, {0, 0}})), NotHermitian);
    }
}

TEST_CASE("herm_eig reconstruction and unitarity") {
    for (std::size_t dim = 1; dim <= 8; ++dim) {
        for (std::uint64_t seed = 1; seed <= 25; ++seed) {
            const ComplexMatrix h = random_hermitian(dim, seed * 31 + dim, 2.0);
            const HermitianEig eig = herm_eig(h);
            const double bound = 1e-12 * std::max(eig.norm2(), 1.0);

            const ComplexMatrix gram_u = eig.vectors.adjoint() * eig.vectors;
            REQUIRE(max_entry_diff(gram_u, ComplexMatrix::identity(dim)) <= bound);

            const ComplexMatrix rebuilt =
                eig.vectors * ComplexMatrix::diagonal(eig.eigenvalues) * eig.vectors.adjoint();
            REQUIRE(max_entry_diff(rebuilt, h) <= bound);

            for (std::size_t k = 0; k + 1 < dim; ++k)
                REQUIRE(eig.eigenvalues[k] >= eig.eigenvalues[k + 1]);
        }
    }
}

TEST_CASE("herm_eig on stressed spectra") {
    SECTION("clustered eigenvalues") {
        const ComplexMatrix u = random_unitary(4, 77);
        const std::vector<double> lam{1.0 + 1e-12, 1.0, 1.0 - 1e-12, 1.0};
        const ComplexMatrix h =
            hermitian_part(u * ComplexMatrix::diagonal(lam) * u.adjoint());
        const HermitianEig eig = herm_eig(h);
        const ComplexMatrix rebuilt =
            eig.vectors * ComplexMatrix::diagonal(eig.eigenvalues) * eig.vectors.adjoint();
        REQUIRE(max_entry_diff(rebuilt, h) <= 1e-12);
        REQUIRE(max_entry_diff(eig.vectors.adjoint() * eig.vectors,
                               ComplexMatrix::identity(4)) <= 1e-12);
    }
    SECTION("extreme scales") {
        for (double scale : {1e-8, 1e8}) {
            const ComplexMatrix h = random_hermitian(5, 13, scale);
            const HermitianEig eig = herm_eig(h);
            const ComplexMatrix rebuilt =
                eig.vectors * ComplexMatrix::diagonal(eig.eigenvalues) * eig.vectors.adjoint();
            REQUIRE(max_entry_diff(rebuilt, h) <= 1e-12 * std::max(eig.norm2(), 1e-30));
        }
    }
    SECTION("rank deficiency") {
        // gram of a single vector has rank one; the zero eigenvalues come out
        // clean and the PSD clamp holds
        ComplexMatrix g(5, 5);
        SplitMix64 rng(3);
        std::vector<cplx> v(5);
        for (cplx& z : v) z = rng.complex_normal();
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) g(i, j) = v[i] * std::conj(v[j]);
        const HermitianEig eig = herm_eig(hermitian_part(g));
        for (std::size_t k = 1; k < 5; ++k)
            REQUIRE(std::abs(eig.eigenvalues[k]) <= 1e-12 * eig.norm2());
    }
    SECTION("zero matrix") {
        const HermitianEig eig = herm_eig(ComplexMatrix(3, 3));
        REQUIRE(eig.eigenvalues == std::vector<double>{0.0, 0.0, 0.0});
        REQUIRE(max_entry_diff(eig.vectors, ComplexMatrix::identity(3)) == 0.0);
    }
}

TEST_CASE("func_calculus") {
    SECTION("diagonal powers") {
        const ComplexMatrix sq =
            func_calculus(ComplexMatrix::diagonal({1.0, 2.0}), ScalarFunction::power(2.0));
        REQUIRE(max_entry_diff(sq, ComplexMatrix::diagonal({1.0, 4.0})) < 1e-13);
        const ComplexMatrix rt =
            func_calculus(ComplexMatrix::diagonal({4.0, 9.0}), ScalarFunction::power(0.5));
        REQUIRE(max_entry_diff(rt, ComplexMatrix::diagonal({2.0, 3.0})) < 1e-13);
    }
    SECTION("square equals direct multiply") {
        const ComplexMatrix h = real_matrix({{2, 1}, {1, 2}});
        const ComplexMatrix via_calc = func_calculus(h, ScalarFunction::power(2.0));
        REQUIRE(max_entry_diff(via_calc, h * h) < 1e-13);
        REQUIRE(max_entry_diff(via_calc, real_matrix({{5, 4}, {4, 5}})) < 1e-13);
    }
    SECTION("polynomial agrees with Horner matrix polynomial") {
        const std::vector<double> coeffs{0.5, -1.0, 2.0, 0.25};
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ComplexMatrix h = random_hermitian(5, seed, 1.5);
            const ComplexMatrix via_calc =
                func_calculus(h, ScalarFunction::polynomial(coeffs));
            ComplexMatrix horner(5, 5);
            for (std::size_t i = coeffs.size(); i-- > 0;)
                horner = horner * h + coeffs[i] * ComplexMatrix::identity(5);
            REQUIRE(max_entry_diff(via_calc, horner) < 1e-11);
        }
    }
    SECTION("unitary equivariance") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const ComplexMatrix h = random_hermitian(4, seed, 1.0);
            const ComplexMatrix u = random_unitary(4, seed + 100);
            const ScalarFunction f = ScalarFunction::abs_power(1.5);
            const ComplexMatrix lhs = func_calculus(u.adjoint() * h * u, f);
            const ComplexMatrix rhs = u.adjoint() * func_calculus(h, f) * u;
            REQUIRE(max_entry_diff(lhs, rhs) < 1e-11);
        }
    }
    SECTION("domain errors") {
        const ComplexMatrix indefinite = ComplexMatrix::diagonal({1.0, -1.0});
        REQUIRE_THROWS_AS(func_calculus(indefinite, ScalarFunction::power(0.5)), DomainError);
        REQUIRE_THROWS_AS(func_calculus(indefinite, ScalarFunction::power(-1.0)), DomainError);
        REQUIRE_THROWS_AS(
            func_calculus(ComplexMatrix::diagonal({0.0, 1.0}), ScalarFunction::power(-2.0)),
            DomainError);
        // integer powers accept indefinite spectra
        REQUIRE_NOTHROW(func_calculus(indefinite, ScalarFunction::power(3.0)));
    }
    SECTION("small negatives clamp under fractional powers") {
        const ComplexMatrix nearly_psd = ComplexMatrix::diagonal({1.0, -1e-12});
        const ComplexMatrix rt = func_calculus(nearly_psd, ScalarFunction::power(0.5));
        REQUIRE(rt(1, 1).real() == 0.0);
    }
}

TEST_CASE("abs_op") {
    SECTION("nilpotent shift") {
        const ComplexMatrix c = real_matrix({{0, 1}, {0, 0}});
        REQUIRE(max_entry_diff(abs_op(c), ComplexMatrix::diagonal({0.0, 1.0})) < 1e-13);
    }
    SECTION("PSD fixed point and sign flip") {
        const ComplexMatrix p = bohr::testing::random_psd(4, 11);
        REQUIRE(max_entry_diff(abs_op(p), p) < 1e-11);
        const ComplexMatrix id = ComplexMatrix::identity(3);
        REQUIRE(max_entry_diff(abs_op(-1.0 * id), id) < 1e-13);
    }
    SECTION("abs squared reproduces C*C, square and rectangular") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const std::size_t rows = 2 + seed % 7, cols = 1 + seed % (rows);
            ComplexMatrix c(rows, cols);
            SplitMix64 rng(seed);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j)
                    c(i, j) = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const ComplexMatrix r = abs_op(c);
            const double scale = std::max(1.0, norm2_hermitian(abs_squared(c)));
            REQUIRE(max_entry_diff(r * r, abs_squared(c)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("singular_values") {
    SECTION("diagonal with a sign") {
        const auto sv = singular_values(ComplexMatrix::diagonal({3.0, -1.0}));
        REQUIRE(sv[0] == Catch::Approx(3.0).margin(1e-13));
        REQUIRE(sv[1] == Catch::Approx(1.0).margin(1e-13));
    }
    SECTION("unitary has unit spectrum") {
        for (double s : singular_values(random_unitary(5, 3)))
            REQUIRE(s == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("scaled shift") {
        const auto sv = singular_values(real_matrix({{0, 2}, {0, 0}}));
        REQUIRE(sv[0] == Catch::Approx(2.0).margin(1e-13));
        REQUIRE(sv[1] == Catch::Approx(0.0).margin(1e-13));
    }
    SECTION("Hermitian case equals sorted absolute eigenvalues") {
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            const ComplexMatrix h = random_hermitian(6, seed);
            const HermitianEig eig = herm_eig(h);
            std::vector<double> abs_eig;
            for (double l : eig.eigenvalues) abs_eig.push_back(std::abs(l));
            std::sort(abs_eig.rbegin(), abs_eig.rend());
            const auto sv = singular_values(h);
            for (std::size_t k = 0; k < sv.size(); ++k)
                REQUIRE(sv[k] == Catch::Approx(abs_eig[k]).margin(1e-11));
        }
    }
}

TEST_CASE("spectral_bounds") {
    REQUIRE(spectral_bounds(ComplexMatrix::diagonal({1.0, 4.0})) ==
            std::pair<double, double>{1.0, 4.0});
    REQUIRE(spectral_bounds(ComplexMatrix::identity(3)) == std::pair<double, double>{1.0, 1.0});
    const auto [lo, hi] = spectral_bounds(real_matrix({{2, 1}, {1, 2}}));
    REQUIRE(lo == Catch::Approx(1.0).margin(1e-13));
    REQUIRE(hi == Catch::Approx(3.0).margin(1e-13));
}
