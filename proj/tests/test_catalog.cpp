#include "helpers.hpp"

using namespace bohr;
using bohr::testing::max_entry_diff;
using bohr::testing::random_general;
using bohr::testing::real_matrix;

namespace {

ComplexMatrix scalar_matrix(double re) { return ComplexMatrix(1, 1, {cplx{re, 0.0}}); }

} // namespace

TEST_CASE("inequality id strings") {
    REQUIRE(to_string(InequalityId::VasicKeckicScalar) == "vasic_keckic_scalar");
    REQUIRE(inequality_id_from_string("thm22") == InequalityId::Thm22);
    REQUIRE(inequality_id_from_string("cor2x2") == InequalityId::Cor2x2);
    REQUIRE_FALSE(inequality_id_from_string("nope").has_value());
}

TEST_CASE("identities hold exactly") {
    SECTION("parallelogram at t = 1") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const ComplexMatrix a = random_general(4, seed);
            const ComplexMatrix b = random_general(4, seed + 1000);
            const CheckOutcome out = residual_identity(InequalityId::Parallelogram, a, b, 1.0);
            REQUIRE(out.holds);
            REQUIRE(*out.residual <= 1e-12);
        }
    }
    SECTION("scalar Zhang identity values") {
        const CheckOutcome balanced = residual_identity(
            InequalityId::ZhangIdentity, scalar_matrix(1), scalar_matrix(1), 2.0, 2.0);
        REQUIRE(*balanced.residual <= 1e-14); // 0 + 4 = 2 + 2
        const CheckOutcome skewed = residual_identity(
            InequalityId::ZhangIdentity, scalar_matrix(1), scalar_matrix(1), 3.0, 1.5);
        REQUIRE(*skewed.residual <= 1e-12); // 0 + (sqrt2 + 1/sqrt2)^2 = 4.5 = 3 + 1.5
    }
    SECTION("random draws, both identities, negative t included") {
        SplitMix64 rng(77);
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t dim = 1 + rng.next_u64() % 8;
            const ComplexMatrix a = random_general(dim, rng.next_u64());
            const ComplexMatrix b = random_general(dim, rng.next_u64());
            const double p = 1.0 + rng.log_uniform(0.05, 20.0);
            REQUIRE(residual_identity(InequalityId::ZhangIdentity, a, b, p, p / (p - 1.0))
                        .holds);
            double t = 0.0;
            do {
                t = rng.uniform(-3.0, 3.0);
            } while (std::abs(t) < 1e-3);
            REQUIRE(residual_identity(InequalityId::Parallelogram, a, b, t).holds);
        }
    }
    SECTION("parameter validation") {
        const ComplexMatrix a = scalar_matrix(1), b = scalar_matrix(2);
        REQUIRE_THROWS_AS(residual_identity(InequalityId::Parallelogram, a, b, 1e-12),
                          BadParam);
        REQUIRE_THROWS_AS(residual_identity(InequalityId::ZhangIdentity, a, b, 3.0, 3.0),
                          BadParam);
        REQUIRE_THROWS_AS(residual_identity(InequalityId::Hirzallah11, a, b, 2.0, 2.0),
                          BadParam);
    }
}

TEST_CASE("classical Bohr") {
    SECTION("equality exactly at (p-1)a = b") {
        const CheckOutcome out = check_classical_bohr({2, 0}, {1, 0}, 1.5, 3.0);
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(0.0).margin(1e-12)); // |3|^2 = 1.5*4 + 3*1
    }
    SECTION("strict gap away from the equality locus") {
        SplitMix64 rng(3);
        for (int rep = 0; rep < 50; ++rep) {
            const double p = 1.0 + rng.log_uniform(0.1, 10.0);
            const double q = p / (p - 1.0);
            const cplx a = rng.complex_normal();
            const cplx b = rng.complex_normal();
            const CheckOutcome out = check_classical_bohr(a, b, p, q);
            REQUIRE(out.holds);
            const double locus_distance = std::abs((p - 1.0) * a - b);
            if (locus_distance > 0.1) REQUIRE(out.margin > 1e-4 * locus_distance);
        }
    }
}

TEST_CASE("Hirzallah inequality") {
    SECTION("equality when p = q = 2 and A = B") {
        const ComplexMatrix a = random_general(3, 9);
        const CheckOutcome out = check_hirzallah(a, a, 2.0, 2.0);
        REQUIRE(out.holds);
        REQUIRE(std::abs(out.margin) <=
                1e-12 * std::max(1.0, norm2_hermitian(abs_squared(a))));
    }
    SECTION("scalar arithmetic case") {
        const CheckOutcome out =
            check_hirzallah(scalar_matrix(1), scalar_matrix(2), 1.5, 3.0);
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(13.5 - 7.25)); // RHS 13.5, LHS 1 + 6.25
    }
    SECTION("exponent ordering is enforced") {
        REQUIRE_THROWS_AS(
            check_hirzallah(scalar_matrix(1), scalar_matrix(1), 3.0, 1.5), BadParam);
    }
    SECTION("no violations under q >= p > 1") {
        SplitMix64 rng(13);
        for (int rep = 0; rep < 100; ++rep) {
            const double p = 1.0 + rng.uniform(1e-3, 1.0);
            const std::size_t dim = 1 + rng.next_u64() % 8;
            REQUIRE(check_hirzallah(random_general(dim, rng.next_u64()),
                                    random_general(dim, rng.next_u64()), p, p / (p - 1.0))
                        .holds);
        }
    }
}

TEST_CASE("Hirzallah norm inequality via Ky Fan dominance") {
    SECTION("X = gamma I") {
        const ComplexMatrix a = random_general(4, 21);
        const ComplexMatrix b = random_general(4, 22);
        const ComplexMatrix x = 0.7 * ComplexMatrix::identity(4);
        REQUIRE(check_hirzallah_norm(a, b, 1.5, 3.0, x, 0.7).holds);
    }
    SECTION("Hermitian part below gamma is rejected") {
        const ComplexMatrix x = 0.5 * ComplexMatrix::identity(3);
        REQUIRE_THROWS_AS(check_hirzallah_norm(random_general(3, 1), random_general(3, 2),
                                               1.5, 3.0, x, 0.9),
                          BadParam);
    }
    SECTION("non-Hermitian X with Hermitian part >= gamma I is admitted") {
        // X >= gamma I is read through the Hermitian part; the skew part may
        // be anything, and the check still evaluates
        ComplexMatrix x = 1.2 * ComplexMatrix::identity(3);
        x(2, 0) += cplx{0.4, 0.0};
        x(0, 2) -= cplx{0.4, 0.0};
        x(0, 1) += cplx{0.0, 0.3};
        x(1, 0) += cplx{0.0, 0.3};
        REQUIRE(hermitian_defect(x) > 0.5);
        REQUIRE(max_entry_diff(hermitian_part(x), 1.2 * ComplexMatrix::identity(3)) == 0.0);
        REQUIRE_NOTHROW(check_hirzallah_norm(random_general(3, 4), random_general(3, 5),
                                             1.5, 3.0, x, 1.2));
    }
    SECTION("random PSD shifts, all Ky Fan indices") {
        SplitMix64 rng(31);
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t dim = 2 + rng.next_u64() % 5;
            const double p = 1.0 + rng.uniform(1e-3, 1.0);
            const double gamma = rng.log_uniform(0.1, 2.0);
            const ComplexMatrix x = gamma * ComplexMatrix::identity(dim) +
                                    bohr::testing::random_psd(dim, rng.next_u64());
            REQUIRE(check_hirzallah_norm(random_general(dim, rng.next_u64()),
                                         random_general(dim, rng.next_u64()), p,
                                         p / (p - 1.0), x, gamma)
                        .holds);
        }
    }
}

TEST_CASE("certificate templates") {
    SECTION("jensen squares with two equal weights") {
        const auto p = jensen_squares_template({2.0, 2.0});
        REQUIRE(max_entry_diff(coefficient_matrix(p), real_matrix({{1, -1}, {-1, 1}})) == 0.0);
        REQUIRE(certify(p).certified());
    }
    SECTION("chansangiam single column") {
        const auto p = chansangiam_template({{1.0, 1.0}}, {1.0, 1.0});
        REQUIRE(max_entry_diff(coefficient_matrix(p), real_matrix({{0, 1}, {1, 0}})) == 0.0);
        const CertificateResult cert = certify(p);
        REQUIRE_FALSE(cert.certified());
        REQUIRE(cert.lambda_min == Catch::Approx(-1.0).margin(1e-13));
    }
    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(zhang_convex_template({0.3, 0.3}), BadParam);
        REQUIRE_THROWS_AS(zhang_convex_template({1.5, -0.5}), BadParam);
        REQUIRE_THROWS_AS(jensen_squares_template({0.5, 2.0}), BadParam);
        REQUIRE_THROWS_AS(thm22_template(0.0, Thm22Direction::Standard, Thm22Sign::MinusPlus),
                          BadParam);
    }
    SECTION("random convex weights certify, both routes agree") {
        SplitMix64 rng(41);
        for (int rep = 0; rep < 30; ++rep) {
            const std::size_t n = 2 + rng.next_u64() % 5;
            ParamVector w(n);
            double sum = 0.0;
            for (double& x : w) {
                x = rng.log_uniform(0.1, 1.0);
                sum += x;
            }
            for (double& x : w) x /= sum;
            const auto zc = zhang_convex_template(w);
            REQUIRE(certify(zc).certified());
            REQUIRE(principal_minors_nonneg(coefficient_matrix(zc)));

            ParamVector r(n);
            for (std::size_t i = 0; i < n; ++i) r[i] = 1.0 / w[i];
            const auto js = jensen_squares_template(r);
            REQUIRE(certify(js).certified());
            REQUIRE(principal_minors_nonneg(coefficient_matrix(js)));
        }
    }
}

TEST_CASE("two-term dichotomy over the t grid") {
    const double certified_grid[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    const double refuted_grid[] = {1.5, 2.0, 10.0, -0.5, -1.0};
    for (Thm22Sign sign : {Thm22Sign::MinusPlus, Thm22Sign::PlusMinus}) {
        for (double t : certified_grid) {
            REQUIRE(certify(thm22_template(t, Thm22Direction::Standard, sign)).certified());
            // the reverse direction flips, except at t = 1 where the
            // coefficient matrix vanishes and both directions hold
            const bool reverse_ok =
                certify(thm22_template(t, Thm22Direction::Reverse, sign)).certified();
            if (t < 1.0)
                REQUIRE_FALSE(reverse_ok);
            else
                REQUIRE(reverse_ok);
        }
        for (double t : refuted_grid) {
            REQUIRE_FALSE(
                certify(thm22_template(t, Thm22Direction::Standard, sign)).certified());
            REQUIRE(certify(thm22_template(t, Thm22Direction::Reverse, sign)).certified());
        }
    }
}

TEST_CASE("Vasic-Keckic scalar inequality") {
    SECTION("hand values") {
        CheckOutcome out = check_vasic_keckic_scalar({{1, 0}, {1, 0}}, {1.0, 1.0}, 2.0);
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(0.0).margin(1e-12)); // RHS 4 = |2|^2

        out = check_vasic_keckic_scalar({{1, 0}, {1, 0}}, {1.0, 2.0}, 2.0);
        REQUIRE(out.margin == Catch::Approx(0.5)); // RHS 1.5 * 3 = 4.5, LHS 4

        out = check_vasic_keckic_scalar({{1, 0}, {-1, 0}}, {1.0, 1.0}, 3.0);
        REQUIRE(out.holds); // LHS cancels to 0, RHS = 2^2 * 2
        REQUIRE(out.margin == Catch::Approx(8.0));
    }
    SECTION("parameter validation") {
        REQUIRE_THROWS_AS(check_vasic_keckic_scalar({{1, 0}}, {1.0}, 1.0), BadParam);
        REQUIRE_THROWS_AS(check_vasic_keckic_scalar({{1, 0}}, {-1.0}, 2.0), BadParam);
    }
    SECTION("agrees with the Holder-substitution oracle") {
        SplitMix64 rng(53);
        for (int rep = 0; rep < 500; ++rep) {
            const double exponents[] = {1.5, 2.0, 3.0};
            const double r = exponents[rng.next_u64() % 3];
            const std::size_t n = 2 + rng.next_u64() % 5;
            std::vector<cplx> z(n);
            std::vector<double> a(n);
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = rng.complex_normal();
                a[i] = rng.log_uniform(0.2, 5.0);
            }
            // Substitution u_i = a_i^{-1/q}, w_i = z_i / u_i with q = r,
            // p = r/(r-1); the Holder bound (sum |u|^p)^{r/p} (sum |w|^q)^{r/q}
            // rebuilds the right-hand side along an independent arithmetic path.
            const double hp = r / (r - 1.0);
            double sum_u_p = 0.0, sum_w_q = 0.0;
            cplx z_sum{0, 0};
            for (std::size_t i = 0; i < n; ++i) {
                const double u = std::pow(a[i], -1.0 / r);
                sum_u_p += std::pow(u, hp);
                sum_w_q += std::pow(std::abs(z[i]) / u, r);
                z_sum += z[i];
            }
            const double oracle_rhs = std::pow(sum_u_p, r / hp) * sum_w_q;
            const double oracle_margin = oracle_rhs - std::pow(std::abs(z_sum), r);
            const CheckOutcome out = check_vasic_keckic_scalar(z, a, r);
            REQUIRE(out.holds);
            REQUIRE(out.margin ==
                    Catch::Approx(oracle_margin)
                        .margin(1e-10 * std::max(1.0, std::abs(oracle_margin))));
        }
    }
}

TEST_CASE("Rassias-Pecaric normed-space inequality") {
    SECTION("hand values") {
        CheckOutcome out = check_rassias_pecaric({{1, 0}, {1, 0}}, {2.0, -1.0},
                                                 ScalarFunction::power(2.0));
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(0.0).margin(1e-12));

        out = check_rassias_pecaric({{1, 0}, {0, 1}}, {2.0, -1.0},
                                    ScalarFunction::power(2.0));
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(4.0)); // |(2,-1)|^2 = 5 vs (2-1)/1 = 1

        out = check_rassias_pecaric({{0.3, -0.4}}, {1.0}, ScalarFunction::abs_power(3.0));
        REQUIRE(out.margin == Catch::Approx(0.0).margin(1e-14)); // single term
    }
    SECTION("sign pattern and f admissibility") {
        REQUIRE_THROWS_AS(check_rassias_pecaric({{1}, {1}}, {2.0, 0.5},
                                                ScalarFunction::power(2.0)),
                          BadParam);
        REQUIRE_THROWS_AS(check_rassias_pecaric({{1}, {1}}, {1.0, -2.0},
                                                ScalarFunction::power(2.0)),
                          BadParam);
        REQUIRE_THROWS_AS(check_rassias_pecaric({{1}}, {1.0}, ScalarFunction::power(0.5)),
                          BadParam);
    }
    SECTION("random admissible draws hold") {
        SplitMix64 rng(61);
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t n = 2 + rng.next_u64() % 3;
            const std::size_t dim = 1 + rng.next_u64() % 4;
            std::vector<double> p(n);
            p[0] = rng.uniform(0.5, 3.0);
            for (std::size_t j = 1; j < n; ++j)
                p[j] = -rng.uniform(0.0, 0.8 * p[0] / static_cast<double>(n - 1));
            std::vector<std::vector<double>> xs(n, std::vector<double>(dim));
            for (auto& x : xs)
                for (double& v : x) v = rng.uniform(-1.0, 1.0);
            const double exponents[] = {1.0, 1.5, 2.0, 3.0};
            REQUIRE(check_rassias_pecaric(
                        xs, p, ScalarFunction::power(exponents[rng.next_u64() % 4]))
                        .holds);
        }
    }
}

TEST_CASE("monotonicity of F") {
    SECTION("proportional growth") {
        std::vector<std::vector<ComplexMatrix>> tuples;
        SplitMix64 rng(71);
        for (int k = 0; k < 3; ++k)
            tuples.push_back({random_general(3, rng.next_u64()),
                              random_general(3, rng.next_u64()),
                              random_general(3, rng.next_u64())});
        const CheckOutcome out = check_monotonic_F({1, 1, 1}, {2, 2, 2}, tuples);
        REQUIRE_FALSE(out.hypothesis_failed);
        REQUIRE(out.holds);
    }
    SECTION("scalar tuple") {
        const std::vector<std::vector<ComplexMatrix>> tuple{
            {scalar_matrix(1), scalar_matrix(1), scalar_matrix(1)}};
        const CheckOutcome out = check_monotonic_F({1, 0, 0}, {2, 0, 0}, tuple);
        REQUIRE(out.holds);
        REQUIRE(out.margin == Catch::Approx(3.0)); // F(a) = 1, F(b) = 4
    }
    SECTION("3D proportionality route") {
        const ParamVector a{1, 2, 3}, b{2, 4, 6};
        // all 2x2 minors of gram(b) - gram(a) vanish
        const ComplexMatrix diff = gram(b) - gram(a);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                const double det = diff(i, i).real() * diff(j, j).real() -
                                   diff(i, j).real() * diff(j, i).real();
                REQUIRE(det == Catch::Approx(0.0).margin(1e-12));
            }
        const std::vector<std::vector<ComplexMatrix>> tuple{
            {random_general(2, 5), random_general(2, 6), random_general(2, 7)}};
        REQUIRE(check_monotonic_F(a, b, tuple).holds);
    }
    SECTION("failed hypothesis is reported, not judged") {
        const std::vector<std::vector<ComplexMatrix>> tuple{
            {scalar_matrix(1), scalar_matrix(1)}};
        const CheckOutcome out = check_monotonic_F({1, 0}, {0, 1}, tuple);
        REQUIRE(out.hypothesis_failed);
        REQUIRE_FALSE(out.holds);
    }
}
