#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entroq/errors.hpp"
#include "entroq/functionals.hpp"
#include "entroq/library.hpp"
#include "oracle.hpp"

using namespace entroq;

namespace {

constexpr double kPi = 3.14159265358979323846;

DilationStructure abelian(int n) { return DilationStructure(std::vector<double>(n, 1.0)); }
QuasiNorm euclidean(int n) { return QuasiNorm::weighted_p(abelian(n), 2.0); }
QuasiNorm heis() { return QuasiNorm::koranyi(DilationStructure({1.0, 1.0, 2.0})); }

}  // namespace

TEST_CASE("extremizer on the line at alpha=2: l1, entropy, moment") {
    TestFunction u = make_test_function("extremizer", euclidean(1), 2.0);
    FunctionalValues v = evaluate_functionals(u, 2.0);
    CHECK(oracle::rel_err(v.l1, 1.0) <= 1e-8);
    // entropy = Q/alpha, moment = Q/(alpha A); frozen oracle values:
    //   int x^2 exp(-pi x^2) dx = 0.1591549430918953 = 1/(2 pi)
    CHECK(std::abs(v.entropy - 0.5) <= 1e-8);
    CHECK(oracle::rel_err(v.moment_alpha, 0.1591549430918953) <= 1e-8);
    CHECK(v.moment_alpha <= v.bracket_moment);
}

TEST_CASE("cauchy density: l1 = 1, entropy = ln 4pi") {
    // the KOS profile on (R, euclidean) at alpha = 2 is the Cauchy density;
    // entropy and l1 do not depend on the moment order, so evaluate at an
    // order small enough that the tail supports it
    TestFunction u = make_test_function("kos-profile", euclidean(1), 2.0);
    FunctionalValues v = evaluate_functionals(u, 0.5);
    CHECK(oracle::rel_err(v.l1, 1.0) <= 1e-8);
    CHECK(std::abs(v.entropy - 2.5310242469692908) <= 1e-8);
}

TEST_CASE("scalar multiples: entropy invariant, l1 and moments scale") {
    TestFunction u = make_test_function("gaussian", euclidean(2), 2.0);
    FunctionalValues base = evaluate_functionals(u, 2.0);
    for (double c : {1e-3, 1.0, 1e3}) {
        FunctionalValues v = evaluate_functionals(scale_function(u, c), 2.0);
        CHECK(std::abs(v.entropy - base.entropy) <= 1e-9 * std::max(1.0, std::abs(base.entropy)));
        CHECK(oracle::rel_err(v.l1, c * base.l1) <= 1e-9);
        CHECK(oracle::rel_err(v.moment_alpha, c * base.moment_alpha) <= 1e-9);
    }
}

TEST_CASE("dilation action on functions") {
    TestFunction u = make_test_function("gaussian", euclidean(1), 2.0);
    FunctionalValues base = evaluate_functionals(u, 2.0);

    SUBCASE("lambda = 1 returns the function unchanged") {
        TestFunction v = dilate_function(u, 1.0);
        CHECK(v.id() == u.id());
        CHECK(v.profile(0.7) == u.profile(0.7));
    }

    SUBCASE("L1 mass is preserved") {
        for (double lambda : {0.5, 2.0, 10.0}) {
            FunctionalValues v = evaluate_functionals(dilate_function(u, lambda), 2.0);
            CHECK(oracle::rel_err(v.l1, base.l1) <= 1e-9);
        }
    }

    SUBCASE("entropy shifts by -Q ln lambda, moment scales by lambda^-alpha") {
        const double q = 1.0, alpha = 2.0;
        for (double lambda : {0.5, 2.0, 10.0}) {
            FunctionalValues v = evaluate_functionals(dilate_function(u, lambda), alpha);
            CHECK(std::abs(v.entropy - base.entropy + q * std::log(lambda)) <= 1e-7);
            CHECK(std::abs(v.moment_alpha * std::pow(lambda, alpha) - base.moment_alpha) <=
                  1e-7 * base.moment_alpha);
        }
    }
}

TEST_CASE("moment domination across the library") {
    for (const std::string& id : library_ids()) {
        for (const QuasiNorm& qn : {euclidean(2), heis()}) {
            const double alpha = 2.0;
            TestFunction u = make_test_function(id, qn, alpha);
            if (!u.tail().moment_finite(alpha, qn.structure().q())) continue;
            FunctionalValues v = evaluate_functionals(u, alpha);
            CHECK(v.moment_alpha <= v.bracket_moment);
        }
    }
}

TEST_CASE("radial and general evaluation agree") {
    struct Case {
        QuasiNorm qn;
        std::string id;
    };
    for (const QuasiNorm& qn : {euclidean(2), heis()}) {
        TestFunction radial = make_test_function("gaussian", qn, 2.0);
        TestFunction general = TestFunction::general(
            "gaussian-general", qn,
            [qn](std::span<const double> x) {
                const double r = qn(x);
                return std::exp(-r * r);
            });
        Budgets b;
        b.qmc_samples = 1 << 16;
        FunctionalValues vr = evaluate_functionals(radial, 2.0, b);
        FunctionalValues vg = evaluate_functionals(general, 2.0, b);
        CHECK(std::abs(vr.l1 - vg.l1) <=
              std::max(3.0 * (vr.err.l1 + vg.err.l1), 2e-3 * vr.l1));
        CHECK(std::abs(vr.entropy - vg.entropy) <=
              std::max(3.0 * (vr.err.entropy + vg.err.entropy), 5e-3));
        CHECK(std::abs(vr.moment_alpha - vg.moment_alpha) <=
              std::max(3.0 * (vr.err.moment_alpha + vg.err.moment_alpha),
                       5e-3 * vr.moment_alpha));
    }
}

TEST_CASE("shannon rhs") {
    const SharpConstants k = shannon_constant(euclidean(1), 2.0);
    TestFunction u = make_test_function("extremizer", euclidean(1), 2.0);
    FunctionalValues v = evaluate_functionals(u, 2.0);

    // equality case: rhs equals the entropy Q/alpha
    CHECK(std::abs(shannon_rhs(v, k) - 0.5) <= 1e-8);

    // doubling the moment adds (Q/alpha) ln 2
    FunctionalValues doubled = v;
    doubled.moment_alpha *= 2.0;
    CHECK(std::abs(shannon_rhs(doubled, k) - shannon_rhs(v, k) - 0.5 * std::log(2.0)) <=
          1e-12);

    // scalar multiples leave the rhs unchanged
    FunctionalValues scaled = v;
    scaled.l1 *= 7.0;
    scaled.moment_alpha *= 7.0;
    CHECK(std::abs(shannon_rhs(scaled, k) - shannon_rhs(v, k)) <= 1e-12);

    FunctionalValues zero = v;
    zero.moment_alpha = 0.0;
    CHECK_THROWS_AS(shannon_rhs(zero, k), std::domain_error);
}

TEST_CASE("kos rhs") {
    const SharpConstants k = kos_constant(euclidean(1), 2.0);

    SUBCASE("equality case: rhs(phi) equals entropy(phi)") {
        TestFunction phi = make_test_function("kos-profile", euclidean(1), 2.0);
        FunctionalValues v = evaluate_functionals(phi, 0.5);
        const double rhs = kos_rhs(phi, 2.0, k);
        CHECK(std::abs(rhs - v.entropy) <= 1e-8);
        // and both equal ln 4pi for the Cauchy density
        CHECK(std::abs(rhs - 2.5310242469692908) <= 1e-8);
    }

    SUBCASE("compactly supported u is bounded by Q ln(2C)") {
        TestFunction bump = make_test_function("bump", euclidean(1), 2.0);
        const double rhs = kos_rhs(bump, 2.0, k);
        CHECK(rhs <= 1.0 * std::log(2.0 * *k.c()) + 1e-10);
    }

    SUBCASE("alpha <= 1 is rejected") {
        TestFunction g = make_test_function("gaussian", euclidean(1), 2.0);
        CHECK_THROWS_AS(kos_rhs(g, 0.5, k), std::domain_error);
    }
}

TEST_CASE("degenerate function raises") {
    TestFunction zero = TestFunction::radial("zero", euclidean(1),
                                             [](double) { return 0.0; });
    CHECK_THROWS_AS(evaluate_functionals(zero, 2.0), DegenerateFunctionError);
}

TEST_CASE("u log u convention: compact support stays finite") {
    TestFunction bump = make_test_function("bump", euclidean(2), 2.0);
    FunctionalValues v = evaluate_functionals(bump, 2.0);
    CHECK(std::isfinite(v.entropy));
    CHECK(v.l1 > 0.0);
}

TEST_CASE("divergent alpha-moment is detected, not integrated") {
    // Cauchy on the line has no second moment
    TestFunction phi = make_test_function("kos-profile", euclidean(1), 2.0);
    CHECK_THROWS_AS(evaluate_functionals(phi, 2.0), IntegrabilityError);
    // borderline log-divergence is also rejected: k = alpha Q = q + alpha
    TestFunction phi3 = make_test_function("kos-profile", euclidean(3), 1.5);
    CHECK_THROWS_AS(evaluate_functionals(phi3, 1.5), IntegrabilityError);
}

TEST_CASE("library ids") {
    CHECK(library_ids().size() >= 6);
    QuasiNorm qn = euclidean(2);
    // parametrized ids
    TestFunction g2 = make_test_function("gaussian:c=2", qn, 2.0);
    CHECK(g2.profile(1.0) == doctest::Approx(std::exp(-2.0)));
    TestFunction st = make_test_function("stretched:c=1,beta=1.5", qn, 2.0);
    CHECK(st.profile(4.0) == doctest::Approx(std::exp(-8.0)));
    CHECK_THROWS_AS(make_test_function("nope", qn, 2.0), ConfigError);
    CHECK_THROWS_AS(make_test_function("gaussian:q=2", qn, 2.0), ConfigError);
    CHECK_THROWS_AS(make_test_function("gaussian:c=abc", qn, 2.0), ConfigError);
    CHECK_THROWS_AS(make_test_function("kos-profile", qn, 1.0), std::domain_error);
}

TEST_CASE("every library function evaluates on the heisenberg preset") {
    for (const std::string& id : library_ids()) {
        TestFunction u = make_test_function(id, heis(), 2.0);
        FunctionalValues v = evaluate_functionals(u, 2.0);
        CHECK(v.l1 > 0.0);
        CHECK(std::isfinite(v.entropy));
    }
}
