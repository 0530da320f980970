#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entroq/dilation.hpp"
#include "entroq/errors.hpp"

using namespace entroq;

namespace {

DilationStructure abelian(int n) { return DilationStructure(std::vector<double>(n, 1.0)); }
DilationStructure heisenberg() { return DilationStructure({1.0, 1.0, 2.0}); }

}  // namespace

TEST_CASE("dilate acts coordinate-wise with the weights") {
    DilationStructure s({1.0, 1.0, 2.0});
    Point x = s.dilate(2.0, std::vector<double>{1.0, 1.0, 1.0});
    CHECK(x[0] == doctest::Approx(2.0));
    CHECK(x[1] == doctest::Approx(2.0));
    CHECK(x[2] == doctest::Approx(4.0));

    DilationStructure s2({1.0, 2.0});
    Point y = s2.dilate(3.0, std::vector<double>{1.0, 1.0});
    CHECK(y[0] == doctest::Approx(3.0));
    CHECK(y[1] == doctest::Approx(9.0));
}

TEST_CASE("identity dilation") {
    DilationStructure s({0.5, 1.0, 3.0});
    std::vector<double> x{0.2, -3.0, 7.5};
    Point y = s.dilate(1.0, x);
    for (int i = 0; i < 3; ++i) CHECK(y[i] == x[i]);
}

TEST_CASE("dilation composition") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> lam(0.1, 10.0);
    DilationStructure s({1.0, 2.0, 0.7});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x{coord(rng), coord(rng), coord(rng)};
        const double a = lam(rng), b = lam(rng);
        const Point lhs = s.dilate(a, s.dilate(b, x));
        const Point rhs = s.dilate(a * b, x);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(lhs[i] - rhs[i]) <= 1e-12 * std::max(1.0, std::abs(rhs[i])));
        }
    }
}

TEST_CASE("dilate rejects nonpositive lambda") {
    DilationStructure s({1.0});
    CHECK_THROWS_AS(s.dilate(0.0, std::vector<double>{1.0}), std::domain_error);
    CHECK_THROWS_AS(s.dilate(-2.0, std::vector<double>{1.0}), std::domain_error);
}

TEST_CASE("structure validation") {
    CHECK_THROWS_AS(DilationStructure({}), ConfigError);
    CHECK_THROWS_AS(DilationStructure({1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(DilationStructure({-1.0}), ConfigError);
    DilationStructure s({1.0, 2.5});
    CHECK(s.q() == doctest::Approx(3.5));
}

TEST_CASE("quasi-norm anchor values") {
    QuasiNorm mx = QuasiNorm::max_norm(DilationStructure({1.0, 2.0}));
    CHECK(mx(std::vector<double>{2.0, 9.0}) == doctest::Approx(3.0));

    QuasiNorm eu = QuasiNorm::weighted_p(abelian(2), 2.0);
    CHECK(eu(std::vector<double>{3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(quasi_norm(eu, std::vector<double>{3.0, 4.0}) == doctest::Approx(5.0));

    QuasiNorm ko = QuasiNorm::koranyi(heisenberg());
    CHECK(ko(std::vector<double>{1.0, 1.0, 2.0}) ==
          doctest::Approx(std::pow(8.0, 0.25)));
}

TEST_CASE("japanese bracket") {
    QuasiNorm eu = QuasiNorm::weighted_p(abelian(2), 2.0);
    CHECK(japanese_bracket(eu, std::vector<double>{0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(japanese_bracket(eu, std::vector<double>{1.0, 0.0}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(japanese_bracket(eu, std::vector<double>{std::sqrt(3.0), 0.0}) ==
          doctest::Approx(2.0));
}

TEST_CASE("homogeneity residual anchors") {
    QuasiNorm mx = QuasiNorm::max_norm(DilationStructure({1.0, 2.0}));
    CHECK(homogeneity_residual(mx, 1.0, std::vector<double>{0.3, -2.0}) == 0.0);
    CHECK(homogeneity_residual(mx, 4.0, std::vector<double>{1.0, 1.0}) ==
          doctest::Approx(0.0));

    QuasiNorm wp = QuasiNorm::weighted_p(heisenberg(), 4.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int i = 0; i < 10; ++i) {
        std::vector<double> x{coord(rng), coord(rng), coord(rng)};
        CHECK(homogeneity_residual(wp, 2.5, x) <= 1e-12 * (1.0 + 2.5 * wp(x)));
    }
}

TEST_CASE("homogeneity on 1000 seeded samples, all variants") {
    std::vector<QuasiNorm> norms;
    norms.push_back(QuasiNorm::weighted_p(DilationStructure({1.0, 2.0, 0.5})));
    norms.push_back(QuasiNorm::weighted_p(abelian(2), 2.0));
    norms.push_back(QuasiNorm::max_norm(DilationStructure({1.0, 2.0})));
    norms.push_back(QuasiNorm::koranyi(heisenberg()));

    for (const QuasiNorm& qn : norms) {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> coord(-10.0, 10.0);
        std::uniform_real_distribution<double> loglam(-3.0, 3.0);
        const int n = qn.structure().dim();
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> x(n);
            for (double& xi : x) xi = coord(rng);
            const double lambda = std::exp(loglam(rng));
            const double res = homogeneity_residual(qn, lambda, x);
            CHECK(res <= 1e-10 * (1.0 + lambda * qn(x)));
        }
    }
}

TEST_CASE("negation symmetry is exact") {
    std::vector<QuasiNorm> norms;
    norms.push_back(QuasiNorm::weighted_p(DilationStructure({1.0, 2.0, 0.5})));
    norms.push_back(QuasiNorm::max_norm(DilationStructure({1.0, 2.0, 0.5})));
    norms.push_back(QuasiNorm::koranyi(heisenberg()));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(-4.0, 4.0);
    for (const QuasiNorm& qn : norms) {
        const int n = qn.structure().dim();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> x(n), nx(n);
            for (int i = 0; i < n; ++i) {
                x[i] = coord(rng);
                nx[i] = -x[i];
            }
            CHECK(qn(x) == qn(nx));
        }
    }
}

TEST_CASE("norm vanishes only at the origin") {
    std::vector<QuasiNorm> norms;
    norms.push_back(QuasiNorm::koranyi(heisenberg()));
    norms.push_back(QuasiNorm::weighted_p(heisenberg()));
    norms.push_back(QuasiNorm::max_norm(heisenberg()));
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> coord(0.1, 2.0);
    for (const QuasiNorm& qn : norms) {
        CHECK(qn(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
        // axis points
        CHECK(qn(std::vector<double>{1e-8, 0.0, 0.0}) > 0.0);
        CHECK(qn(std::vector<double>{0.0, 1e-8, 0.0}) > 0.0);
        CHECK(qn(std::vector<double>{0.0, 0.0, 1e-8}) > 0.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x{coord(rng), coord(rng), coord(rng)};
            CHECK(qn(x) > 0.0);
        }
    }
}

TEST_CASE("koranyi requires layered weights") {
    CHECK_THROWS_AS(QuasiNorm::koranyi(DilationStructure({1.0, 3.0})), ConfigError);
    CHECK_THROWS_AS(QuasiNorm::koranyi(DilationStructure({2.0, 2.0})), ConfigError);
    CHECK_THROWS_AS(
        QuasiNorm::koranyi(DilationStructure({1.0, 1.0, 2.0}), {0, 1}, {1}),
        ConfigError);  // not a partition
}

TEST_CASE("dimension mismatch") {
    QuasiNorm eu = QuasiNorm::weighted_p(abelian(2), 2.0);
    CHECK_THROWS_AS(eu(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("JSON presets") {
    const auto j = nlohmann::json::parse(
        R"({"weights":[1,1,2],"norm":{"variant":"koranyi"}})");
    QuasiNorm qn = quasi_norm_from_json(j);
    CHECK(qn.variant() == NormVariant::Koranyi);
    CHECK(qn.structure().q() == doctest::Approx(4.0));

    const auto jp = nlohmann::json::parse(
        R"({"weights":[1,2],"norm":{"variant":"weighted_p","p":4}})");
    QuasiNorm wp = quasi_norm_from_json(jp);
    CHECK(wp.p() == doctest::Approx(4.0));

    const auto jm = nlohmann::json::parse(R"({"weights":[1,2],"norm":{"variant":"max"}})");
    CHECK(quasi_norm_from_json(jm).variant() == NormVariant::Max);

    // layered koranyi given explicitly
    const auto jl = nlohmann::json::parse(
        R"({"weights":[1,2,1],"norm":{"variant":"koranyi","layers":[[0,2],[1]]}})");
    CHECK(quasi_norm_from_json(jl).variant() == NormVariant::Koranyi);

    CHECK_THROWS_AS(
        quasi_norm_from_json(nlohmann::json::parse(R"({"weights":[1],"extra":1})")),
        ConfigError);
    CHECK_THROWS_AS(quasi_norm_from_json(nlohmann::json::parse(
                        R"({"weights":[1],"norm":{"variant":"foo"}})")),
                    ConfigError);
    CHECK_THROWS_AS(quasi_norm_from_json(nlohmann::json::parse(
                        R"({"weights":[1],"norm":{"variant":"max","bogus":2}})")),
                    ConfigError);
}

TEST_CASE("default weighted-p exponent is twice the top weight") {
    QuasiNorm wp = QuasiNorm::weighted_p(DilationStructure({1.0, 2.0}));
    CHECK(wp.p() == doctest::Approx(4.0));
}
