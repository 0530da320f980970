// Scratch driver: derive anchor values from the test oracle so they can be
// frozen into the test suites. Not part of the build.
#include <cstdio>

#include "oracle.hpp"

int main() {
    using namespace oracle;
    const long double pi = kPi;

    long double gauss_l1 = integrate_line(
        [&](long double x) { return std::exp(-pi * x * x); });
    std::printf("int exp(-pi x^2) dx          = %.19Lg\n", gauss_l1);

    long double gauss_m2 = integrate_line(
        [&](long double x) { return x * x * std::exp(-pi * x * x); });
    std::printf("int x^2 exp(-pi x^2) dx      = %.19Lg   (1/(2pi) = %.19Lg)\n",
                gauss_m2, 1.0L / (2.0L * pi));

    long double gauss_ent = integrate_line([&](long double x) {
        return pi * x * x * std::exp(-pi * x * x);
    });
    std::printf("entropy(E_2)                 = %.19Lg\n", gauss_ent);

    long double cauchy_ent = integrate_line([&](long double x) {
        const long double u = 1.0L / (pi * (1.0L + x * x));
        return -u * std::log(u);
    });
    std::printf("entropy(cauchy)              = %.19Lg   (ln 4pi = %.19Lg)\n",
                cauchy_ent, std::log(4.0L * pi));

    long double koranyi_vol =
        2.0L * pi *
        integrate_finite(
            [&](long double rho) {
                return 2.0L * rho * std::sqrt(1.0L - rho * rho * rho * rho);
            },
            0.0L, 1.0L);
    std::printf("koranyi unit ball volume     = %.19Lg   (pi^2/2 = %.19Lg)\n",
                koranyi_vol, pi * pi / 2.0L);

    long double log1px2 = integrate_line([&](long double x) {
        return std::exp(-pi * x * x) * std::log1p(x * x);
    });
    std::printf("E[ln(1+X^2)] under exp(-pi x^2) = %.19Lg\n", log1px2);

    // exp(-|x|) on the line: l1, second moment, entropy of the normalized density
    long double lap_l1 = integrate_line(
        [&](long double x) { return std::exp(-std::fabs(x)); });
    long double lap_m2 = integrate_line(
        [&](long double x) { return x * x * std::exp(-std::fabs(x)); });
    long double lap_ent = integrate_line([&](long double x) {
        const long double w = std::exp(-std::fabs(x)) / lap_l1;
        if (w == 0.0L) return 0.0L;
        return -w * std::log(w);
    });
    std::printf("exp(-|x|): l1 = %.19Lg  m2 = %.19Lg  entropy = %.19Lg\n",
                lap_l1, lap_m2, lap_ent);

    // Cauchy under exp(-|x|)? no - E[ln(1+X^2)] under the Laplace density:
    long double lap_log = integrate_line([&](long double x) {
        return std::exp(-std::fabs(x)) / lap_l1 * std::log1p(x * x);
    });
    std::printf("E[ln(1+X^2)] under exp(-|x|)/2  = %.19Lg\n", lap_log);

    std::printf("lgamma oracle: lg(0.5)-ln(sqrt(pi)) = %.3Lg, lg(5)-ln24 = %.3Lg\n",
                lgamma_stirling(0.5L) - std::log(std::sqrt(pi)),
                lgamma_stirling(5.0L) - std::log(24.0L));
    std::printf("ln(2pi)/2 - 1/2 = %.19Lg\n", 0.5L * std::log(2.0L * pi) - 0.5L);
    return 0;
}
