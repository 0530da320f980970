#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "entroq/dilation.hpp"

namespace entroq {

struct IntegrationResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

// Thrown when the evaluation budget runs out before the tolerance is met;
// carries what was accumulated so far.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& msg, IntegrationResult partial)
        : std::runtime_error(msg), partial_(partial) {}
    const IntegrationResult& partial() const noexcept { return partial_; }

private:
    IntegrationResult partial_;
};

// g(r) to be integrated against the polar weight r^{q-1} on (0, inf).
struct RadialIntegrand {
    std::function<double(double)> evaluator;
    double q;
};

// int_0^inf g(r) r^{q-1} dr. Adaptive Gauss-Kronrod on [0, 1], then the tail
// under the substitution r = e^t - 1 on geometrically growing t-windows until
// the contributions become negligible. rel_tol must lie in (0, 1e-2].
IntegrationResult radial_integral(const RadialIntegrand& f, double rel_tol = 1e-10,
                                  long max_evals = 1'000'000);

struct QmcOptions {
    long samples = 262144;  // 2^18, total across replicates
    int replicates = 16;
    std::uint64_t seed = 0x243f6a8885a308d3ULL;
};

// Integral of f over R^N by a Halton sequence pushed through a per-coordinate
// heavy-tailed change of variables (Pareto-type tails, tail index 1/(1+nu_i)).
// Randomized by Cranley-Patterson rotation across replicates; the reported
// error is the standard error of the replicate means. Deterministic given
// (samples, seed). Requires samples >= 2^10.
IntegrationResult qmc_integral(const DilationStructure& s,
                               const std::function<double(std::span<const double>)>& f,
                               long samples, std::uint64_t seed, int replicates = 16);

enum class SphereMethod { Analytic, BallVolumeMc, GaussWeightMc };

std::string to_string(SphereMethod m);

// |S|, the mass of the surface measure on the unit quasi-sphere in the polar
// decomposition int f = int_0^inf int_S f(ry) r^{Q-1} dsigma dr.
struct SphereMeasure {
    double value = 0.0;
    SphereMethod method = SphereMethod::Analytic;
    double std_error = 0.0;  // 0 for the analytic route
};

// True when sphere_measure(qn, Analytic) is available: Euclidean norm with
// unit weights, any Max norm, or the Koranyi norm with layers of sizes (2,1).
bool has_analytic_sphere(const QuasiNorm& qn);

// Analytic:       closed forms (2 pi^{N/2}/Gamma(N/2), Q 2^N, 2 pi^2).
// BallVolumeMc:   Q * vol{|x| < 1} via qmc_integral.
// GaussWeightMc:  2 * int e^{-|x|^2} dx / Gamma(Q/2) via qmc_integral.
SphereMeasure sphere_measure(const QuasiNorm& qn, SphereMethod method,
                             const QmcOptions& opts = {});

// Analytic when available, otherwise the Gaussian-weight MC route. Results
// for MC-backed norms are memoized per (norm, options).
SphereMeasure resolve_sphere(const QuasiNorm& qn, const QmcOptions& opts = {});

}  // namespace entroq
