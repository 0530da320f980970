#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entroq/dilation.hpp"
#include "entroq/integrate.hpp"

namespace entroq {

// The sharp constants of the entropy inequalities on a dilation structure,
// kept in log space because Gamma(Q/alpha) overflows for small alpha:
//   A^{Q/alpha} = |S| Gamma(Q/alpha) / alpha                  (alpha > 0)
//   C^Q         = |S| Gamma(Q/alpha) Gamma(Q/alpha') / (alpha Gamma(Q))
//   B           = alpha^alpha (alpha-1)^{1-alpha} C^alpha     (alpha > 1)
// with 1/alpha + 1/alpha' = 1. C and B are absent for alpha <= 1.
struct SharpConstants {
    double q = 0.0;
    double alpha = 0.0;
    SphereMeasure sphere;
    double log_a = 0.0;
    std::optional<double> log_c;
    std::optional<double> log_b;

    double a() const;
    std::optional<double> c() const;
    std::optional<double> b() const;
};

// A only; alpha > 0. |S| is resolved analytically when possible, otherwise by
// the Gaussian-weight MC route with `opts`.
SharpConstants shannon_constant(const QuasiNorm& qn, double alpha,
                                const QmcOptions& opts = {});
SharpConstants shannon_constant(const QuasiNorm& qn, double alpha,
                                const SphereMeasure& sphere);

// A, C and B; alpha > 1 (std::domain_error otherwise).
SharpConstants kos_constant(const QuasiNorm& qn, double alpha,
                            const QmcOptions& opts = {});
SharpConstants kos_constant(const QuasiNorm& qn, double alpha,
                            const SphereMeasure& sphere);

struct ComparisonRow {
    std::string structure_label;
    std::string norm_label;
    double q;
    double alpha;
    double sphere;
    double a;
    double ae_a_over_q;  // alpha e A / Q, the sharp right-hand scale
    double b;
    double ratio;        // B / (alpha e A / Q), >= 1
};

// One row per (norm, alpha): how far the KOS-derived constant B sits above
// the sharp scale alpha e A / Q. All alphas must exceed 1.
std::vector<ComparisonRow> constant_comparison_table(
    std::span<const QuasiNorm> norms, std::span<const double> alphas,
    const QmcOptions& opts = {});

}  // namespace entroq
