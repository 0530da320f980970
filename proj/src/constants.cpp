#include "entroq/constants.hpp"

#include <cmath>
#include <stdexcept>

#include "entroq/specfun.hpp"

namespace entroq {

double SharpConstants::a() const { return std::exp(log_a); }

std::optional<double> SharpConstants::c() const {
    if (!log_c) return std::nullopt;
    return std::exp(*log_c);
}

std::optional<double> SharpConstants::b() const {
    if (!log_b) return std::nullopt;
    return std::exp(*log_b);
}

SharpConstants shannon_constant(const QuasiNorm& qn, double alpha,
                                const SphereMeasure& sphere) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("shannon_constant: alpha must be positive");
    }
    SharpConstants out;
    out.q = qn.structure().q();
    out.alpha = alpha;
    out.sphere = sphere;
    out.log_a = (alpha / out.q) *
                (std::log(sphere.value) + log_gamma(out.q / alpha) - std::log(alpha));
    return out;
}

SharpConstants shannon_constant(const QuasiNorm& qn, double alpha,
                                const QmcOptions& opts) {
    return shannon_constant(qn, alpha, resolve_sphere(qn, opts));
}

SharpConstants kos_constant(const QuasiNorm& qn, double alpha,
                            const SphereMeasure& sphere) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("kos_constant: alpha must exceed 1");
    }
    SharpConstants out = shannon_constant(qn, alpha, sphere);
    const double q = out.q;
    const double alpha_conj = alpha / (alpha - 1.0);
    const double log_c = (std::log(sphere.value) + log_gamma(q / alpha) +
                          log_gamma(q / alpha_conj) - std::log(alpha) - log_gamma(q)) /
                         q;
    out.log_c = log_c;
    out.log_b = alpha * std::log(alpha) + (1.0 - alpha) * std::log(alpha - 1.0) +
                alpha * log_c;
    return out;
}

SharpConstants kos_constant(const QuasiNorm& qn, double alpha, const QmcOptions& opts) {
    return kos_constant(qn, alpha, resolve_sphere(qn, opts));
}

std::vector<ComparisonRow> constant_comparison_table(std::span<const QuasiNorm> norms,
                                                     std::span<const double> alphas,
                                                     const QmcOptions& opts) {
    for (double a : alphas) {
        if (!(a > 1.0)) {
            throw std::domain_error("constant_comparison_table: all alphas must exceed 1");
        }
    }
    std::vector<ComparisonRow> rows;
    rows.reserve(norms.size() * alphas.size());
    for (const QuasiNorm& qn : norms) {
        const SphereMeasure sphere = resolve_sphere(qn, opts);
        for (double alpha : alphas) {
            const SharpConstants k = kos_constant(qn, alpha, sphere);
            ComparisonRow row;
            row.structure_label = qn.structure().describe();
            row.norm_label = qn.describe();
            row.q = k.q;
            row.alpha = alpha;
            row.sphere = sphere.value;
            row.a = k.a();
            row.ae_a_over_q = std::exp(std::log(alpha) + 1.0 + k.log_a - std::log(k.q));
            row.b = *k.b();
            row.ratio = std::exp(*k.log_b - (std::log(alpha) + 1.0 + k.log_a - std::log(k.q)));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace entroq
