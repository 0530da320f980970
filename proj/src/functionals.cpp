#include "entroq/functionals.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entroq/errors.hpp"

namespace entroq {

QmcOptions Budgets::qmc(std::uint64_t salt) const {
    QmcOptions o{qmc_samples, qmc_replicates, seed};
    o.seed = seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
    return o;
}

TestFunction TestFunction::radial(std::string id, QuasiNorm norm,
                                  std::function<double(double)> profile,
                                  TailBound tail) {
    TestFunction f(std::move(id), std::move(norm), tail);
    f.profile_ = std::move(profile);
    return f;
}

TestFunction TestFunction::general(std::string id, QuasiNorm norm,
                                   std::function<double(std::span<const double>)> eval,
                                   TailBound tail) {
    TestFunction f(std::move(id), std::move(norm), tail);
    f.general_ = std::move(eval);
    return f;
}

double TestFunction::profile(double r) const {
    if (!profile_) {
        throw std::logic_error("TestFunction::profile: not a radial function");
    }
    return std::abs(profile_(r));
}

double TestFunction::operator()(std::span<const double> x) const {
    if (profile_) return std::abs(profile_(norm_(x)));
    return std::abs(general_(x));
}

namespace {

// x log x convention: the entropy integrand vanishes where u does.
inline double neg_xlogx(double w) {
    if (w <= 0.0) return 0.0;
    return -w * std::log(w);
}

// p * base^expo without manufacturing 0 * inf when one factor overflows while
// the other underflows; falls back to log space on the boundary.
inline double pow_times(double p, double base, double expo) {
    if (p == 0.0) return 0.0;
    if (base == 0.0) return expo == 0.0 ? p : 0.0;
    const double w = std::pow(base, expo);
    const double prod = p * w;
    if (std::isfinite(prod)) return prod;
    return std::exp(std::log(p) + expo * std::log(base));
}

// p * ln(1 + base^alpha), switching to alpha ln(base) once base^alpha
// overflows.
inline double log1p_pow_times(double p, double base, double alpha) {
    if (p == 0.0) return 0.0;
    const double ba = std::pow(base, alpha);
    const double lg = std::isfinite(ba) ? std::log1p(ba) : alpha * std::log(base);
    return p * lg;
}

struct RadialEval {
    const TestFunction& u;
    double q;
    double sphere;
    double sphere_err;
    double rel_tol;
    long max_evals;
    long evals = 0;

    // sphere * int g(r) r^{q-1} dr with the MC sphere error folded in.
    std::pair<double, double> integral(const std::function<double(double)>& g) {
        IntegrationResult r = radial_integral({g, q}, rel_tol, max_evals);
        evals += r.evaluations;
        const double value = sphere * r.value;
        double err = sphere * r.abs_error_estimate;
        if (sphere_err > 0.0) err += std::abs(r.value) * sphere_err;
        return {value, err};
    }
};

}  // namespace

namespace {

FunctionalValues evaluate_impl(const TestFunction& u, double alpha,
                               const Budgets& budgets, bool with_moments) {
    const double q = u.structure().q();

    FunctionalValues out;
    if (u.is_radial()) {
        const SphereMeasure sphere = resolve_sphere(u.norm(), budgets.qmc());
        RadialEval ev{u, q, sphere.value, sphere.std_error, budgets.rel_tol,
                      budgets.max_evals};

        auto [l1, l1_err] = ev.integral([&](double r) { return u.profile(r); });
        if (!(l1 > 1e-300)) {
            throw DegenerateFunctionError("evaluate_functionals: function '" + u.id() +
                                          "' has no L1 mass");
        }
        out.l1 = l1;
        out.err.l1 = l1_err;

        if (with_moments) {
            if (!u.tail().moment_finite(alpha, q)) {
                std::ostringstream os;
                os << "evaluate_functionals: |x|^alpha moment of '" << u.id()
                   << "' diverges for alpha=" << alpha << " on Q=" << q;
                throw IntegrabilityError(os.str());
            }
            auto [m, m_err] = ev.integral(
                [&](double r) { return pow_times(u.profile(r), r, alpha); });
            out.moment_alpha = m;
            out.err.moment_alpha = m_err;

            auto [bm, bm_err] = ev.integral([&](double r) {
                return pow_times(u.profile(r), std::hypot(1.0, r), alpha);
            });
            out.bracket_moment = bm;
            out.err.bracket_moment = bm_err;
        }

        auto [ent, ent_err] = ev.integral(
            [&](double r) { return neg_xlogx(u.profile(r) / l1); });
        out.entropy = ent;
        // first-order sensitivity of the normalized entropy to the l1 estimate
        out.err.entropy = ent_err + std::abs(1.0 - ent) * l1_err / l1;
        out.evaluations = ev.evals;
        return out;
    }

    // General kind: quasi-Monte Carlo per functional, independent sub-seeds.
    const DilationStructure& s = u.structure();
    auto run = [&](const std::function<double(std::span<const double>)>& f,
                   std::uint64_t salt) {
        const QmcOptions o = budgets.qmc(salt);
        IntegrationResult r = qmc_integral(s, f, o.samples, o.seed, o.replicates);
        out.evaluations += r.evaluations;
        return std::pair<double, double>{r.value, r.abs_error_estimate};
    };

    auto [l1, l1_err] = run([&](std::span<const double> x) { return u(x); }, 1);
    if (!(l1 > 1e-300)) {
        throw DegenerateFunctionError("evaluate_functionals: function '" + u.id() +
                                      "' has no L1 mass");
    }
    out.l1 = l1;
    out.err.l1 = l1_err;

    const QuasiNorm& qn = u.norm();
    if (with_moments) {
        if (!u.tail().moment_finite(alpha, q)) {
            std::ostringstream os;
            os << "evaluate_functionals: |x|^alpha moment of '" << u.id()
               << "' diverges for alpha=" << alpha << " on Q=" << q;
            throw IntegrabilityError(os.str());
        }
        auto [m, m_err] = run(
            [&](std::span<const double> x) { return pow_times(u(x), qn(x), alpha); },
            2);
        out.moment_alpha = m;
        out.err.moment_alpha = m_err;

        auto [bm, bm_err] = run(
            [&](std::span<const double> x) {
                return pow_times(u(x), japanese_bracket(qn, x), alpha);
            },
            3);
        out.bracket_moment = bm;
        out.err.bracket_moment = bm_err;
    }

    auto [ent, ent_err] =
        run([&](std::span<const double> x) { return neg_xlogx(u(x) / l1); }, 4);
    out.entropy = ent;
    out.err.entropy = ent_err + std::abs(1.0 - ent) * l1_err / l1;
    return out;
}

}  // namespace

FunctionalValues evaluate_functionals(const TestFunction& u, double alpha,
                                      const Budgets& budgets) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("evaluate_functionals: alpha must be positive");
    }
    return evaluate_impl(u, alpha, budgets, true);
}

FunctionalValues evaluate_entropy_l1(const TestFunction& u, const Budgets& budgets) {
    return evaluate_impl(u, 1.0, budgets, false);
}

TestFunction dilate_function(const TestFunction& u, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::domain_error("dilate_function: lambda must be positive");
    }
    if (lambda == 1.0) return u;
    const double q = u.structure().q();
    const double mass_factor = std::pow(lambda, q);
    std::ostringstream id;
    id << u.id() << "[dilated:" << lambda << "]";
    if (u.is_radial()) {
        TestFunction base = u;
        return TestFunction::radial(
            id.str(), u.norm(),
            [base, lambda, mass_factor](double r) {
                return mass_factor * base.profile(lambda * r);
            },
            u.tail());
    }
    TestFunction base = u;
    const DilationStructure s = u.structure();
    return TestFunction::general(
        id.str(), u.norm(),
        [base, s, lambda, mass_factor](std::span<const double> x) {
            const Point y = s.dilate(lambda, x);
            return mass_factor * base(y);
        },
        u.tail());
}

TestFunction scale_function(const TestFunction& u, double c) {
    if (!(c > 0.0)) {
        throw std::domain_error("scale_function: scale must be positive");
    }
    if (c == 1.0) return u;
    std::ostringstream id;
    id << u.id() << "[scaled:" << c << "]";
    TestFunction base = u;
    if (u.is_radial()) {
        return TestFunction::radial(
            id.str(), u.norm(), [base, c](double r) { return c * base.profile(r); },
            u.tail());
    }
    return TestFunction::general(
        id.str(), u.norm(),
        [base, c](std::span<const double> x) { return c * base(x); }, u.tail());
}

double shannon_rhs(const FunctionalValues& values, const SharpConstants& consts) {
    if (!(values.moment_alpha > 0.0)) {
        throw std::domain_error("shannon_rhs: alpha-moment must be positive");
    }
    const double q = consts.q;
    const double alpha = consts.alpha;
    return (q / alpha) * (std::log(alpha) + 1.0 + consts.log_a - std::log(q) +
                          std::log(values.moment_alpha) - std::log(values.l1));
}

double kos_rhs(const TestFunction& u, double alpha, const SharpConstants& consts,
               const Budgets& budgets) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("kos_rhs: alpha must exceed 1");
    }
    if (!consts.log_c) {
        throw std::invalid_argument("kos_rhs: constants carry no C (alpha <= 1?)");
    }
    const double q = u.structure().q();

    if (u.is_radial()) {
        const SphereMeasure sphere = resolve_sphere(u.norm(), budgets.qmc());
        RadialEval ev{u, q, sphere.value, sphere.std_error, budgets.rel_tol,
                      budgets.max_evals};
        auto [l1, l1_err] = ev.integral([&](double r) { return u.profile(r); });
        if (!(l1 > 1e-300)) {
            throw DegenerateFunctionError("kos_rhs: function '" + u.id() +
                                          "' has no L1 mass");
        }
        auto [lm, lm_err] = ev.integral(
            [&](double r) { return log1p_pow_times(u.profile(r), r, alpha); });
        (void)l1_err;
        (void)lm_err;
        return q * (*consts.log_c + lm / l1);
    }

    const DilationStructure& s = u.structure();
    const QuasiNorm& qn = u.norm();
    QmcOptions o1 = budgets.qmc(1);
    const IntegrationResult l1r =
        qmc_integral(s, [&](std::span<const double> x) { return u(x); }, o1.samples,
                     o1.seed, o1.replicates);
    if (!(l1r.value > 1e-300)) {
        throw DegenerateFunctionError("kos_rhs: function '" + u.id() +
                                      "' has no L1 mass");
    }
    QmcOptions o5 = budgets.qmc(5);
    const IntegrationResult lmr = qmc_integral(
        s,
        [&](std::span<const double> x) { return log1p_pow_times(u(x), qn(x), alpha); },
        o5.samples, o5.seed, o5.replicates);
    return q * (*consts.log_c + lmr.value / l1r.value);
}

}  // namespace entroq
