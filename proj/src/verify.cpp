#include "entroq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <stdexcept>

#include "entroq/errors.hpp"

namespace entroq {

std::string to_string(Inequality ineq) {
    switch (ineq) {
        case Inequality::Shannon: return "Shannon";
        case Inequality::ShannonViaB: return "ShannonViaB";
        case Inequality::KOS: return "KOS";
    }
    return "";
}

Inequality inequality_from_string(const std::string& s) {
    if (s == "Shannon" || s == "shannon") return Inequality::Shannon;
    if (s == "ShannonViaB" || s == "shannon-via-b") return Inequality::ShannonViaB;
    if (s == "KOS" || s == "kos") return Inequality::KOS;
    throw ConfigError("unknown inequality '" + s + "'");
}

bool VerificationReport::all_passed() const {
    return std::all_of(records.begin(), records.end(),
                       [](const DeficitRecord& r) { return r.passed; });
}

namespace {

SharpConstants constants_for(const QuasiNorm& qn, double alpha, bool need_kos,
                             const Budgets& budgets, const ConstantOverrides& ov) {
    SharpConstants k = need_kos ? kos_constant(qn, alpha, budgets.qmc())
                                : shannon_constant(qn, alpha, budgets.qmc());
    if (ov.a) k.log_a = std::log(*ov.a);
    if (ov.c && k.log_c) k.log_c = std::log(*ov.c);
    if (ov.b && k.log_b) k.log_b = std::log(*ov.b);
    return k;
}

DeficitRecord make_record(Inequality ineq, const TestFunction& u, double alpha,
                          double deficit, double error) {
    return {ineq, u.id(), alpha, deficit, error, deficit >= -3.0 * error};
}

// Error of an RHS of the form (Q/alpha) ln(scale * moment / l1).
double log_moment_ratio_error(const FunctionalValues& v, double q, double alpha) {
    return (q / alpha) *
           (v.err.moment_alpha / v.moment_alpha + v.err.l1 / v.l1);
}

}  // namespace

DeficitRecord shannon_deficit(const TestFunction& u, double alpha,
                              const Budgets& budgets,
                              const ConstantOverrides& overrides) {
    if (!(alpha > 0.0)) {
        throw std::domain_error("shannon_deficit: alpha must be positive");
    }
    const SharpConstants k =
        constants_for(u.norm(), alpha, false, budgets, overrides);
    const FunctionalValues v = evaluate_functionals(u, alpha, budgets);
    const double rhs = shannon_rhs(v, k);
    const double deficit = rhs - v.entropy;
    const double err =
        v.err.entropy + log_moment_ratio_error(v, k.q, alpha) +
        (k.sphere.std_error > 0.0 ? k.sphere.std_error / k.sphere.value : 0.0);
    return make_record(Inequality::Shannon, u, alpha, deficit, err);
}

DeficitRecord shannon_via_b_deficit(const TestFunction& u, double alpha,
                                    const Budgets& budgets,
                                    const ConstantOverrides& overrides) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("shannon_via_b_deficit: alpha must exceed 1");
    }
    const SharpConstants k = constants_for(u.norm(), alpha, true, budgets, overrides);
    const FunctionalValues v = evaluate_functionals(u, alpha, budgets);
    const double rhs =
        (k.q / alpha) *
        (*k.log_b + std::log(v.moment_alpha) - std::log(v.l1));
    const double deficit = rhs - v.entropy;
    const double err =
        v.err.entropy + log_moment_ratio_error(v, k.q, alpha) +
        (k.sphere.std_error > 0.0 ? k.sphere.std_error / k.sphere.value : 0.0);
    return make_record(Inequality::ShannonViaB, u, alpha, deficit, err);
}

DeficitRecord kos_deficit(const TestFunction& u, double alpha, const Budgets& budgets,
                          const ConstantOverrides& overrides) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("kos_deficit: alpha must exceed 1");
    }
    const SharpConstants k = constants_for(u.norm(), alpha, true, budgets, overrides);
    // The KOS inequality holds without the alpha-moment, so only entropy and
    // the L1 mass are evaluated here.
    const FunctionalValues v = evaluate_entropy_l1(u, budgets);
    const double rhs = kos_rhs(u, alpha, k, budgets);
    const double deficit = rhs - v.entropy;
    const double err =
        v.err.entropy + k.q * v.err.l1 / v.l1 +
        (k.sphere.std_error > 0.0 ? k.sphere.std_error / k.sphere.value : 0.0);
    return make_record(Inequality::KOS, u, alpha, deficit, err);
}

LambdaOptReport lambda_optimization_check(const TestFunction& u, double alpha,
                                          std::span<const double> lambdas,
                                          const Budgets& budgets) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("lambda_optimization_check: alpha must exceed 1");
    }
    const SharpConstants k = kos_constant(u.norm(), alpha, budgets.qmc());
    const FunctionalValues v = evaluate_functionals(u, alpha, budgets);
    const double q = k.q;
    const double m = v.moment_alpha / v.l1;

    auto bound = [&](double lambda) {
        return q * *k.log_c +
               q * std::log(lambda + std::pow(lambda, 1.0 - alpha) * m);
    };

    LambdaOptReport rep;
    rep.moment = m;
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) {
            throw std::domain_error("lambda_optimization_check: lambdas must be positive");
        }
        rep.rows.push_back({lambda, bound(lambda)});
    }
    rep.lambda_star = std::pow((alpha - 1.0) * m, 1.0 / alpha);
    rep.bound_at_star = bound(rep.lambda_star);
    rep.expected_min = (q / alpha) * (*k.log_b + std::log(m));
    rep.identity_residual = std::abs(rep.bound_at_star - rep.expected_min);
    if (!rep.rows.empty()) {
        const auto it = std::min_element(
            rep.rows.begin(), rep.rows.end(),
            [](const LambdaOptRow& a, const LambdaOptRow& b) { return a.bound < b.bound; });
        rep.grid_argmin = it->lambda;
        rep.star_beats_grid = std::all_of(
            rep.rows.begin(), rep.rows.end(), [&](const LambdaOptRow& r) {
                return rep.bound_at_star <= r.bound + 1e-12 * std::abs(r.bound);
            });
    } else {
        rep.star_beats_grid = true;
    }
    return rep;
}

namespace {

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& config) {
    VerificationReport report;
    report.structure_label = config.structure_label.empty()
                                 ? config.norm.structure().describe()
                                 : config.structure_label;
    report.weights = config.norm.structure().weights();
    report.q = config.norm.structure().q();
    report.norm_label = config.norm.describe();
    report.seed = config.budgets.seed;
    report.budgets = config.budgets;
    report.timestamp = utc_timestamp();

    // Validate the whole configuration before computing anything.
    if (config.alphas.empty()) {
        throw ConfigError("run_suite: alpha grid must not be empty");
    }
    for (double a : config.alphas) {
        if (!(a > 0.0)) throw ConfigError("run_suite: alphas must be positive");
    }
    for (const std::string& id : config.function_ids) {
        // Constructibility check at a harmless alpha; per-alpha failures are
        // handled as skips below.
        try {
            (void)make_test_function(id, config.norm, 2.0, config.budgets);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            // domain-specific failures handled per alpha
        }
    }

    for (double alpha : config.alphas) {
        for (const std::string& id : config.function_ids) {
            std::optional<TestFunction> fn;
            std::string construct_failure;
            try {
                fn = make_test_function(id, config.norm, alpha, config.budgets);
            } catch (const std::domain_error& e) {
                construct_failure = e.what();
            }
            for (Inequality ineq : config.inequalities) {
                if (!fn) {
                    report.skipped.push_back({ineq, id, alpha, construct_failure});
                    continue;
                }
                try {
                    switch (ineq) {
                        case Inequality::Shannon:
                            report.records.push_back(shannon_deficit(
                                *fn, alpha, config.budgets, config.overrides));
                            break;
                        case Inequality::ShannonViaB:
                            report.records.push_back(shannon_via_b_deficit(
                                *fn, alpha, config.budgets, config.overrides));
                            break;
                        case Inequality::KOS:
                            report.records.push_back(kos_deficit(
                                *fn, alpha, config.budgets, config.overrides));
                            break;
                    }
                } catch (const IntegrabilityError& e) {
                    report.skipped.push_back({ineq, id, alpha, e.what()});
                } catch (const std::domain_error& e) {
                    report.skipped.push_back({ineq, id, alpha, e.what()});
                } catch (const BudgetError& e) {
                    throw SuiteBudgetError(
                        std::string("run_suite: ") + e.what(), report);
                }
            }
        }
    }

    auto record_key = [](const DeficitRecord& r) {
        return std::make_tuple(static_cast<int>(r.inequality), r.function_id, r.alpha);
    };
    std::sort(report.records.begin(), report.records.end(),
              [&](const DeficitRecord& a, const DeficitRecord& b) {
                  return record_key(a) < record_key(b);
              });
    std::sort(report.skipped.begin(), report.skipped.end(),
              [](const SkippedRecord& a, const SkippedRecord& b) {
                  return std::make_tuple(static_cast<int>(a.inequality), a.function_id,
                                         a.alpha) <
                         std::make_tuple(static_cast<int>(b.inequality), b.function_id,
                                         b.alpha);
              });
    return report;
}

}  // namespace entroq
