#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entroq/functionals.hpp"
#include "entroq/library.hpp"

namespace entroq {

enum class Inequality { Shannon, ShannonViaB, KOS };

std::string to_string(Inequality ineq);
Inequality inequality_from_string(const std::string& s);

// Test hook: replace a sharp constant (linear space) before computing the
// right-hand sides. Unstable, exists for negative-path testing only.
struct ConstantOverrides {
    std::optional<double> a;
    std::optional<double> c;
    std::optional<double> b;
    bool any() const { return a || c || b; }
};

// RHS - LHS of one inequality for one function, in natural-log units.
// Nonnegative up to integration error; zero at equality cases.
struct DeficitRecord {
    Inequality inequality;
    std::string function_id;
    double alpha;
    double deficit;
    double error_estimate;
    bool passed;  // deficit >= -3 * error_estimate
};

// A (function, alpha, inequality) combination whose hypotheses fail, e.g.
// alpha <= 1 for KOS or a divergent alpha-moment.
struct SkippedRecord {
    Inequality inequality;
    std::string function_id;
    double alpha;
    std::string reason;
};

struct VerificationReport {
    std::string structure_label;
    std::vector<double> weights;
    double q = 0.0;
    std::string norm_label;
    std::vector<DeficitRecord> records;
    std::vector<SkippedRecord> skipped;
    std::uint64_t seed = 0;
    Budgets budgets;
    std::string timestamp;  // ISO-8601 UTC

    bool all_passed() const;
};

// Suite-level budget exhaustion: carries everything computed so far.
class SuiteBudgetError : public std::runtime_error {
public:
    SuiteBudgetError(const std::string& msg, VerificationReport partial)
        : std::runtime_error(msg), partial_(std::move(partial)) {}
    const VerificationReport& partial() const noexcept { return partial_; }

private:
    VerificationReport partial_;
};

DeficitRecord shannon_deficit(const TestFunction& u, double alpha,
                              const Budgets& budgets = {},
                              const ConstantOverrides& overrides = {});

// Same inequality with the KOS-derived constant B in place of alpha e A / Q;
// exceeds the sharp deficit by the u-independent gap (Q/alpha) ln(BQ/(alpha e A)).
DeficitRecord shannon_via_b_deficit(const TestFunction& u, double alpha,
                                    const Budgets& budgets = {},
                                    const ConstantOverrides& overrides = {});

DeficitRecord kos_deficit(const TestFunction& u, double alpha,
                          const Budgets& budgets = {},
                          const ConstantOverrides& overrides = {});

struct LambdaOptRow {
    double lambda;
    double bound;  // Q ln C + Q ln(lambda + lambda^{1-alpha} m)
};

// Scan of the pre-optimization KOS bound over a lambda grid. The closed-form
// minimizer lambda* = ((alpha-1) m)^{1/alpha} must beat the grid, and the
// minimized bound must equal (Q/alpha) ln(B m).
struct LambdaOptReport {
    std::vector<LambdaOptRow> rows;
    double moment = 0.0;       // normalized alpha-moment m
    double lambda_star = 0.0;
    double grid_argmin = 0.0;
    double bound_at_star = 0.0;
    double expected_min = 0.0;
    double identity_residual = 0.0;  // |bound_at_star - expected_min|
    bool star_beats_grid = false;
};

LambdaOptReport lambda_optimization_check(const TestFunction& u, double alpha,
                                          std::span<const double> lambdas,
                                          const Budgets& budgets = {});

struct SuiteConfig {
    explicit SuiteConfig(QuasiNorm n) : norm(std::move(n)) {}

    QuasiNorm norm;
    std::string structure_label;  // defaults to the structure description
    std::vector<double> alphas = {1.5, 2.0, 3.0};
    std::vector<std::string> function_ids;  // empty list -> empty report
    std::vector<Inequality> inequalities = {Inequality::Shannon,
                                            Inequality::ShannonViaB, Inequality::KOS};
    Budgets budgets;
    ConstantOverrides overrides;
};

// Runs every (function, alpha, inequality) combination. Hypothesis failures
// become skipped entries; the suite keeps going. Records and skips are sorted
// by (inequality, function_id, alpha). Budget exhaustion raises
// SuiteBudgetError with the partial report.
VerificationReport run_suite(const SuiteConfig& config);

}  // namespace entroq
