#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "entroq/constants.hpp"
#include "entroq/dilation.hpp"
#include "entroq/integrate.hpp"

namespace entroq {

// Shared evaluation budgets for quadrature and QMC.
struct Budgets {
    double rel_tol = 1e-10;
    long max_evals = 1'000'000;
    long qmc_samples = 262144;  // 2^18
    int qmc_replicates = 16;
    std::uint64_t seed = 0x243f6a8885a308d3ULL;

    QmcOptions qmc() const { return {qmc_samples, qmc_replicates, seed}; }
    QmcOptions qmc(std::uint64_t salt) const;
};

// Decay class of a test function, used to decide whether weighted moments
// exist before integrating them. A PowerLaw bound means |u(x)| ~ |x|^{-k}.
struct TailBound {
    enum class Kind { SuperPolynomial, PowerLaw };
    Kind kind = Kind::SuperPolynomial;
    double exponent = 0.0;

    static TailBound super_polynomial() { return {}; }
    static TailBound power_law(double k) { return {Kind::PowerLaw, k}; }

    // int |x|^alpha |u| < inf needs k > q + alpha for a power-law tail.
    bool moment_finite(double alpha, double q) const {
        return kind == Kind::SuperPolynomial || exponent > q + alpha;
    }
};

// A nonnegative integrable function on the structure, either as a radial
// profile in r = |x| or as a general pointwise evaluator. Values are taken in
// absolute value at evaluation time. Evaluators must be pure.
class TestFunction {
public:
    static TestFunction radial(std::string id, QuasiNorm norm,
                               std::function<double(double)> profile,
                               TailBound tail = {});
    static TestFunction general(std::string id, QuasiNorm norm,
                                std::function<double(std::span<const double>)> eval,
                                TailBound tail = {});

    bool is_radial() const noexcept { return static_cast<bool>(profile_); }
    double profile(double r) const;                   // radial kind only
    double operator()(std::span<const double> x) const;  // both kinds

    const QuasiNorm& norm() const noexcept { return norm_; }
    const DilationStructure& structure() const noexcept { return norm_.structure(); }
    const std::string& id() const noexcept { return id_; }
    const TailBound& tail() const noexcept { return tail_; }

private:
    TestFunction(std::string id, QuasiNorm norm, TailBound tail)
        : id_(std::move(id)), norm_(std::move(norm)), tail_(tail) {}

    std::string id_;
    QuasiNorm norm_;
    TailBound tail_;
    std::function<double(double)> profile_;
    std::function<double(std::span<const double>)> general_;
};

struct FieldErrors {
    double l1 = 0.0;
    double entropy = 0.0;
    double moment_alpha = 0.0;
    double bracket_moment = 0.0;
};

// The functionals entering the inequalities:
//   l1             = int |u|
//   entropy        = int (|u|/l1) log(l1/|u|)      (0 where u = 0)
//   moment_alpha   = int |x|^alpha |u|
//   bracket_moment = int <x>^alpha |u|
struct FunctionalValues {
    double l1 = 0.0;
    double entropy = 0.0;
    double moment_alpha = 0.0;
    double bracket_moment = 0.0;
    FieldErrors err;
    long evaluations = 0;
};

// Radial functions reduce to |S| int_0^inf (...) r^{Q-1} dr; general ones go
// through qmc_integral. Throws DegenerateFunctionError when l1 < 1e-300 and
// IntegrabilityError when the alpha-moment provably diverges.
FunctionalValues evaluate_functionals(const TestFunction& u, double alpha,
                                      const Budgets& budgets = {});

// L1 and entropy only, skipping the weighted moments. Sufficient for the KOS
// deficit, which is meaningful even when the alpha-moment diverges.
FunctionalValues evaluate_entropy_l1(const TestFunction& u,
                                     const Budgets& budgets = {});

// u_lambda(x) = lambda^Q u(D_lambda x); preserves the L1 norm.
TestFunction dilate_function(const TestFunction& u, double lambda);

// c * u for c > 0.
TestFunction scale_function(const TestFunction& u, double c);

// (Q/alpha) ln( (alpha e A / Q) * moment_alpha / l1 ).
double shannon_rhs(const FunctionalValues& values, const SharpConstants& consts);

// Q int (|u|/l1) ln( C (1 + |x|^alpha) ) dx   (normalized form).
double kos_rhs(const TestFunction& u, double alpha, const SharpConstants& consts,
               const Budgets& budgets = {});

}  // namespace entroq
