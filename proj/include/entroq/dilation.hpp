#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace entroq {

using Point = std::vector<double>;

// Anisotropic dilation structure on R^N: the dilation acts coordinate-wise as
// x_i -> lambda^{nu_i} x_i with positive weights nu_i; the homogeneous
// dimension Q is the sum of the weights and governs volume scaling.
class DilationStructure {
public:
    explicit DilationStructure(std::vector<double> weights);

    int dim() const noexcept { return static_cast<int>(weights_.size()); }
    double q() const noexcept { return q_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weight(int i) const { return weights_.at(i); }

    // D_lambda(x). Throws std::domain_error for lambda <= 0.
    Point dilate(double lambda, std::span<const double> x) const;

    std::string describe() const;  // "weights=1,1,2"

    bool operator==(const DilationStructure& other) const {
        return weights_ == other.weights_;
    }

private:
    std::vector<double> weights_;
    double q_;  // always the sum of weights_, fixed at construction
};

enum class NormVariant { WeightedP, Max, Koranyi };

// A homogeneous quasi-norm for a dilation structure: continuous, nonnegative,
// |D_lambda x| = lambda |x|, |-x| = |x|, zero only at the origin. Three
// parametric families are provided:
//   WeightedP:  (sum_i |x_i|^{p/nu_i})^{1/p}
//   Max:        max_i |x_i|^{1/nu_i}
//   Koranyi:    ((sum_{V1} x_i^2)^2 + sum_{V2} x_j^2)^{1/4}
//               on structures whose weights split into a layer of 1s (V1)
//               and a layer of 2s (V2).
class QuasiNorm {
public:
    // p defaults to 2 * max_i(nu_i), which keeps the norm smooth away from 0.
    static QuasiNorm weighted_p(DilationStructure s);
    static QuasiNorm weighted_p(DilationStructure s, double p);
    static QuasiNorm max_norm(DilationStructure s);
    // Layers inferred from the weights; ConfigError unless every weight is
    // exactly 1 or 2 and at least one 1 appears.
    static QuasiNorm koranyi(DilationStructure s);
    static QuasiNorm koranyi(DilationStructure s, std::vector<int> first_layer,
                             std::vector<int> second_layer);

    NormVariant variant() const noexcept { return variant_; }
    double p() const noexcept { return p_; }  // WeightedP only
    const DilationStructure& structure() const noexcept { return structure_; }
    const std::vector<int>& first_layer() const noexcept { return first_layer_; }
    const std::vector<int>& second_layer() const noexcept { return second_layer_; }

    // |x|; throws std::invalid_argument when the dimension does not match.
    double operator()(std::span<const double> x) const;

    std::string describe() const;  // "p:2", "max", "koranyi"

private:
    QuasiNorm(DilationStructure s, NormVariant v) : structure_(std::move(s)), variant_(v) {}

    DilationStructure structure_;
    NormVariant variant_;
    double p_ = 0.0;
    std::vector<int> first_layer_, second_layer_;
};

double quasi_norm(const QuasiNorm& qn, std::span<const double> x);

// <x> = (1 + |x|^2)^{1/2}
double japanese_bracket(const QuasiNorm& qn, std::span<const double> x);

// | |D_lambda x| - lambda |x| |, the defect of the homogeneity axiom.
double homogeneity_residual(const QuasiNorm& qn, double lambda,
                            std::span<const double> x);

// Build a structure/norm pair from a JSON object of the form
//   {"weights": [...], "norm": {"variant": "max"|"weighted_p"|"koranyi",
//                               "p": <real>, "layers": [[...],[...]]}}
// Unknown keys are rejected with ConfigError.
QuasiNorm quasi_norm_from_json(const nlohmann::json& j);

}  // namespace entroq
