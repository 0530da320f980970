#include "entroq/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entroq/errors.hpp"

namespace entroq {

namespace {

std::string join_reals(const std::vector<double>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        double w = v[i];
        if (w == std::floor(w) && std::abs(w) < 1e15) {
            os << static_cast<long long>(w);
        } else {
            os << w;
        }
    }
    return os.str();
}

}  // namespace

DilationStructure::DilationStructure(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw ConfigError("dilation structure needs at least one weight");
    }
    double q = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ConfigError("dilation weights must be positive and finite");
        }
        q += w;
    }
    q_ = q;
}

Point DilationStructure::dilate(double lambda, std::span<const double> x) const {
    if (!(lambda > 0.0)) {
        throw std::domain_error("dilate: lambda must be positive");
    }
    if (static_cast<int>(x.size()) != dim()) {
        throw std::invalid_argument("dilate: point dimension mismatch");
    }
    Point out(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        out[i] = std::pow(lambda, weights_[i]) * x[i];
    }
    return out;
}

std::string DilationStructure::describe() const {
    return "weights=" + join_reals(weights_);
}

QuasiNorm QuasiNorm::weighted_p(DilationStructure s) {
    const double p = 2.0 * *std::max_element(s.weights().begin(), s.weights().end());
    return weighted_p(std::move(s), p);
}

QuasiNorm QuasiNorm::weighted_p(DilationStructure s, double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ConfigError("weighted_p norm: exponent p must be positive");
    }
    QuasiNorm qn(std::move(s), NormVariant::WeightedP);
    qn.p_ = p;
    return qn;
}

QuasiNorm QuasiNorm::max_norm(DilationStructure s) {
    return QuasiNorm(std::move(s), NormVariant::Max);
}

QuasiNorm QuasiNorm::koranyi(DilationStructure s) {
    std::vector<int> first, second;
    for (int i = 0; i < s.dim(); ++i) {
        if (s.weight(i) == 1.0) {
            first.push_back(i);
        } else if (s.weight(i) == 2.0) {
            second.push_back(i);
        } else {
            throw ConfigError(
                "koranyi norm requires weights of the (1,2)-layer form, got " +
                s.describe());
        }
    }
    return koranyi(std::move(s), std::move(first), std::move(second));
}

QuasiNorm QuasiNorm::koranyi(DilationStructure s, std::vector<int> first_layer,
                             std::vector<int> second_layer) {
    if (first_layer.empty() || second_layer.empty()) {
        throw ConfigError(
            "koranyi norm requires nonempty weight-1 and weight-2 layers, got " +
            s.describe());
    }
    std::vector<bool> seen(s.dim(), false);
    auto check = [&](const std::vector<int>& layer, double expected) {
        for (int i : layer) {
            if (i < 0 || i >= s.dim() || seen[i]) {
                throw ConfigError("koranyi norm: layers must partition the coordinates");
            }
            if (s.weight(i) != expected) {
                throw ConfigError(
                    "koranyi norm requires weights of the (1,2)-layer form, got " +
                    s.describe());
            }
            seen[i] = true;
        }
    };
    check(first_layer, 1.0);
    check(second_layer, 2.0);
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw ConfigError("koranyi norm: layers must partition the coordinates");
    }
    QuasiNorm qn(std::move(s), NormVariant::Koranyi);
    qn.first_layer_ = std::move(first_layer);
    qn.second_layer_ = std::move(second_layer);
    return qn;
}

double QuasiNorm::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != structure_.dim()) {
        throw std::invalid_argument("quasi_norm: point dimension mismatch");
    }
    switch (variant_) {
        case NormVariant::WeightedP: {
            double sum = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                sum += std::pow(std::abs(x[i]), p_ / structure_.weight(i));
            }
            return std::pow(sum, 1.0 / p_);
        }
        case NormVariant::Max: {
            double best = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
                const double nu = structure_.weight(i);
                const double a = std::abs(x[i]);
                const double v = nu == 1.0 ? a : std::pow(a, 1.0 / nu);
                best = std::max(best, v);
            }
            return best;
        }
        case NormVariant::Koranyi: {
            double s1 = 0.0, s2 = 0.0;
            for (int i : first_layer_) s1 += x[i] * x[i];
            for (int j : second_layer_) s2 += x[j] * x[j];
            return std::pow(s1 * s1 + s2, 0.25);
        }
    }
    return 0.0;  // unreachable
}

std::string QuasiNorm::describe() const {
    switch (variant_) {
        case NormVariant::WeightedP: {
            std::ostringstream os;
            os << "p:" << p_;
            return os.str();
        }
        case NormVariant::Max:
            return "max";
        case NormVariant::Koranyi:
            return "koranyi";
    }
    return "";
}

double quasi_norm(const QuasiNorm& qn, std::span<const double> x) { return qn(x); }

double japanese_bracket(const QuasiNorm& qn, std::span<const double> x) {
    return std::hypot(1.0, qn(x));
}

double homogeneity_residual(const QuasiNorm& qn, double lambda,
                            std::span<const double> x) {
    if (!(lambda > 0.0)) {
        throw std::domain_error("homogeneity_residual: lambda must be positive");
    }
    const Point xd = qn.structure().dilate(lambda, x);
    return std::abs(qn(xd) - lambda * qn(x));
}

QuasiNorm quasi_norm_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("norm preset: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() != "weights" && it.key() != "norm") {
            throw ConfigError("norm preset: unknown key '" + it.key() + "'");
        }
    }
    if (!j.contains("weights") || !j["weights"].is_array()) {
        throw ConfigError("norm preset: missing 'weights' array");
    }
    std::vector<double> weights;
    for (const auto& w : j["weights"]) {
        if (!w.is_number()) throw ConfigError("norm preset: weights must be numbers");
        weights.push_back(w.get<double>());
    }
    DilationStructure s(std::move(weights));

    if (!j.contains("norm")) return QuasiNorm::weighted_p(std::move(s));
    const auto& n = j["norm"];
    if (!n.is_object()) throw ConfigError("norm preset: 'norm' must be an object");
    for (auto it = n.begin(); it != n.end(); ++it) {
        if (it.key() != "variant" && it.key() != "p" && it.key() != "layers") {
            throw ConfigError("norm preset: unknown norm key '" + it.key() + "'");
        }
    }
    const std::string variant = n.value("variant", std::string("weighted_p"));
    if (variant == "max") {
        return QuasiNorm::max_norm(std::move(s));
    }
    if (variant == "weighted_p") {
        if (n.contains("p")) {
            if (!n["p"].is_number()) throw ConfigError("norm preset: 'p' must be a number");
            return QuasiNorm::weighted_p(std::move(s), n["p"].get<double>());
        }
        return QuasiNorm::weighted_p(std::move(s));
    }
    if (variant == "koranyi") {
        if (n.contains("layers")) {
            const auto& layers = n["layers"];
            if (!layers.is_array() || layers.size() != 2) {
                throw ConfigError("norm preset: 'layers' must be a pair of index arrays");
            }
            std::vector<int> first = layers[0].get<std::vector<int>>();
            std::vector<int> second = layers[1].get<std::vector<int>>();
            return QuasiNorm::koranyi(std::move(s), std::move(first), std::move(second));
        }
        return QuasiNorm::koranyi(std::move(s));
    }
    throw ConfigError("norm preset: unknown variant '" + variant + "'");
}

}  // namespace entroq
