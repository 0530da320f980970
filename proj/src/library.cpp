#include "entroq/library.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "entroq/errors.hpp"

namespace entroq {

namespace {

// "name:k1=v1,k2=v2" -> name + parameter map
std::pair<std::string, std::map<std::string, double>> parse_id(const std::string& id) {
    const auto colon = id.find(':');
    std::string name = id.substr(0, colon);
    std::map<std::string, double> params;
    if (colon == std::string::npos) return {name, params};
    std::stringstream rest(id.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("test function '" + id + "': expected key=value after ':'");
        }
        const std::string key = item.substr(0, eq);
        try {
            size_t used = 0;
            const double value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
            params[key] = value;
        } catch (const std::exception&) {
            throw ConfigError("test function '" + id + "': bad numeric value in '" +
                              item + "'");
        }
    }
    return {name, params};
}

double take(std::map<std::string, double>& params, const std::string& key,
            double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& params,
                      const std::string& id) {
    if (!params.empty()) {
        throw ConfigError("test function '" + id + "': unknown parameter '" +
                          params.begin()->first + "'");
    }
}

}  // namespace

TestFunction make_test_function(const std::string& id, const QuasiNorm& norm,
                                double alpha, const Budgets& budgets) {
    auto [name, params] = parse_id(id);
    const double q = norm.structure().q();

    if (name == "extremizer") {
        reject_leftovers(params, id);
        if (!(alpha > 0.0)) {
            throw std::domain_error("extremizer: alpha must be positive");
        }
        const SharpConstants k = shannon_constant(norm, alpha, budgets.qmc());
        const double a = k.a();
        return TestFunction::radial(
            id, norm, [a, alpha](double r) { return std::exp(-a * std::pow(r, alpha)); });
    }
    if (name == "kos-profile") {
        reject_leftovers(params, id);
        if (!(alpha > 1.0)) {
            throw std::domain_error("kos-profile: alpha must exceed 1");
        }
        const SharpConstants k = kos_constant(norm, alpha, budgets.qmc());
        const double c = std::exp(-q * *k.log_c);
        return TestFunction::radial(
            id, norm,
            [c, alpha, q](double r) {
                return c * std::pow(1.0 + std::pow(r, alpha), -q);
            },
            TailBound::power_law(alpha * q));
    }
    if (name == "gaussian") {
        const double c = take(params, "c", 1.0);
        reject_leftovers(params, id);
        if (!(c > 0.0)) throw ConfigError("gaussian: c must be positive");
        return TestFunction::radial(
            id, norm, [c](double r) { return std::exp(-c * r * r); });
    }
    if (name == "stretched") {
        const double c = take(params, "c", 1.0);
        const double beta = take(params, "beta", 1.5);
        reject_leftovers(params, id);
        if (!(c > 0.0) || !(beta > 0.0)) {
            throw ConfigError("stretched: c and beta must be positive");
        }
        return TestFunction::radial(id, norm, [c, beta](double r) {
            return std::exp(-c * std::pow(r, beta));
        });
    }
    if (name == "exp") {
        reject_leftovers(params, id);
        return TestFunction::radial(id, norm, [](double r) { return std::exp(-r); });
    }
    if (name == "bump") {
        reject_leftovers(params, id);
        return TestFunction::radial(id, norm, [](double r) {
            if (r >= 1.0) return 0.0;
            const double t = 1.0 - r * r;
            return t * t;
        });
    }
    if (name == "mixture") {
        reject_leftovers(params, id);
        return TestFunction::radial(id, norm, [](double r) {
            const double d = r - 1.5;
            return std::exp(-r * r) + 0.5 * std::exp(-4.0 * d * d);
        });
    }
    throw ConfigError("unknown test function id '" + id + "'");
}

std::vector<std::string> library_ids() {
    return {"extremizer", "kos-profile", "gaussian", "stretched",
            "exp",        "bump",        "mixture"};
}

}  // namespace entroq
