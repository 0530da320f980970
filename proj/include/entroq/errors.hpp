#pragma once

#include <stdexcept>
#include <string>

namespace entroq {

// Invalid structure/norm/preset configuration: bad weights, unsupported
// norm/method combination, malformed JSON config, unknown function id.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// An integrand produced non-finite values at too many nodes.
class IntegrandError : public std::runtime_error {
public:
    explicit IntegrandError(const std::string& msg) : std::runtime_error(msg) {}
};

// The function has no usable L1 mass (below 1e-300).
class DegenerateFunctionError : public std::runtime_error {
public:
    explicit DegenerateFunctionError(const std::string& msg)
        : std::runtime_error(msg) {}
};

// A required moment integral diverges for the given function/alpha/structure,
// i.e. the function falls outside the weighted L^{1,alpha} space.
class IntegrabilityError : public std::domain_error {
public:
    explicit IntegrabilityError(const std::string& msg)
        : std::domain_error(msg) {}
};

}  // namespace entroq
