#pragma once

#include <string>
#include <vector>

#include "entroq/functionals.hpp"

namespace entroq {

// Shipped test functions, addressable by string id:
//   extremizer           exp(-A_{Q,alpha} r^alpha), the Shannon equality case
//   kos-profile          c_{Q,alpha} (1 + r^alpha)^{-Q}, the KOS equality case
//                        (alpha > 1)
//   gaussian[:c=<v>]     exp(-c r^2), default c = 1
//   stretched[:c=<v>,beta=<v>]
//                        exp(-c r^beta), defaults c = 1, beta = 1.5
//   exp                  exp(-r)
//   bump                 (1 - r^2)^2 on r < 1, else 0
//   mixture              exp(-r^2) + 0.5 exp(-4 (r - 1.5)^2)
// Unknown ids raise ConfigError; kos-profile with alpha <= 1 raises
// std::domain_error.
TestFunction make_test_function(const std::string& id, const QuasiNorm& norm,
                                double alpha, const Budgets& budgets = {});

// The ids above, in suite order.
std::vector<std::string> library_ids();

}  // namespace entroq
