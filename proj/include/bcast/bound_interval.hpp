#pragma once

#include <optional>
#include <string>

namespace bcast {

struct BoundInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::string method;
    std::optional<double> param;        // upper-bound tuning value (s), when one is used
    std::optional<double> lower_param;  // lower-bound tuning value (t), when one is used
};

}  // namespace bcast
