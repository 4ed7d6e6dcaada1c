#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bcast {

struct CheckResult {
    int id;
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

struct VerifyOptions {
    bool quick = false;  // reduced grids and replication counts
    std::uint64_t seed = 20240601;
};

CheckResult check_tri_oracle(const VerifyOptions& opt);
CheckResult check_sandwiches(const VerifyOptions& opt);
CheckResult check_monte_carlo(const VerifyOptions& opt);
CheckResult check_blocklength_monotone(const VerifyOptions& opt);
CheckResult check_sample_path(const VerifyOptions& opt);
CheckResult check_per_packet(const VerifyOptions& opt);
CheckResult check_evt(const VerifyOptions& opt);
CheckResult check_exponential(const VerifyOptions& opt);
CheckResult check_orderings(const VerifyOptions& opt);

std::vector<CheckResult> run_all_checks(const VerifyOptions& opt);

// "PASS [3] name (1.2s): detail"
std::string format_check(const CheckResult& r);

}  // namespace bcast
