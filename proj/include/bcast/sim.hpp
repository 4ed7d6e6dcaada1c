#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcast/channel.hpp"
#include "bcast/rlc_delay.hpp"

namespace bcast {

// n x T reception bitmap; slot indices are 1-based.
class ErasureTrace {
public:
    ErasureTrace(int n, std::int64_t T);
    ErasureTrace(int n, std::int64_t T, std::vector<std::uint8_t> bits);

    int n() const { return n_; }
    std::int64_t T() const { return T_; }
    bool received(int j, std::int64_t t) const { return bits_[static_cast<std::size_t>(j) * T_ + (t - 1)] != 0; }
    void set(int j, std::int64_t t, bool v) { bits_[static_cast<std::size_t>(j) * T_ + (t - 1)] = v ? 1 : 0; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    bool operator==(const ErasureTrace&) const = default;

private:
    int n_;
    std::int64_t T_;
    std::vector<std::uint8_t> bits_;
};

struct SimEstimate {
    int moment_order;
    double mean;
    double std_error;
    std::int64_t reps;
    std::uint64_t seed;

    bool operator==(const SimEstimate&) const = default;
};

enum class Extreme { Max, Min };

// Slot-by-slot Bernoulli simulation of the state-dependent channel. Receiver j
// needs c0_j successes and uses the success row for blocklength c0_j.
SimEstimate simulate_geometric(const Channel& ch, const TargetVector& c0, int r, std::int64_t reps,
                               std::uint64_t seed, Extreme which = Extreme::Max);

struct GfSimResult {
    SimEstimate delay;
    std::vector<std::int64_t> received;    // receptions observed at rank k
    std::vector<std::int64_t> innovative;  // of which raised the rank
    std::vector<double> innovation_freq;   // innovative / received (NaN if none)
};

// Random linear coding over GF(d), d prime <= 257, c <= 16, with incremental
// Gaussian elimination per receiver.
GfSimResult simulate_gf(const Channel& ch, int c, std::int64_t reps, std::uint64_t seed, int r = 1);

bool is_prime(std::int64_t d);

// Completion slot of workload m sent in blocks of c (last block m mod c), or
// nullopt when the trace ends first.
std::optional<std::int64_t> trace_delay(const ErasureTrace& trace, int c, std::int64_t m);

// Two-receiver trace on which blocklength cp = k c + l (1 <= l < c) finishes
// strictly later than c.
ErasureTrace adversarial_trace(int c, int cp, std::int64_t m);

struct TraceComparison {
    std::vector<int> blocklengths;
    std::int64_t traces = 0;
    std::int64_t horizon = 0;
    std::vector<std::int64_t> incomplete;              // per blocklength
    std::vector<std::vector<std::int64_t>> compared;   // [a][b]: both complete
    std::vector<std::vector<std::int64_t>> not_worse;  // [a][b]: T_b <= T_a
};

TraceComparison shared_trace_experiment(const Channel& ch, std::int64_t m, const std::vector<int>& blocklengths,
                                        std::int64_t traces, std::uint64_t seed);

// Independent Bernoulli(q_j) reception trace.
ErasureTrace random_trace(const Channel& ch, std::int64_t T, std::uint64_t seed, std::uint64_t index);

// Bitmap file: "BCTR", uint32 n, uint64 T (little endian), then row-major bits
// packed LSB first. A JSON sidecar <path>.json records provenance.
void write_trace(const ErasureTrace& trace, const std::string& path, const nlohmann::json& provenance);
ErasureTrace read_trace(const std::string& path);

}  // namespace bcast
