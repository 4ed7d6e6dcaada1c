#include "bcast/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "bcast/errors.hpp"
#include "bcast/parallel.hpp"
#include "bcast/rng.hpp"

namespace bcast {

ErasureTrace::ErasureTrace(int n, std::int64_t T) : ErasureTrace(n, T, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * T, 1)) {}

ErasureTrace::ErasureTrace(int n, std::int64_t T, std::vector<std::uint8_t> bits) : n_(n), T_(T), bits_(std::move(bits)) {
    if (n < 1 || T < 0) throw DomainError("trace dimensions must be n >= 1, T >= 0");
    if (bits_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(T))
        throw DomainError("trace bitmap size does not match n x T");
}

namespace {

constexpr std::int64_t kBlock = 4096;

// Welford accumulator, merged in block order so the result is schedule independent.
struct Moments {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        double d = x - mean;
        mean += d / count;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.count == 0) return;
        std::int64_t total = count + o.count;
        double d = o.mean - mean;
        mean += d * o.count / total;
        m2 += o.m2 + d * d * static_cast<double>(count) * o.count / total;
        count = total;
    }
};

template <class Draw>
SimEstimate run_blocks(std::int64_t reps, std::uint64_t seed, int r, Draw&& draw) {
    if (reps < 1) throw DomainError("reps must be >= 1");
    const auto blocks = static_cast<std::size_t>((reps + kBlock - 1) / kBlock);
    std::vector<Moments> parts(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
        std::int64_t hi = std::min(reps, lo + kBlock);
        for (std::int64_t i = lo; i < hi; ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            parts[b].add(std::pow(static_cast<double>(draw(rng, b)), r));
        }
    });
    Moments all;
    for (const auto& p : parts) all.merge(p);
    double var = all.count > 1 ? all.m2 / (all.count - 1) : 0.0;
    return {r, all.mean, std::sqrt(var / all.count), reps, seed};
}

}  // namespace

SimEstimate simulate_geometric(const Channel& ch, const TargetVector& c0, int r, std::int64_t reps,
                               std::uint64_t seed, Extreme which) {
    const int n = ch.n();
    if (static_cast<int>(c0.size()) != n) throw DomainError("target vector length must equal n");
    if (r < 1) throw DomainError("moment order must be >= 1");
    std::vector<std::vector<double>> rows(n);
    for (int j = 0; j < n; ++j) {
        if (c0[j] < 0) throw DomainError("targets must be non-negative");
        if (c0[j] > 0) rows[j] = success_row(ch.q(j), ch.d(), c0[j]);
    }
    const bool any_zero = std::any_of(c0.begin(), c0.end(), [](int v) { return v == 0; });
    return run_blocks(reps, seed, r, [&](CounterRng& rng, std::size_t) -> std::int64_t {
        if (which == Extreme::Min && any_zero) return 0;
        std::vector<int> held(n, 0);
        int remaining = 0;
        for (int j = 0; j < n; ++j) remaining += c0[j] > 0;
        for (std::int64_t t = 1;; ++t) {
            for (int j = 0; j < n; ++j) {
                if (held[j] == c0[j]) continue;
                if (rng.uniform() < rows[j][held[j]] && ++held[j] == c0[j]) {
                    if (which == Extreme::Min) return t;
                    --remaining;
                }
            }
            if (remaining == 0) return t;
        }
    });
}

bool is_prime(std::int64_t d) {
    if (d < 2) return false;
    for (std::int64_t k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

namespace {

// Row-echelon basis over GF(p); each stored row has a unit pivot.
class RankState {
public:
    RankState(int c, int p) : c_(c), p_(p) {}

    int rank() const { return static_cast<int>(pivots_.size()); }

    // Reduces v against the basis; adds it and returns true if it was innovative.
    bool absorb(std::vector<int> v, const std::vector<int>& inverse) {
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            int f = v[pivots_[i]];
            if (f == 0) continue;
            const auto& row = rows_[i];
            for (int k = 0; k < c_; ++k) v[k] = (v[k] + (p_ - f) * row[k]) % p_;
        }
        int lead = 0;
        while (lead < c_ && v[lead] == 0) ++lead;
        if (lead == c_) return false;
        int inv = inverse[v[lead]];
        for (int k = 0; k < c_; ++k) v[k] = v[k] * inv % p_;
        pivots_.push_back(lead);
        rows_.push_back(std::move(v));
        return true;
    }

private:
    int c_;
    int p_;
    std::vector<int> pivots_;
    std::vector<std::vector<int>> rows_;
};

}  // namespace

GfSimResult simulate_gf(const Channel& ch, int c, std::int64_t reps, std::uint64_t seed, int r) {
    if (ch.d().is_infinite() || !is_prime(ch.d().value()))
        throw NonPrimeField("simulate_gf: field size must be a prime, got " + ch.d().str());
    const int p = static_cast<int>(ch.d().value());
    if (p > 257) throw GuardError("simulate_gf: field size must be <= 257");
    if (c < 1 || c > 16) throw GuardError("simulate_gf: need 1 <= c <= 16");
    const int n = ch.n();
    std::vector<int> inverse(p, 0);
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1) inverse[a] = b;

    const auto blocks = static_cast<std::size_t>((reps + kBlock - 1) / kBlock);
    std::vector<std::vector<std::int64_t>> seen(blocks, std::vector<std::int64_t>(c, 0));
    std::vector<std::vector<std::int64_t>> fresh(blocks, std::vector<std::int64_t>(c, 0));
    GfSimResult out;
    out.delay = run_blocks(reps, seed, r, [&](CounterRng& rng, std::size_t b) -> std::int64_t {
        std::vector<RankState> state(n, RankState(c, p));
        std::vector<int> v(c);
        int remaining = n;
        for (std::int64_t t = 1;; ++t) {
            for (int k = 0; k < c; ++k) v[k] = static_cast<int>(rng.below(p));
            for (int j = 0; j < n; ++j) {
                if (state[j].rank() == c) continue;
                if (rng.uniform() >= ch.q(j)) continue;
                int k = state[j].rank();
                ++seen[b][k];
                if (state[j].absorb(v, inverse)) {
                    ++fresh[b][k];
                    if (state[j].rank() == c) --remaining;
                }
            }
            if (remaining == 0) return t;
        }
    });
    out.received.assign(c, 0);
    out.innovative.assign(c, 0);
    for (std::size_t b = 0; b < blocks; ++b)
        for (int k = 0; k < c; ++k) {
            out.received[k] += seen[b][k];
            out.innovative[k] += fresh[b][k];
        }
    for (int k = 0; k < c; ++k)
        out.innovation_freq.push_back(out.received[k] ? static_cast<double>(out.innovative[k]) / out.received[k]
                                                       : std::numeric_limits<double>::quiet_NaN());
    return out;
}

std::optional<std::int64_t> trace_delay(const ErasureTrace& trace, int c, std::int64_t m) {
    if (c < 1 || m < 1) throw DomainError("trace_delay: need c >= 1 and m >= 1");
    std::int64_t start = 1;  // first slot of the current block
    std::int64_t finish = 0;
    for (std::int64_t left = m; left > 0;) {
        const std::int64_t size = std::min<std::int64_t>(c, left);
        std::int64_t block_end = start - 1;
        for (int j = 0; j < trace.n(); ++j) {
            std::int64_t got = 0, t = start;
            for (; t <= trace.T() && got < size; ++t) got += trace.received(j, t);
            if (got < size) return std::nullopt;
            block_end = std::max(block_end, t - 1);
        }
        finish = block_end;
        start = block_end + 1;
        left -= size;
    }
    return finish;
}

namespace {

bool beats(const ErasureTrace& tr, int c, int cp, std::int64_t m) {
    auto a = trace_delay(tr, c, m);
    auto b = trace_delay(tr, cp, m);
    return a && b && *b > *a;
}

}  // namespace

ErasureTrace adversarial_trace(int c, int cp, std::int64_t m) {
    if (c < 2 || cp <= c) throw DomainError("adversarial_trace: need 2 <= c < cp");
    const int k = cp / c, l = cp % c;
    if (l == 0) throw DomainError("adversarial_trace: cp is a multiple of c, no counterexample exists");
    if (m <= cp) throw DomainError("adversarial_trace: workload must exceed cp");
    const std::int64_t gap = c - l;
    const std::int64_t horizon = m + 2 * gap + c;
    ErasureTrace tr(2, horizon);
    for (std::int64_t t = 1; t <= gap; ++t) {
        tr.set(0, static_cast<std::int64_t>(k) * c + t, false);
        tr.set(1, static_cast<std::int64_t>(k) * c + c + t, false);
    }
    if (beats(tr, c, cp, m)) return tr;

    // fall back to random traces with failures concentrated near block boundaries
    const std::int64_t wide = 2 * horizon;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        CounterRng rng(0xAD5E75A1ull, i);
        ErasureTrace cand(2, wide);
        for (int j = 0; j < 2; ++j)
            for (std::int64_t t = 1; t <= wide; ++t) {
                bool edge = (t % c) <= 1 || (t % cp) <= 1 || (t % c) >= c - 1 || (t % cp) >= cp - 1;
                cand.set(j, t, rng.uniform() >= (edge ? 0.4 : 0.05));
            }
        if (beats(cand, c, cp, m)) return cand;
    }
    throw NoCounterexample("adversarial_trace: no trace found with T(cp) > T(c)");
}

ErasureTrace random_trace(const Channel& ch, std::int64_t T, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    ErasureTrace tr(ch.n(), T);
    for (int j = 0; j < ch.n(); ++j)
        for (std::int64_t t = 1; t <= T; ++t) tr.set(j, t, rng.uniform() < ch.q(j));
    return tr;
}

TraceComparison shared_trace_experiment(const Channel& ch, std::int64_t m, const std::vector<int>& blocklengths,
                                        std::int64_t traces, std::uint64_t seed) {
    if (blocklengths.empty()) throw DomainError("shared_trace_experiment: no blocklengths");
    for (int c : blocklengths)
        if (c < 1) throw DomainError("shared_trace_experiment: blocklengths must be >= 1");
    if (m < 1 || traces < 1) throw DomainError("shared_trace_experiment: need m >= 1 and traces >= 1");
    const std::size_t b = blocklengths.size();
    const double q_min = *std::min_element(ch.q().begin(), ch.q().end());
    const int c_max = *std::max_element(blocklengths.begin(), blocklengths.end());
    TraceComparison out;
    out.blocklengths = blocklengths;
    out.traces = traces;
    out.horizon = static_cast<std::int64_t>(20.0 * std::ceil((m + c_max) / q_min));

    std::vector<std::vector<std::optional<std::int64_t>>> delays(static_cast<std::size_t>(traces));
    parallel_for(static_cast<std::size_t>(traces), [&](std::size_t i) {
        auto tr = random_trace(ch, out.horizon, seed, i);
        for (int c : blocklengths) delays[i].push_back(trace_delay(tr, c, m));
    });
    out.incomplete.assign(b, 0);
    out.compared.assign(b, std::vector<std::int64_t>(b, 0));
    out.not_worse.assign(b, std::vector<std::int64_t>(b, 0));
    for (const auto& d : delays)
        for (std::size_t x = 0; x < b; ++x) {
            if (!d[x]) {
                ++out.incomplete[x];
                continue;
            }
            for (std::size_t y = 0; y < b; ++y) {
                if (!d[y]) continue;
                ++out.compared[x][y];
                if (*d[y] <= *d[x]) ++out.not_worse[x][y];
            }
        }
    return out;
}

void write_trace(const ErasureTrace& trace, const std::string& path, const nlohmann::json& provenance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write trace file " + path);
    out.write("BCTR", 4);
    auto put = [&](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
    };
    put(static_cast<std::uint32_t>(trace.n()), 4);
    put(static_cast<std::uint64_t>(trace.T()), 8);
    const auto& bits = trace.bits();
    std::vector<std::uint8_t> packed((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) packed[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    out.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));

    nlohmann::json side;
    side["n"] = trace.n();
    side["T"] = trace.T();
    side["layout"] = "row-major bits, LSB first";
    side["provenance"] = provenance;
    std::ofstream js(path + ".json");
    js << side.dump(2) << "\n";
}

ErasureTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read trace file " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "BCTR") throw DomainError("not a trace file: " + path);
    auto get = [&](int bytes) {
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) {
            int ch = in.get();
            if (ch == EOF) throw DomainError("truncated trace file " + path);
            v |= static_cast<std::uint64_t>(ch & 0xFF) << (8 * i);
        }
        return v;
    };
    const auto n = static_cast<int>(get(4));
    const auto T = static_cast<std::int64_t>(get(8));
    const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(T);
    std::vector<std::uint8_t> packed((total + 7) / 8);
    in.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (!in) throw DomainError("truncated trace file " + path);
    std::vector<std::uint8_t> bits(total);
    for (std::size_t i = 0; i < total; ++i) bits[i] = (packed[i / 8] >> (i % 8)) & 1u;
    return ErasureTrace(n, T, std::move(bits));
}

}  // namespace bcast
