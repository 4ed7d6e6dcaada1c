#include "bcast/rlc_delay.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "bcast/errors.hpp"
#include "bcast/special_fns.hpp"

namespace bcast {

std::string to_string(SeriesPath p) {
    switch (p) {
        case SeriesPath::Auto: return "auto";
        case SeriesPath::Composition: return "composition";
        case SeriesPath::Binomial: return "binomial";
        case SeriesPath::Beta: return "beta";
        case SeriesPath::StateOccupation: return "state_occupation";
    }
    return "?";
}

namespace {

constexpr int kCompositionLimit = 400;
// Auto routing only picks composition enumeration for short horizons.
constexpr int kCompositionAuto = 60;
constexpr double kCompositionWork = 5e7;
constexpr std::int64_t kMaxSteps = 10000000;

// Survival function P(Y_j > x) of one receiver, visited for x = c, c+1, ...
class Tail {
public:
    virtual ~Tail() = default;
    virtual double next() = 0;
};

class CompositionTail : public Tail {
public:
    explicit CompositionTail(const std::vector<double>& row) : row_(row), c_(static_cast<int>(row.size())) {
        // pw_[k][a] = (1-q_k)^{a-1} q_k
        pw_.assign(c_, std::vector<double>(kCompositionLimit + 1, 0.0));
        for (int k = 0; k < c_; ++k) {
            double v = row_[k];
            for (int a = 1; a <= kCompositionLimit; ++a) {
                pw_[k][a] = v;
                v *= 1.0 - row_[k];
            }
        }
        t_ = c_ - 1;
    }

    double next() override {
        ++t_;
        if (t_ > kCompositionLimit || binomial(t_ - 1, c_ - 1) > kCompositionWork)
            throw GuardError("composition enumeration too large at t = " + std::to_string(t_) +
                             "; use another series path");
        cdf_ += pmf(t_);
        return std::max(0.0, 1.0 - cdf_);
    }

private:
    // sum over alpha in A_t of prod_k (1-q_k)^{alpha_k-1} q_k
    double pmf(int t) const {
        double total = 0.0;
        std::function<void(int, int, double)> walk = [&](int k, int left, double acc) {
            if (k == c_ - 1) {
                total += acc * pw_[k][left];
                return;
            }
            const int rest = c_ - 1 - k;  // parts still to place after this one
            for (int a = 1; a <= left - rest; ++a) walk(k + 1, left - a, acc * pw_[k][a]);
        };
        walk(0, t, 1.0);
        return total;
    }

    std::vector<double> row_;
    int c_;
    std::vector<std::vector<double>> pw_;
    int t_;
    double cdf_ = 0.0;
};

class BinomialSeriesTail : public Tail {
public:
    BinomialSeriesTail(double q, int c) : q_(q), c_(c), t_(c - 1) {}

    double next() override {
        ++t_;
        // C(t-1,c-1) (1-q)^{t-c} q^c, updated by its ratio in t
        if (t_ == c_)
            term_ = std::pow(q_, c_);
        else
            term_ *= static_cast<double>(t_ - 1) / static_cast<double>(t_ - c_) * (1.0 - q_);
        cdf_ += term_;
        return std::max(0.0, 1.0 - cdf_);
    }

private:
    double q_;
    int c_;
    int t_;
    double term_ = 0.0;
    double cdf_ = 0.0;
};

class BetaTail : public Tail {
public:
    BetaTail(double q, int c) : q_(q), c_(c), x_(c - 1) {}

    double next() override {
        ++x_;
        return reg_inc_beta_complement({c_, static_cast<double>(x_ - c_ + 1), q_});
    }

private:
    double q_;
    int c_;
    std::int64_t x_;
};

class OccupationTail : public Tail {
public:
    explicit OccupationTail(const std::vector<double>& row) : row_(row), held_(row.size(), 0.0) {
        held_[0] = 1.0;
        for (std::size_t i = 1; i < row_.size(); ++i) step();
    }

    double next() override {
        step();
        double alive = 0.0;
        for (double v : held_) alive += v;
        return alive;
    }

private:
    void step() {
        const std::size_t c = row_.size();
        for (std::size_t k = c; k-- > 0;) held_[k] = held_[k] * (1.0 - row_[k]) + (k ? held_[k - 1] * row_[k - 1] : 0.0);
    }

    std::vector<double> row_;
    std::vector<double> held_;  // held_[k]: probability of holding exactly k packets
};

}  // namespace

std::vector<double> genneg_ccdf_table(const std::vector<double>& row, int xmax) {
    std::vector<double> out(static_cast<std::size_t>(xmax) + 1, 1.0);
    const int c = static_cast<int>(row.size());
    if (xmax < c) return out;
    OccupationTail tail(row);
    for (int x = c; x <= xmax; ++x) out[x] = tail.next();
    return out;
}

SeriesResult rlc_moment_series(const Channel& ch, int c, int r, double tol, SeriesPath path) {
    if (c < 1) throw DomainError("rlc_moment_series: c must be >= 1");
    if (r < 1 || r > 4) throw GuardError("rlc_moment_series: need 1 <= r <= 4");
    if (!(tol > 0.0)) throw DomainError("rlc_moment_series: tol must be positive");
    const int n = ch.n();
    const SuccessMatrix sm(ch, c);
    const AssumptionClass cls = classify(ch);

    double mu_max = 0.0, sigma_max = 0.0, q_min = 1.0;
    for (int j = 0; j < n; ++j) {
        double mu = 0.0, var = 0.0;
        for (int k = 1; k <= c; ++k) {
            double p = sm.at(j, k);
            mu += 1.0 / p;
            var += (1.0 - p) / (p * p);
            q_min = std::min(q_min, p);
        }
        mu_max = std::max(mu_max, mu);
        sigma_max = std::max(sigma_max, std::sqrt(var));
    }
    const double horizon = mu_max + 10.0 * sigma_max;

    if (path == SeriesPath::Auto) {
        if (cls == AssumptionClass::A1)
            path = horizon + 17 < kCompositionAuto ? SeriesPath::Composition : SeriesPath::StateOccupation;
        else
            path = SeriesPath::Beta;
    }
    if ((path == SeriesPath::Binomial || path == SeriesPath::Beta) && cls == AssumptionClass::A1)
        throw DomainError("series path '" + to_string(path) + "' requires an infinite field");

    // Homogeneous Beta path evaluates one tail and raises it to the n-th power.
    const bool power_form = path == SeriesPath::Beta && cls == AssumptionClass::A3;
    std::vector<std::unique_ptr<Tail>> tails;
    for (int j = 0; j < (power_form ? 1 : n); ++j) {
        switch (path) {
            case SeriesPath::Composition: tails.push_back(std::make_unique<CompositionTail>(sm.row(j))); break;
            case SeriesPath::Binomial: tails.push_back(std::make_unique<BinomialSeriesTail>(ch.q(j), c)); break;
            case SeriesPath::Beta: tails.push_back(std::make_unique<BetaTail>(ch.q(j), c)); break;
            case SeriesPath::StateOccupation: tails.push_back(std::make_unique<OccupationTail>(sm.row(j))); break;
            case SeriesPath::Auto: break;
        }
    }

    const double threshold = tol * q_min / n;
    double value = std::pow(static_cast<double>(c), r);
    std::int64_t terms = 0;
    int quiet = 0;
    double worst_single = 1.0;
    std::int64_t x = c;
    for (;; ++x) {
        if (x - c > kMaxSteps) throw NonConvergence("rlc_moment_series: stopping rule not met within the iteration cap");
        double log_all = 0.0;
        worst_single = 0.0;
        for (auto& t : tails) {
            double s = t->next();
            worst_single = std::max(worst_single, s);
            log_all += std::log1p(-std::min(s, 1.0));
        }
        if (power_form) log_all *= n;
        double ccdf = std::isinf(log_all) ? 1.0 : -std::expm1(log_all);
        // every m in [x^r, (x+1)^r) has floor(m^{1/r}) = x
        double xd = static_cast<double>(x);
        double weight = std::pow(xd + 1.0, r) - std::pow(xd, r);
        value += weight * ccdf;
        terms += static_cast<std::int64_t>(weight);
        quiet = ccdf < threshold ? quiet + 1 : 0;
        if (quiet >= 16 && xd > horizon) break;
    }
    double tail_bound = n * worst_single * r * std::pow(static_cast<double>(x) + 1.0, r - 1) / q_min;
    return {value, terms, tail_bound};
}

MomentTable::MomentTable(TargetVector origin, int r) : origin_(std::move(origin)), r_(r) {
    if (r < 1) throw DomainError("moment order must be >= 1");
    size_ = 1;
    for (int cj : origin_) {
        if (cj < 0) throw DomainError("targets must be non-negative");
        strides_.push_back(size_);
        if (size_ > 2000000 / static_cast<std::size_t>(cj + 1))
            throw GuardError("recurrence lattice exceeds 2e6 states");
        size_ *= static_cast<std::size_t>(cj + 1);
    }
    data_.assign(size_ * r_, 0.0);
}

std::size_t MomentTable::index(const TargetVector& c) const {
    if (c.size() != origin_.size()) throw DomainError("target vector has wrong length");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] < 0 || c[j] > origin_[j]) throw DomainError("target vector outside the lattice");
        idx += static_cast<std::size_t>(c[j]) * strides_[j];
    }
    return idx;
}

std::span<const double> MomentTable::at(const TargetVector& c) const { return slot(index(c)); }

namespace {

MomentTable lattice_dp(const Channel& ch, const TargetVector& c0, int r, bool min_variant) {
    const int n = ch.n();
    if (static_cast<int>(c0.size()) != n) throw DomainError("target vector length must equal n");
    if (n > 16) throw GuardError("recurrence supports at most 16 receivers");
    if (r < 1 || r > 4) throw GuardError("recurrence supports 1 <= r <= 4");
    MomentTable table(c0, r);

    // succ[j][cj]: success probability when receiver j still needs cj packets
    std::vector<std::vector<double>> succ(n);
    for (int j = 0; j < n; ++j) {
        succ[j].assign(static_cast<std::size_t>(c0[j]) + 1, 0.0);
        if (c0[j] == 0) continue;
        auto row = success_row(ch.q(j), ch.d(), c0[j]);
        for (int cj = 1; cj <= c0[j]; ++cj) succ[j][cj] = row[c0[j] - cj];
    }
    double binom[5][5] = {};
    for (int s = 0; s <= 4; ++s)
        for (int u = 0; u <= s; ++u) binom[s][u] = binomial(s, u);

    const auto& stride = table.strides();
    TargetVector cur(n, 0);
    std::vector<int> involved;
    std::vector<double> acc(static_cast<std::size_t>(r) + 1);

    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        if (idx > 0) {
            // mixed-radix increment; every c - 1_S has a smaller index, so it is done
            for (int j = 0; j < n; ++j) {
                if (++cur[j] <= c0[j]) break;
                cur[j] = 0;
            }
        }
        auto out = table.slot(idx);
        involved.clear();
        bool absorbed = true;
        bool any_zero = false;
        for (int j = 0; j < n; ++j) {
            if (cur[j] > 0) {
                involved.push_back(j);
                absorbed = false;
            } else {
                any_zero = true;
            }
        }
        if (absorbed || (min_variant && any_zero)) {
            std::fill(out.begin(), out.end(), 0.0);
            continue;
        }

        std::fill(acc.begin(), acc.end(), 0.0);
        double p_empty = 0.0;
        const int a = static_cast<int>(involved.size());
        // walk all 2^a success patterns among the involved receivers
        auto walk = [&](auto&& self, int i, double p, std::size_t offset, bool any) -> void {
            if (i == a) {
                if (!any) {
                    p_empty += p;
                    return;
                }
                auto prev = table.slot(idx - offset);
                for (int s = 1; s <= r; ++s) {
                    double e = 1.0;  // E[(1+Y')^s] = sum_u C(s,u) E[Y'^u]
                    for (int u = 1; u <= s; ++u) e += binom[s][u] * prev[u - 1];
                    acc[s] += p * e;
                }
                return;
            }
            const int j = involved[i];
            const double qs = succ[j][cur[j]];
            self(self, i + 1, p * qs, offset + stride[j], true);
            self(self, i + 1, p * (1.0 - qs), offset, any);
        };
        walk(walk, 0, 1.0, 0, false);

        for (int s = 1; s <= r; ++s) {
            double lower = 1.0;
            for (int u = 1; u < s; ++u) lower += binom[s][u] * out[u - 1];
            out[s - 1] = (acc[s] + p_empty * lower) / (1.0 - p_empty);
        }
    }
    return table;
}

}  // namespace

MomentTable rlc_recurrence_moments(const Channel& ch, const TargetVector& c0, int r) {
    return lattice_dp(ch, c0, r, false);
}

double rlc_recurrence_min(const Channel& ch, const TargetVector& c0) {
    return lattice_dp(ch, c0, 1, true).mean();
}

double per_packet_limit(const Channel& ch) {
    return 1.0 / *std::min_element(ch.q().begin(), ch.q().end());
}

}  // namespace bcast
