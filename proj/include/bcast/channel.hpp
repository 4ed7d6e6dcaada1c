#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcast/special_fns.hpp"

namespace bcast {

// Field size d: a finite integer >= 2 or infinite.
class FieldSize {
public:
    static FieldSize infinite() { return FieldSize{}; }
    static FieldSize finite(std::int64_t d);

    bool is_infinite() const { return !d_.has_value(); }
    std::int64_t value() const;
    std::string str() const;

    bool operator==(const FieldSize&) const = default;

private:
    FieldSize() = default;
    std::optional<std::int64_t> d_;
};

// Parses "inf" or an integer >= 2.
FieldSize parse_field_size(const std::string& text);

class Channel {
public:
    Channel(std::vector<double> q, FieldSize d);
    static Channel homogeneous(int n, double q, FieldSize d);

    int n() const { return static_cast<int>(q_.size()); }
    const std::vector<double>& q() const { return q_; }
    double q(int j) const { return q_[j]; }
    const FieldSize& d() const { return d_; }

private:
    std::vector<double> q_;
    FieldSize d_;
};

// q_{j,k} for one receiver: row[k-1] = (1 - d^{k-1-c}) q_j, k = 1..c.
std::vector<double> success_row(double qj, const FieldSize& d, int c);

class SuccessMatrix {
public:
    SuccessMatrix(const Channel& ch, int c);

    int n() const { return n_; }
    int c() const { return c_; }
    // k is the 1-based state index: the receiver already holds k-1 innovative packets.
    double at(int j, int k) const { return entries_[static_cast<std::size_t>(j) * c_ + (k - 1)]; }
    std::vector<double> row(int j) const;
    // phi(q_{j,k}) for k = 1..c
    RateVector rates(int j) const;

private:
    int n_;
    int c_;
    std::vector<double> entries_;
};

inline SuccessMatrix success_matrix(const Channel& ch, int c) { return SuccessMatrix(ch, c); }

enum class AssumptionClass { A1, A2, A3 };

AssumptionClass classify(const Channel& ch);
std::string to_string(AssumptionClass a);

// Replaces q_j for j in subset (0-based) by their mean.
Channel homogenize(const Channel& ch, const std::vector<int>& subset);

// {"n": int, "q": [..] | float, "d": int | "inf"}
Channel channel_from_json(const nlohmann::json& j);
Channel load_channel(const std::string& path);
nlohmann::json channel_to_json(const Channel& ch);

}  // namespace bcast
