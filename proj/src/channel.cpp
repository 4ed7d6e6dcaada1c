#include "bcast/channel.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "bcast/errors.hpp"

namespace bcast {

FieldSize FieldSize::finite(std::int64_t d) {
    if (d < 2) throw DomainError("field size must be >= 2, got " + std::to_string(d));
    FieldSize f;
    f.d_ = d;
    return f;
}

std::int64_t FieldSize::value() const {
    if (!d_) throw DomainError("field size is infinite");
    return *d_;
}

std::string FieldSize::str() const { return d_ ? std::to_string(*d_) : "inf"; }

FieldSize parse_field_size(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "infinite") return FieldSize::infinite();
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw DomainError("field size must be an integer or 'inf', got '" + text + "'");
    }
    if (pos != text.size()) throw DomainError("field size must be an integer or 'inf', got '" + text + "'");
    return FieldSize::finite(v);
}

Channel::Channel(std::vector<double> q, FieldSize d) : q_(std::move(q)), d_(d) {
    if (q_.empty()) throw DomainError("channel needs at least one receiver");
    for (double v : q_)
        if (!(v > 0.0 && v < 1.0)) throw DomainError("reception probabilities must lie in (0,1)");
}

Channel Channel::homogeneous(int n, double q, FieldSize d) {
    if (n < 1) throw DomainError("channel needs at least one receiver");
    return Channel(std::vector<double>(static_cast<std::size_t>(n), q), d);
}

std::vector<double> success_row(double qj, const FieldSize& d, int c) {
    if (c < 1) throw DomainError("blocklength must be >= 1");
    std::vector<double> row(static_cast<std::size_t>(c), qj);
    if (!d.is_infinite()) {
        const double dd = static_cast<double>(d.value());
        for (int k = 1; k <= c; ++k) row[k - 1] = (1.0 - std::pow(dd, k - 1 - c)) * qj;
    }
    return row;
}

SuccessMatrix::SuccessMatrix(const Channel& ch, int c) : n_(ch.n()), c_(c) {
    if (c < 1) throw DomainError("blocklength must be >= 1");
    entries_.reserve(static_cast<std::size_t>(n_) * c_);
    for (int j = 0; j < n_; ++j) {
        auto row = success_row(ch.q(j), ch.d(), c);
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

std::vector<double> SuccessMatrix::row(int j) const {
    auto first = entries_.begin() + static_cast<std::ptrdiff_t>(j) * c_;
    return {first, first + c_};
}

RateVector SuccessMatrix::rates(int j) const {
    RateVector r;
    r.reserve(c_);
    for (int k = 1; k <= c_; ++k) r.push_back(phi(at(j, k)));
    return r;
}

AssumptionClass classify(const Channel& ch) {
    if (!ch.d().is_infinite()) return AssumptionClass::A1;
    for (double v : ch.q())
        if (v != ch.q(0)) return AssumptionClass::A2;
    return AssumptionClass::A3;
}

std::string to_string(AssumptionClass a) {
    switch (a) {
        case AssumptionClass::A1: return "A1";
        case AssumptionClass::A2: return "A2";
        case AssumptionClass::A3: return "A3";
    }
    return "?";
}

Channel homogenize(const Channel& ch, const std::vector<int>& subset) {
    if (subset.empty()) throw DomainError("homogenize: empty subset");
    std::set<int> idx(subset.begin(), subset.end());
    double sum = 0.0;
    for (int j : idx) {
        if (j < 0 || j >= ch.n()) throw DomainError("homogenize: receiver index out of range");
        sum += ch.q(j);
    }
    double mean = sum / static_cast<double>(idx.size());
    auto q = ch.q();
    for (int j : idx) q[j] = mean;
    return Channel(q, ch.d());
}

Channel channel_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw DomainError("channel config must be a JSON object");
    std::vector<double> q;
    if (!j.contains("q")) throw DomainError("channel config: missing 'q'");
    const auto& jq = j.at("q");
    if (jq.is_number()) {
        if (!j.contains("n")) throw DomainError("channel config: scalar 'q' needs 'n'");
        int n = j.at("n").get<int>();
        if (n < 1) throw DomainError("channel config: n must be >= 1");
        q.assign(static_cast<std::size_t>(n), jq.get<double>());
    } else if (jq.is_array()) {
        q = jq.get<std::vector<double>>();
        if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(q.size()))
            throw DomainError("channel config: 'n' does not match length of 'q'");
    } else {
        throw DomainError("channel config: 'q' must be a number or an array");
    }
    FieldSize d = FieldSize::infinite();
    if (j.contains("d")) {
        const auto& jd = j.at("d");
        if (jd.is_string())
            d = parse_field_size(jd.get<std::string>());
        else if (jd.is_number_integer())
            d = FieldSize::finite(jd.get<std::int64_t>());
        else
            throw DomainError("channel config: 'd' must be an integer or \"inf\"");
    }
    return Channel(q, d);
}

Channel load_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open channel config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("channel config: ") + e.what());
    }
    return channel_from_json(j);
}

nlohmann::json channel_to_json(const Channel& ch) {
    nlohmann::json j;
    j["n"] = ch.n();
    j["q"] = ch.q();
    if (ch.d().is_infinite())
        j["d"] = "inf";
    else
        j["d"] = ch.d().value();
    return j;
}

}  // namespace bcast
