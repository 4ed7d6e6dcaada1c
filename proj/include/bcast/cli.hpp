#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcast/channel.hpp"

namespace bcast {

struct RunConfig {
    std::string command;  // ut, rlc, bounds, asym, sim, trace, verify
    std::string mode;     // subcommand, e.g. "moments" for rlc
    std::vector<double> n;
    std::vector<double> c;
    std::vector<double> r;
    std::vector<double> q;  // one value (homogeneous) or one per receiver
    FieldSize d = FieldSize::infinite();
    std::int64_t reps = 100000;
    std::uint64_t seed = 20240601;
    double tol = 1e-10;
    std::string out;  // empty: stdout
    std::string format = "csv";
    bool gnuplot = false;
    bool quick = false;
    std::vector<double> m;
    std::optional<int> cp;
    int K = 1000;
    std::string trace;
};

// Range text: "a..b", "a..b:xK" or comma lists of either.
std::vector<double> parse_range(const std::string& text);

// Throws UsageError naming the offending flag.
RunConfig parse_args(const std::vector<std::string>& args);

struct OutputRow {
    std::string command;
    std::optional<double> n, c;
    std::string d;
    std::optional<double> r;
    std::string q_spec;
    std::string method;
    std::optional<double> value, lower, upper, std_error;
    std::string param;
    std::optional<std::uint64_t> seed;
};

inline const char* kCsvHeader = "command,n,c,d,r,q_spec,method,value,lower,upper,std_error,param,seed";

std::string format_number(double v);
std::string to_csv(const OutputRow& row);

// Rows for every sweep point in deterministic order.
std::vector<OutputRow> compute_rows(const RunConfig& cfg);

// 0 success, 1 usage error, 2 computation error, 3 verify failure.
int run(const RunConfig& cfg);
int main_entry(const std::vector<std::string>& args);

}  // namespace bcast
