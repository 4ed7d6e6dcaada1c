#include "bcast/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcast/asymptotics.hpp"
#include "bcast/errors.hpp"
#include "bcast/parallel.hpp"
#include "bcast/rlc_bounds.hpp"
#include "bcast/rlc_delay.hpp"
#include "bcast/sim.hpp"
#include "bcast/ut_delay.hpp"
#include "bcast/verify.hpp"

namespace bcast {

namespace {

struct HelpRequested {
    std::string text;
};

double parse_number(const std::string& text, const std::string& flag) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size()) throw UsageError(flag + ": cannot parse '" + text + "' as a number");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

std::vector<double> parse_range_for(const std::string& text, const std::string& flag) {
    if (text.empty()) throw UsageError(flag + ": empty value");
    std::vector<double> out;
    for (const auto& piece : split(text, ',')) {
        auto dots = piece.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_number(piece, flag));
            continue;
        }
        double a = parse_number(piece.substr(0, dots), flag);
        std::string rest = piece.substr(dots + 2);
        auto colon = rest.find(':');
        double b = parse_number(rest.substr(0, colon), flag);
        if (b < a) throw UsageError(flag + ": empty range '" + piece + "'");
        if (colon == std::string::npos) {
            for (double v = a; v <= b + 1e-9; v += 1.0) out.push_back(v);
            continue;
        }
        std::string step = rest.substr(colon + 1);
        if (step.empty() || step[0] != 'x') throw UsageError(flag + ": step must look like xK in '" + piece + "'");
        double k = parse_number(step.substr(1), flag);
        if (!(k > 1.0) || !(a > 0.0)) throw UsageError(flag + ": multiplicative range needs a > 0 and K > 1");
        for (double v = a; v <= b * (1.0 + 1e-12); v *= k) out.push_back(v);
    }
    if (out.empty()) throw UsageError(flag + ": empty sweep");
    return out;
}

void require_integers(const std::vector<double>& v, double min, const std::string& flag) {
    for (double x : v)
        if (x != std::floor(x) || x < min)
            throw UsageError(flag + ": values must be integers >= " + format_number(min));
}

std::vector<double> json_range(const nlohmann::json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (v.is_string()) return parse_range_for(v.get<std::string>(), key);
    if (v.is_array()) return v.get<std::vector<double>>();
    throw UsageError("--config: '" + key + "' must be a number, range string or array");
}

std::string q_spec(const std::vector<double>& q) {
    std::string s;
    for (std::size_t i = 0; i < q.size(); ++i) s += (i ? ";" : "") + format_number(q[i]);
    return s;
}

bool homogeneous_q(const std::vector<double>& q) {
    for (double v : q)
        if (v != q[0]) return false;
    return true;
}

std::string kv(const std::string& key, double v) { return key + "=" + format_number(v); }

std::string join_params(std::initializer_list<std::string> parts) {
    std::string s;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!s.empty()) s += ';';
        s += p;
    }
    return s;
}

Channel make_channel(const RunConfig& cfg, int n) {
    if (cfg.q.size() == 1) return Channel::homogeneous(n, cfg.q[0], cfg.d);
    if (static_cast<int>(cfg.q.size()) != n)
        throw UsageError("--n: value " + std::to_string(n) + " does not match the " + std::to_string(cfg.q.size()) +
                         " entries of --q");
    return Channel(cfg.q, cfg.d);
}

struct Point {
    double n, c, r;
};

// Fills the columns shared by every row of a sweep point.
OutputRow base_row(const RunConfig& cfg, const Point& p, const std::vector<double>& q) {
    OutputRow row;
    row.command = cfg.command + (cfg.mode.empty() ? "" : " " + cfg.mode);
    row.n = p.n;
    row.c = p.c;
    row.d = cfg.d.str();
    row.r = p.r;
    row.q_spec = q_spec(q);
    return row;
}

OutputRow with_method(OutputRow row, const std::string& method) {
    row.method = method;
    return row;
}

OutputRow interval_row(const OutputRow& base, const BoundInterval& b) {
    OutputRow row = with_method(base, b.method);
    row.lower = b.lower;
    row.upper = b.upper;
    row.param = join_params({b.param ? kv("s", *b.param) : "", b.lower_param ? kv("t", *b.lower_param) : ""});
    return row;
}

bool lattice_ok(int n, int c) { return std::pow(c + 1.0, n) <= 2e6; }

std::vector<OutputRow> ut_rows(const RunConfig& cfg, const Point& p) {
    int n = static_cast<int>(p.n), r = static_cast<int>(p.r);
    Channel ch = make_channel(cfg, n);
    OutputRow base = base_row(cfg, p, cfg.q);
    base.c.reset();
    std::vector<OutputRow> rows;
    if (n <= 20) {
        auto row = with_method(base, "exact");
        row.value = ut_max_moment_exact({r, ch.q()});
        rows.push_back(row);
        rows.push_back(interval_row(base, ut_max_moment_bounds({r, ch.q()})));
    }
    if (r == 1 && homogeneous_q(ch.q())) {
        auto e = ut_mean_eisenberg(ch.q(0), n, cfg.K);
        auto row = with_method(base, "eisenberg");
        row.value = e.value;
        row.param = join_params({kv("K", e.K), kv("truncated", e.truncated_value), kv("residual", e.residual)});
        rows.push_back(row);
    }
    return rows;
}

std::vector<OutputRow> rlc_rows(const RunConfig& cfg, const Point& p) {
    int n = static_cast<int>(p.n), c = static_cast<int>(p.c), r = static_cast<int>(p.r);
    Channel ch = make_channel(cfg, n);
    OutputRow base = base_row(cfg, p, cfg.q);
    std::vector<OutputRow> rows;
    if (cfg.mode == "moments") {
        auto s = rlc_moment_series(ch, c, r, cfg.tol);
        auto row = with_method(base, "series");
        row.value = s.value;
        row.param = join_params({kv("tail_bound", s.tail_bound), kv("terms", static_cast<double>(s.terms_used))});
        rows.push_back(row);
        if (lattice_ok(n, c)) {
            TargetVector c0(static_cast<std::size_t>(n), c);
            auto rec = with_method(base, "recurrence");
            rec.value = rlc_recurrence_moments(ch, c0, r).at(c0)[r - 1];
            rows.push_back(rec);
        }
    } else if (cfg.mode == "min") {
        base.r.reset();
        auto row = with_method(base, "recurrence_min");
        row.value = rlc_recurrence_min(ch, TargetVector(static_cast<std::size_t>(n), c));
        rows.push_back(row);
    } else {
        base.c.reset();
        base.r.reset();
        auto row = with_method(base, "per_packet_limit");
        row.value = per_packet_limit(ch);
        rows.push_back(row);
    }
    return rows;
}

std::vector<OutputRow> bounds_rows(const RunConfig& cfg, const Point& p) {
    int n = static_cast<int>(p.n), c = static_cast<int>(p.c), r = static_cast<int>(p.r);
    Channel ch = make_channel(cfg, n);
    OutputRow base = base_row(cfg, p, cfg.q);
    const bool a3 = classify(ch) == AssumptionClass::A3;
    std::vector<OutputRow> rows;
    std::optional<double> exact;
    if (a3)
        exact = a3_exact_moment(p.n, c, ch.q(0), r, cfg.tol);
    else if (n <= 3)
        exact = rlc_moment_series(ch, c, r, cfg.tol).value;
    if (exact) {
        auto row = with_method(base, "exact");
        row.value = exact;
        rows.push_back(row);
    }
    auto add = [&](const BoundInterval& b) {
        auto row = interval_row(base, b);
        if (exact) row.param = join_params({row.param, kv("exact", *exact)});
        rows.push_back(row);
    };
    add(bounds_a1(ch, c, r));
    if (ch.d().is_infinite()) add(bounds_a2(ch.q(), c, r));
    if (a3) {
        add(bounds_a3(ch.q(0), c, p.n, r));
        add(bounds_a3_tuned(ch.q(0), c, p.n, r));
        if (r == 1) {
            auto b = per_packet_bounds(p.n, c, ch.q(0));
            auto row = interval_row(base, b);
            row.value = *exact / c;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<OutputRow> asym_rows(const RunConfig& cfg, const Point& p) {
    int c = static_cast<int>(p.c), r = static_cast<int>(p.r);
    if (cfg.q.size() != 1 || !cfg.d.is_infinite())
        throw UsageError("asym: needs a single --q and --d inf (homogeneous channel)");
    const double q = cfg.q[0];
    OutputRow base = base_row(cfg, p, cfg.q);
    std::vector<OutputRow> rows;
    auto value_row = [&](const std::string& method, double v, const std::string& param = "") {
        auto row = with_method(base, method);
        row.value = v;
        row.param = param;
        rows.push_back(row);
    };
    value_row("exact", a3_exact_moment(p.n, c, q, r, cfg.tol));
    if (p.n >= 2) value_row("b_n", bn_sequence(p.n, c));
    if (r == 1 && p.n >= 2) {
        auto s = evt_moment_sandwich({p.n, c, q, r}, cfg.tol);
        auto row = interval_row(base, s.limit);
        row.value = s.finite_value;
        rows.push_back(row);
    }
    if (r <= 2 && p.n >= 2) value_row("scaling_ratio", scaling_ratio({p.n, c, q, r}, cfg.tol));
    if (r == 1 && p.n >= 3) value_row("m1_rbc", m1_rbc_approx(p.n, c, q), std::string("note=") + m1_rbc_note());
    if (p.n >= 3) {
        auto t = tight_sequences(p.n, c, r);
        auto row = with_method(base, "tight_sequences");
        row.param = join_params({kv("t_n", t.t_n), kv("s_n", t.s_n)});
        rows.push_back(row);
    }
    return rows;
}

std::vector<OutputRow> sim_rows(const RunConfig& cfg, const Point& p) {
    int n = static_cast<int>(p.n), c = static_cast<int>(p.c), r = static_cast<int>(p.r);
    Channel ch = make_channel(cfg, n);
    OutputRow base = base_row(cfg, p, cfg.q);
    base.seed = cfg.seed;
    std::vector<OutputRow> rows;
    if (cfg.mode == "geometric") {
        auto e = simulate_geometric(ch, TargetVector(static_cast<std::size_t>(n), c), r, cfg.reps, cfg.seed);
        auto row = with_method(base, "simulate_geometric");
        row.value = e.mean;
        row.std_error = e.std_error;
        row.param = kv("reps", static_cast<double>(e.reps));
        rows.push_back(row);
    } else {
        auto g = simulate_gf(ch, c, cfg.reps, cfg.seed, r);
        auto row = with_method(base, "simulate_gf");
        row.value = g.delay.mean;
        row.std_error = g.delay.std_error;
        std::string freq;
        for (std::size_t k = 0; k < g.innovation_freq.size(); ++k)
            freq += (k ? "|" : "") + format_number(g.innovation_freq[k]);
        row.param = join_params({kv("reps", static_cast<double>(g.delay.reps)), "innovation=" + freq});
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> as_ints(const std::vector<double>& v) {
    std::vector<int> out;
    for (double x : v) out.push_back(static_cast<int>(x));
    return out;
}

std::vector<OutputRow> trace_experiment_rows(const RunConfig& cfg) {
    if (cfg.m.empty()) throw UsageError("--m: required for sim traces");
    auto blocks = as_ints(cfg.c);
    if (blocks.size() < 2) throw UsageError("--c: sim traces needs at least two blocklengths");
    std::vector<OutputRow> rows;
    for (double nv : cfg.n) {
        Channel ch = make_channel(cfg, static_cast<int>(nv));
        for (double m : cfg.m) {
            auto cmp = shared_trace_experiment(ch, static_cast<std::int64_t>(m), blocks, cfg.reps, cfg.seed);
            for (std::size_t a = 0; a < blocks.size(); ++a)
                for (std::size_t b = 0; b < blocks.size(); ++b) {
                    if (a == b) continue;
                    OutputRow row = base_row(cfg, {nv, static_cast<double>(blocks[b]), 1.0}, cfg.q);
                    row.r.reset();
                    row.seed = cfg.seed;
                    row.method = "not_worse_fraction";
                    auto comp = cmp.compared[a][b];
                    if (comp > 0) row.value = static_cast<double>(cmp.not_worse[a][b]) / static_cast<double>(comp);
                    row.param = join_params({kv("m", m), kv("vs", blocks[a]), kv("compared", static_cast<double>(comp)),
                                             kv("not_worse", static_cast<double>(cmp.not_worse[a][b])),
                                             kv("incomplete", static_cast<double>(cmp.incomplete[b])),
                                             kv("horizon", static_cast<double>(cmp.horizon))});
                    rows.push_back(row);
                }
        }
    }
    return rows;
}

OutputRow delay_row(const std::string& command, int n, int c, double m, std::optional<std::int64_t> t,
                    std::int64_t horizon) {
    OutputRow row;
    row.command = command;
    row.n = n;
    row.c = c;
    row.method = "trace_delay";
    if (t) row.value = static_cast<double>(*t);
    row.param = join_params({kv("m", m), kv("horizon", static_cast<double>(horizon)), t ? "" : "incomplete"});
    return row;
}

std::vector<OutputRow> trace_rows(const RunConfig& cfg) {
    if (cfg.m.empty()) throw UsageError("--m: required for trace commands");
    std::vector<OutputRow> rows;
    if (cfg.mode == "replay") {
        if (cfg.trace.empty()) throw UsageError("--trace: required for trace replay");
        auto tr = read_trace(cfg.trace);
        for (double m : cfg.m)
            for (int c : as_ints(cfg.c))
                rows.push_back(delay_row("trace replay", tr.n(), c, m, trace_delay(tr, c, static_cast<std::int64_t>(m)),
                                         tr.T()));
        return rows;
    }
    if (!cfg.cp) throw UsageError("--cp: required for trace adversarial");
    if (!cfg.trace.empty() && (cfg.m.size() != 1 || cfg.c.size() != 1))
        throw UsageError("--trace: writing a trace needs a single --c and --m");
    for (double m : cfg.m)
        for (int c : as_ints(cfg.c)) {
            auto mm = static_cast<std::int64_t>(m);
            auto tr = adversarial_trace(c, *cfg.cp, mm);
            if (!cfg.trace.empty())
                write_trace(tr, cfg.trace,
                            {{"source", "adversarial(" + std::to_string(c) + "," + std::to_string(*cfg.cp) + "," +
                                            std::to_string(mm) + ")"}});
            for (int b : {c, *cfg.cp}) rows.push_back(delay_row("trace adversarial", tr.n(), b, m, trace_delay(tr, b, mm), tr.T()));
        }
    return rows;
}

void write_gnuplot(const RunConfig& cfg, const std::vector<OutputRow>& rows) {
    if (cfg.out.empty()) throw UsageError("--gnuplot: needs --out");
    if (cfg.format != "csv") throw UsageError("--gnuplot: needs --format csv");
    const bool by_c = cfg.c.size() > 1 || cfg.n.size() <= 1;
    const int xcol = by_c ? 3 : 2;
    std::vector<std::string> methods;
    std::map<std::string, std::pair<bool, bool>> has;  // value, interval
    for (const auto& r : rows) {
        if (!has.count(r.method)) methods.push_back(r.method);
        auto& h = has[r.method];
        h.first = h.first || r.value.has_value();
        h.second = h.second || r.lower.has_value();
    }
    std::ofstream gp(cfg.out + ".gp");
    gp << "set datafile separator ','\n";
    gp << "set key left top\n";
    gp << "set xlabel '" << (by_c ? "c" : "n") << "'\n";
    if (!by_c) gp << "set logscale x 2\n";
    std::vector<std::string> plots;
    for (const auto& m : methods) {
        std::string src = "\"< awk -F, '$7==\\\"" + m + "\\\"' " + cfg.out + "\"";
        if (has[m].first) plots.push_back(src + " using " + std::to_string(xcol) + ":8 with linespoints title '" + m + "'");
        if (has[m].second) {
            plots.push_back(src + " using " + std::to_string(xcol) + ":9 with lines title '" + m + " lower'");
            plots.push_back(src + " using " + std::to_string(xcol) + ":10 with lines title '" + m + " upper'");
        }
    }
    gp << "plot ";
    for (std::size_t i = 0; i < plots.size(); ++i) gp << (i ? ", \\\n     " : "") << plots[i];
    gp << "\npause -1\n";
}

}  // namespace

std::vector<double> parse_range(const std::string& text) { return parse_range_for(text, "range"); }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    // shortest text that parses back to the same double
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const OutputRow& row) {
    auto num = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    std::string s = row.command + ',' + num(row.n) + ',' + num(row.c) + ',' + row.d + ',' + num(row.r) + ',' +
                    row.q_spec + ',' + row.method + ',' + num(row.value) + ',' + num(row.lower) + ',' +
                    num(row.upper) + ',' + num(row.std_error) + ',' + row.param + ',' +
                    (row.seed ? std::to_string(*row.seed) : "");
    return s;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Block-completion delay of broadcasting over erasure channels", "bcast_delay"};
    RunConfig cfg;
    std::string n_s, c_s, q_s, d_s, r_s, m_s, config, format;
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    double tol = 0.0;
    int cp = 0, K = 0;
    app.add_option("command", cfg.command, "ut | rlc | bounds | asym | sim | trace | verify")->required();
    app.add_option("mode", cfg.mode, "rlc: moments|min|limit, sim: geometric|gf|traces, trace: replay|adversarial");
    app.add_option("--n", n_s, "receiver count(s), e.g. 5 or 2..4096:x2");
    app.add_option("--c", c_s, "blocklength(s)");
    app.add_option("--q", q_s, "reception probability or comma list, one per receiver");
    app.add_option("--d", d_s, "field size: integer >= 2 or inf");
    app.add_option("--r", r_s, "moment order(s)");
    app.add_option("--reps", reps, "Monte Carlo replications or trace count");
    app.add_option("--seed", seed, "64-bit seed");
    app.add_option("--tol", tol, "series tolerance");
    app.add_option("--config", config, "channel / sweep JSON file");
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--format", format, "csv or json");
    app.add_flag("--gnuplot", cfg.gnuplot, "also write <out>.gp");
    app.add_flag("--quick", cfg.quick, "verify: reduced grids");
    app.add_option("--m", m_s, "workload in packets (trace commands)");
    app.add_option("--cp", cp, "second blocklength for trace adversarial");
    app.add_option("--K", K, "Fourier truncation for the UT mean");
    app.add_option("--trace", cfg.trace, "trace file to replay or write");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    static const std::map<std::string, std::set<std::string>> modes = {
        {"ut", {""}}, {"rlc", {"moments", "min", "limit"}}, {"bounds", {""}}, {"asym", {""}},
        {"sim", {"geometric", "gf", "traces"}}, {"trace", {"replay", "adversarial"}}, {"verify", {""}}};
    auto it = modes.find(cfg.command);
    if (it == modes.end()) throw UsageError("command: unknown command '" + cfg.command + "'");
    static const std::map<std::string, std::string> default_mode = {
        {"rlc", "moments"}, {"sim", "geometric"}, {"trace", "replay"}};
    if (cfg.mode.empty() && default_mode.count(cfg.command)) cfg.mode = default_mode.at(cfg.command);
    if (!it->second.count(cfg.mode)) throw UsageError("mode: '" + cfg.mode + "' is not valid for " + cfg.command);

    if (!config.empty()) {
        std::ifstream in(config);
        if (!in) throw UsageError("--config: cannot open " + config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("--config: ") + e.what());
        }
        if (!j.is_object()) throw UsageError("--config: expected a JSON object");
        try {
            if (j.contains("q")) {
                nlohmann::json cj = j;
                if (cj.contains("n") && !cj.at("n").is_number_integer()) cj.erase("n");
                if (cj.at("q").is_number() && !cj.contains("n")) cj["n"] = 1;
                Channel ch = channel_from_json(cj);
                cfg.q = j.at("q").is_number() ? std::vector<double>{ch.q(0)} : ch.q();
                cfg.d = ch.d();
            }
            if (j.contains("n")) cfg.n = json_range(j, "n");
            if (j.contains("c")) cfg.c = json_range(j, "c");
            if (j.contains("r")) cfg.r = json_range(j, "r");
            if (j.contains("m")) cfg.m = json_range(j, "m");
            if (j.contains("reps")) cfg.reps = j.at("reps").get<std::int64_t>();
            if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
            if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
            if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("--config: ") + e.what());
        } catch (const DomainError& e) {
            throw UsageError(std::string("--config: ") + e.what());
        }
    }

    if (app.count("--n")) cfg.n = parse_range_for(n_s, "--n");
    if (app.count("--c")) cfg.c = parse_range_for(c_s, "--c");
    if (app.count("--r")) cfg.r = parse_range_for(r_s, "--r");
    if (app.count("--m")) cfg.m = parse_range_for(m_s, "--m");
    if (app.count("--q")) {
        cfg.q.clear();
        for (const auto& piece : split(q_s, ',')) cfg.q.push_back(parse_number(piece, "--q"));
    }
    if (app.count("--d")) {
        try {
            cfg.d = parse_field_size(d_s);
        } catch (const DomainError& e) {
            throw UsageError(std::string("--d: ") + e.what());
        }
    }
    if (app.count("--reps")) cfg.reps = reps;
    if (app.count("--seed")) cfg.seed = seed;
    if (app.count("--tol")) cfg.tol = tol;
    if (app.count("--format")) cfg.format = format;
    if (app.count("--cp")) cfg.cp = cp;
    if (app.count("--K")) cfg.K = K;

    if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format: expected csv or json");
    if (!(cfg.tol > 0.0)) throw UsageError("--tol: must be > 0");
    if (cfg.reps < 1) throw UsageError("--reps: must be >= 1");
    if (cfg.K < 1) throw UsageError("--K: must be >= 1");
    for (double v : cfg.q)
        if (!(v > 0.0 && v < 1.0)) throw UsageError("--q: probabilities must lie in (0,1)");
    if (cfg.command == "verify") return cfg;

    if (cfg.n.empty()) cfg.n = {cfg.q.size() > 1 ? static_cast<double>(cfg.q.size()) : 1.0};
    if (cfg.c.empty()) cfg.c = {1.0};
    if (cfg.r.empty()) cfg.r = {1.0};
    require_integers(cfg.n, 1, "--n");
    require_integers(cfg.c, 1, "--c");
    require_integers(cfg.r, 1, "--r");
    require_integers(cfg.m, 1, "--m");
    if (cfg.command != "trace" && cfg.q.empty()) throw UsageError("--q: required for " + cfg.command);
    if (cfg.q.size() > 1)
        for (double n : cfg.n)
            if (n != static_cast<double>(cfg.q.size()))
                throw UsageError("--n: " + format_number(n) + " does not match the number of --q entries");
    return cfg;
}

std::vector<OutputRow> compute_rows(const RunConfig& cfg) {
    if (cfg.command == "trace") return trace_rows(cfg);
    if (cfg.command == "sim" && cfg.mode == "traces") return trace_experiment_rows(cfg);
    std::vector<Point> points;
    for (double n : cfg.n)
        for (double c : cfg.c)
            for (double r : cfg.r) points.push_back({n, c, r});
    std::vector<std::vector<OutputRow>> slots(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const Point& p = points[i];
        if (cfg.command == "ut")
            slots[i] = ut_rows(cfg, p);
        else if (cfg.command == "rlc")
            slots[i] = rlc_rows(cfg, p);
        else if (cfg.command == "bounds")
            slots[i] = bounds_rows(cfg, p);
        else if (cfg.command == "asym")
            slots[i] = asym_rows(cfg, p);
        else
            slots[i] = sim_rows(cfg, p);
    });
    std::vector<OutputRow> rows;
    // c (and r) do not vary for some commands; keep one row per distinct record
    std::set<std::string> seen;
    for (auto& s : slots)
        for (auto& row : s)
            if (seen.insert(to_csv(row)).second) rows.push_back(std::move(row));
    return rows;
}

int run(const RunConfig& cfg) {
    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) throw UsageError("--out: cannot open " + cfg.out);
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    if (cfg.command == "verify") {
        VerifyOptions opt;
        opt.quick = cfg.quick;
        opt.seed = cfg.seed;
        bool all = true;
        for (const auto& r : run_all_checks(opt)) {
            out << format_check(r) << '\n';
            out.flush();
            all = all && r.passed;
        }
        return all ? 0 : 3;
    }

    auto rows = compute_rows(cfg);
    if (cfg.format == "csv") {
        out << kCsvHeader << '\n';
        for (const auto& r : rows) out << to_csv(r) << '\n';
    } else {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json o;
            auto num = [](const std::optional<double>& v) -> nlohmann::ordered_json {
                if (!v) return nullptr;
                if (!std::isfinite(*v)) return format_number(*v);
                return *v;
            };
            o["command"] = r.command;
            o["n"] = num(r.n);
            o["c"] = num(r.c);
            o["d"] = r.d.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.d);
            o["r"] = num(r.r);
            o["q_spec"] = r.q_spec;
            o["method"] = r.method;
            o["value"] = num(r.value);
            o["lower"] = num(r.lower);
            o["upper"] = num(r.upper);
            o["std_error"] = num(r.std_error);
            o["param"] = r.param;
            o["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
            arr.push_back(o);
        }
        out << arr.dump(2) << '\n';
    }
    out.flush();
    if (cfg.gnuplot) write_gnuplot(cfg, rows);
    return 0;
}

int main_entry(const std::vector<std::string>& args) {
    RunConfig cfg;
    try {
        cfg = parse_args(args);
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    try {
        return run(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace bcast
