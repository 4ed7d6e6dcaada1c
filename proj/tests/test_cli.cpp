#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcast/cli.hpp"
#include "bcast/errors.hpp"
#include "bcast/rlc_bounds.hpp"
#include "bcast/rlc_delay.hpp"

using namespace bcast;

namespace {

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("range syntax") {
    CHECK(parse_range("3") == std::vector<double>{3});
    CHECK(parse_range("1..4") == std::vector<double>{1, 2, 3, 4});
    CHECK(parse_range("2..32:x2") == std::vector<double>{2, 4, 8, 16, 32});
    CHECK(parse_range("1,5..6") == std::vector<double>{1, 5, 6});
    CHECK_THROWS_AS(parse_range("4..1"), UsageError);
    CHECK_THROWS_AS(parse_range("1..8:+2"), UsageError);
}

TEST_CASE("argument parsing") {
    auto cfg = parse_args({"rlc", "--n", "2", "--c", "3", "--q", "0.5", "--d", "inf", "--r", "1"});
    CHECK(cfg.command == "rlc");
    CHECK(cfg.mode == "moments");
    CHECK(cfg.n == std::vector<double>{2});
    CHECK(cfg.d.is_infinite());
    auto het = parse_args({"rlc", "--q", "0.3,0.7", "--d", "16"});
    CHECK(het.q == std::vector<double>{0.3, 0.7});
    CHECK(het.n == std::vector<double>{2});
    CHECK(het.d.value() == 16);
    CHECK_THROWS_WITH_AS(parse_args({"rlc", "--q", "0.5", "--d", "1"}), doctest::Contains("--d"), UsageError);
    CHECK_THROWS_WITH_AS(parse_args({"rlc", "--q", "0.5", "--bogus", "3"}), doctest::Contains("--bogus"), UsageError);
    CHECK_THROWS_WITH_AS(parse_args({"rlc", "--q", "0.5", "--format", "xml"}), doctest::Contains("--format"),
                         UsageError);
    CHECK_THROWS_WITH_AS(parse_args({"rlc", "--q", "0.5", "--tol", "0"}), doctest::Contains("--tol"), UsageError);
    CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
    CHECK_THROWS_AS(parse_args({"rlc", "sideways", "--q", "0.5"}), UsageError);
    CHECK_THROWS_AS(parse_args({"rlc", "--q", "0.3,0.7", "--n", "3"}), UsageError);
}

TEST_CASE("flags override the config file") {
    auto path = temp_path("bcast_cli_config.json");
    {
        std::ofstream out(path);
        out << R"({"n": 4, "q": 0.25, "d": 8, "c": "1..3", "seed": 17})";
    }
    auto cfg = parse_args({"bounds", "--config", path, "--c", "5"});
    CHECK(cfg.n == std::vector<double>{4});
    CHECK(cfg.q == std::vector<double>{0.25});
    CHECK(cfg.d.value() == 8);
    CHECK(cfg.c == std::vector<double>{5});
    CHECK(cfg.seed == 17);
    std::filesystem::remove(path);
}

TEST_CASE("CSV rows re-parse to library values") {
    auto cfg = parse_args({"rlc", "--n", "2", "--c", "1..3", "--q", "0.5", "--r", "1,2"});
    auto rows = compute_rows(cfg);
    Channel ch = Channel::homogeneous(2, 0.5, FieldSize::infinite());
    int checked = 0;
    for (const auto& row : rows) {
        auto f = fields(to_csv(row));
        REQUIRE(f.size() == 13);
        int c = std::stoi(f[2]), r = std::stoi(f[4]);
        double v = std::stod(f[7]);
        if (f[6] == "series") {
            CHECK(v == rlc_moment_series(ch, c, r, cfg.tol).value);
            ++checked;
        } else if (f[6] == "recurrence") {
            TargetVector c0{c, c};
            CHECK(v == rlc_recurrence_moments(ch, c0, r).at(c0)[r - 1]);
            ++checked;
        }
    }
    CHECK(checked == 12);

    auto b = compute_rows(parse_args({"bounds", "--n", "5", "--c", "7", "--q", "0.0833"}));
    bool seen = false;
    for (const auto& row : b)
        if (row.method == "per_packet") {
            auto f = fields(to_csv(row));
            auto ref = per_packet_bounds(5, 7, 0.0833);
            CHECK(std::stod(f[8]) == ref.lower);
            CHECK(std::stod(f[9]) == ref.upper);
            seen = true;
        }
    CHECK(seen);
}

TEST_CASE("golden output") {
    auto out = temp_path("bcast_golden.csv");
    REQUIRE(main_entry({"ut", "--n", "1..3", "--q", "0.5", "--r", "1", "--out", out}) == 0);
    CHECK(slurp(out) == slurp(std::string(BCAST_TEST_DATA) + "/golden_ut.csv"));
    std::filesystem::remove(out);
}

TEST_CASE("identical invocations give identical files") {
    auto a = temp_path("bcast_det_a.csv"), b = temp_path("bcast_det_b.json");
    std::vector<std::string> args = {"sim", "gf", "--n", "2", "--c", "1..3", "--q", "0.6", "--d", "5",
                                     "--reps", "2000", "--seed", "42", "--out"};
    auto args_a = args, args_b = args;
    args_a.push_back(a);
    args_b.push_back(b);
    REQUIRE(main_entry(args_a) == 0);
    std::string first = slurp(a);
    REQUIRE(main_entry(args_a) == 0);
    CHECK(slurp(a) == first);
    args_b.insert(args_b.end(), {"--format", "json"});
    REQUIRE(main_entry(args_b) == 0);
    auto j = nlohmann::json::parse(slurp(b));
    CHECK(j.size() == 3);
    CHECK(j[0]["seed"] == 42);
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("exit codes") {
    CHECK(main_entry({"rlc", "--q", "0.5", "--nope"}) == 1);
    CHECK(main_entry({"sim", "gf", "--q", "0.5", "--d", "4", "--reps", "10", "--out", temp_path("x.csv")}) == 2);
    CHECK(main_entry({"trace", "adversarial", "--c", "2", "--m", "6"}) == 1);
    auto path = temp_path("bcast_cli_trace.bin");
    CHECK(main_entry({"trace", "adversarial", "--c", "2", "--cp", "3", "--m", "6", "--trace", path, "--out",
                      temp_path("adv.csv")}) == 0);
    CHECK(main_entry({"trace", "replay", "--c", "2,3", "--m", "6", "--trace", path, "--out", temp_path("rep.csv")}) == 0);
    std::string text = slurp(temp_path("rep.csv"));
    CHECK(text.find("trace_delay") != std::string::npos);
}
