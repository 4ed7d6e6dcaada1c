// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstring>

#include "bcast/verify.hpp"

int main(int argc, char** argv) {
    bcast::VerifyOptions opt;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
    bool all = true;
    for (const auto& r : bcast::run_all_checks(opt)) {
        std::printf("%s\n", bcast::format_check(r).c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
