#include <semiring_lab/selfcheck.hpp>

#include <cstdio>

int main()
{
    auto results = semiring_lab::selfcheck::run_all();
    int failures = 0;
    for (const auto & r : results) {
        std::printf("criterion %2d [%s] %-60s %s (%lld ms)\n", r.number,
            r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
            static_cast<long long>(r.elapsed_ms));
        if (! r.pass)
            ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
        results.size());
    return failures == 0 ? 0 : 1;
}
