#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "voltlab/rng.hpp"

using namespace voltlab;

TEST_CASE("splitmix64 matches the reference outputs") {
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64(s) == 0x06c45d188009454fULL);
    s = 42;
    CHECK(splitmix64(s) == 0xbdd732262feb6e95ULL);
    CHECK(splitmix64(s) == 0x28efe333b266f103ULL);
}

TEST_CASE("identical keys give identical streams, different keys differ") {
    Rng a(1234), b(1234), c(1235);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        all_equal = all_equal && (va == b.next_u64());
        any_diff = any_diff || (va != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("stream keys are unique across (n, replication, component)") {
    std::set<std::uint64_t> keys;
    std::size_t produced = 0;
    for (std::uint64_t n : {256ULL, 512ULL, 65536ULL}) {
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            for (std::uint64_t comp = 0; comp < 4; ++comp) {
                keys.insert(stream_key(1, n, rep, comp));
                ++produced;
            }
        }
    }
    // also vary the base seed
    for (std::uint64_t base = 2; base < 102; ++base) {
        keys.insert(stream_key(base, 256, 0, 0));
        ++produced;
    }
    CHECK(produced >= 1000);
    CHECK(keys.size() == produced);
}

TEST_CASE("uniform01 lies strictly inside (0,1) with the right mean") {
    Rng rng(7);
    double sum = 0.0;
    bool inside = true;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double u = rng.uniform01();
        inside = inside && u > 0.0 && u < 1.0;
        sum += u;
    }
    CHECK(inside);
    CHECK(sum / m == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("gaussian has mean 0 and variance 1") {
    Rng rng(8);
    double sum = 0.0, sumsq = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
        const double z = rng.gaussian();
        REQUIRE(std::isfinite(z));
        sum += z;
        sumsq += z * z;
    }
    CHECK(sum / m == doctest::Approx(0.0).epsilon(1).scale(0.01));
    CHECK(sumsq / m == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("exponential has mean 1") {
    Rng rng(9);
    double sum = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) sum += rng.exponential();
    CHECK(sum / m == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson mean and variance match the rate") {
    Rng rng(10);
    auto sample = [&rng](double lambda, int m) {
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < m; ++i) {
            const double k = static_cast<double>(rng.poisson(lambda));
            sum += k;
            sumsq += k * k;
        }
        const double mean = sum / m;
        return std::pair{mean, sumsq / m - mean * mean};
    };
    auto [m3, v3] = sample(3.0, 100000);
    CHECK(m3 == doctest::Approx(3.0).epsilon(0.02));
    CHECK(v3 == doctest::Approx(3.0).epsilon(0.05));
    // large rate exercises the halving recursion
    auto [m100, v100] = sample(100.0, 20000);
    CHECK(m100 == doctest::Approx(100.0).epsilon(0.01));
    CHECK(v100 == doctest::Approx(100.0).epsilon(0.08));
    Rng z(11);
    CHECK(z.poisson(0.0) == 0);
}
