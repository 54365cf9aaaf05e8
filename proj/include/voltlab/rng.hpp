#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace voltlab {

// splitmix64 step; used both as a stream-key mixer and to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Collapse (base_seed, n, replication, component) into one 64-bit stream key.
// Feeding each field through the mixer keeps distinct tuples on distinct
// streams even when fields collide numerically (e.g. n == replication).
inline std::uint64_t stream_key(std::uint64_t base_seed, std::uint64_t n,
                                std::uint64_t replication, std::uint64_t component) {
    std::uint64_t s = base_seed;
    std::uint64_t k = splitmix64(s);
    s ^= 0x6a09e667f3bcc908ULL + n;
    k ^= splitmix64(s);
    s ^= 0xbb67ae8584caa73bULL + replication;
    k ^= splitmix64(s);
    s ^= 0x3c6ef372fe94f82bULL + component;
    k ^= splitmix64(s);
    return k;
}

// Deterministic generator: mt19937_64 seeded from a splitmix64-expanded key,
// plus the handful of scalar distributions the simulators need.
class Rng {
public:
    explicit Rng(std::uint64_t key) {
        std::uint64_t s = key;
        std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
        engine_.seed(seq);
    }

    Rng(std::uint64_t base_seed, std::uint64_t n, std::uint64_t replication,
        std::uint64_t component)
        : Rng(stream_key(base_seed, n, replication, component)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0,1): 53-bit mantissa, offset so 0 is excluded (log-safe).
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Standard normal via polar Box-Muller with a cached spare.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    double exponential() { return -std::log(uniform01()); }

    // Poisson count: product method for small mean, halving recursion above
    // (exact: Poisson(a+b) = Poisson(a) + independent Poisson(b)).
    std::uint64_t poisson(double lambda) {
        std::uint64_t total = 0;
        while (lambda > 30.0) {
            const double half = lambda * 0.5;
            total += poisson_small(half);
            lambda -= half;
        }
        return total + poisson_small(lambda);
    }

private:
    std::uint64_t poisson_small(double lambda) {
        const double limit = std::exp(-lambda);
        std::uint64_t count = 0;
        double prod = uniform01();
        while (prod > limit) {
            ++count;
            prod *= uniform01();
        }
        return count;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace voltlab
