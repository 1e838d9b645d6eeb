#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace devis {

// splitmix64; used everywhere so results do not depend on the platform's
// std::uniform_* implementations.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-independent stream derivation: hash a list of values into one seed.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (std::uint64_t p : parts) {
        h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        std::uint64_t s = h;
        h = splitmix64(s);
    }
    return h;
}

/// Small deterministic generator with explicit state.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return n == 0 ? 0 : next_u64() % n;
    }

    /// Standard normal via Box-Muller (single value per draw; the discarded
    /// pair keeps the stream independent of caller usage patterns).
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) {
        return mean + stddev * normal();
    }

    /// Symmetric Dirichlet(alpha = 1) over n parts via normalized
    /// exponentials.
    std::vector<double> dirichlet(std::size_t n) {
        std::vector<double> out(n);
        double sum = 0.0;
        for (auto& v : out) {
            double u = uniform();
            while (u <= 0.0) u = uniform();
            v = -std::log(u);
            sum += v;
        }
        for (auto& v : out) v /= sum;
        return out;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace devis
