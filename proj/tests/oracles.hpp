#pragma once

// Reference computations kept independent of the library code they check.

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

/// Classical Erlang-B recursion B(k) = a B(k-1) / (k + a B(k-1)).
inline double erlang_b(double offered_load, int channels) {
    double b = 1.0;
    for (int k = 1; k <= channels; ++k) b = offered_load * b / (k + offered_load * b);
    return b;
}

/// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    double real(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    bool chance(double p) { return real(0.0, 1.0) < p; }

private:
    std::mt19937_64 rng_;
};

} // namespace oracle
