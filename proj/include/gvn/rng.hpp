#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gvn {

// Deterministic RNG used everywhere randomness is needed.
//
// mt19937_64 has a standardized sequence, but the std <random> distributions
// are implementation-defined, so the distribution maps live here. All run
// randomness flows from one top-level seed; per-component streams are derived
// with derive(name) so adding a consumer never shifts another one's stream.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix(seed)) {}

    uint64_t next_u64() {
        // xorshift* — tiny, standardized behavior, good enough statistics
        uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // Uniform in [0, bound), bias rejected.
    uint64_t next_below(uint64_t bound) {
        if (bound == 0) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    int next_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; consumes two uniforms per pair, caches the second.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream for a named component.
    Rng derive(const std::string& name) const {
        uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a over the name
        for (unsigned char c : name) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return Rng(splitmix(state_ ^ h));
    }

private:
    static uint64_t splitmix(uint64_t x) {
        x += 0x9E3779B97f4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        x = x ^ (x >> 31);
        return x ? x : 0x9E3779B97f4A7C15ULL; // xorshift state must be nonzero
    }

    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace gvn
