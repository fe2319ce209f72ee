#ifndef BNBOOT_RNG_HPP
#define BNBOOT_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace bnboot {

/// splitmix64 mixing step; used to hash replicate indices into seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for sub-stream k of a run: seed XOR hash(k). Order-independent, so
/// parallel and serial replicate execution draw identical streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
    return seed ^ splitmix64(k);
}

/// Deterministic RNG fixed to mt19937_64. Bounded draws and uniform doubles
/// are implemented here rather than via std distributions, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, n). Unbiased via rejection sampling.
    int uniform_int(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return static_cast<int>(v % bound);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Index drawn from an (unnormalized-tolerant) categorical distribution.
    int sample_categorical(const std::vector<double>& probs) {
        const double u = uniform01();
        double cum = 0.0;
        const int n = static_cast<int>(probs.size());
        for (int k = 0; k < n; ++k) {
            cum += probs[k];
            if (u < cum) return k;
        }
        return n - 1;  // absorb rounding slack
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace bnboot

#endif
