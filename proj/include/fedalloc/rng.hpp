#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace fedalloc {

// Purpose tags used to derive independent substreams from one run seed.
// A stream is fully identified by (run seed, index, tag), so results do not
// depend on the order in which streams are consumed.
enum class StreamTag : std::uint64_t {
    scenario = 1,
    channel = 2,
    profile = 3,
    harmony = 4,
    baseline_pf = 5,
    baseline_theta = 6,
    baseline_all = 7,
    sweep = 8,
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t index, StreamTag tag) {
    std::uint64_t h = detail::splitmix64(run_seed);
    h = detail::splitmix64(h ^ detail::splitmix64(index + 0x517cc1b727220a95ULL));
    return detail::splitmix64(h ^ static_cast<std::uint64_t>(tag));
}

// Deterministic random stream with a fixed word budget per draw:
// uniform01 / uniform / pick / coin consume one engine word, normal consumes
// exactly two (also when sd == 0), poisson consumes a value-dependent count.
// Identical seeds therefore reproduce trajectories bit for bit.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    static RandomStream derive(std::uint64_t run_seed, std::uint64_t index, StreamTag tag) {
        return RandomStream(derive_seed(run_seed, index, tag));
    }

    // [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    bool coin() { return (eng_() & 1ULL) != 0ULL; }

    // Box-Muller transform.
    double normal(double mean, double sd) {
        double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        double u2 = uniform01();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        return mean + sd * z;
    }

    // Index in [0, n) via fixed-point multiply; n must be > 0.
    std::size_t pick(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(eng_()) * static_cast<unsigned __int128>(n)) >> 64);
    }

    // Knuth's product method; adequate for the small rates used here.
    int poisson(double lambda) {
        double limit = std::exp(-lambda);
        double prod = uniform01();
        int k = 0;
        while (prod > limit) {
            prod *= uniform01();
            ++k;
        }
        return k;
    }

private:
    static constexpr double kPi = 3.14159265358979323846264338327950288;
    std::mt19937_64 eng_;
};

}  // namespace fedalloc
