#pragma once

#include <cstdint>
#include <cmath>

namespace lncat {

/// SplitMix64 finalizer; a fixed 64-bit mixing permutation.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream with reproducible, order-independent substreams.
///
/// Streams form a tree: a root stream is built from a 64-bit seed, and
/// child(i) derives substream i from the stream's *identity*, not from its
/// draw position, so the values produced by child(i) never depend on how many
/// draws the parent has made or on which thread asks first. The splitting
/// function is fixed: child key = mix64(key ^ mix64(index ^ salt)).
///
/// The generator itself is SplitMix64: state advances by the golden-ratio
/// increment and each output is the mixed state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : key_(mix64(seed ^ kSeedSalt)), state_(key_) {}

    /// Substream `index` of this stream; a pure function of (identity, index).
    [[nodiscard]] RngStream child(std::uint64_t index) const {
        return RngStream(FromKey{}, mix64(key_ ^ mix64(index ^ kChildSalt)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    /// Uniform double in the open interval (0, 1), 53-bit resolution.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double next_normal(double mean, double stddev) { return mean + stddev * next_normal(); }

    [[nodiscard]] std::uint64_t key() const { return key_; }

private:
    struct FromKey {};
    RngStream(FromKey, std::uint64_t key) : key_(key), state_(key) {}

    static constexpr std::uint64_t kSeedSalt = 0x5851F42D4C957F2DULL;
    static constexpr std::uint64_t kChildSalt = 0xA0761D6478BD642FULL;
    static constexpr double kPi = 3.14159265358979323846;

    std::uint64_t key_;
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace lncat
