#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>

namespace stigmergy {

/// SplitMix64 finalizer. Bijective on 64-bit words with full avalanche.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a label path into a seed: h = mix64(h ^ mix64(label + golden)) per label.
std::uint64_t derive_key(std::uint64_t master_seed, std::span<const std::uint64_t> labels) noexcept;

/// Deterministic, platform-stable random stream (xoshiro256** keyed by SplitMix64).
///
/// Streams are never shared between runs. Independent streams are obtained by
/// deriving a new key from (master seed, label path), so results never depend
/// on the order in which parallel work is scheduled.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) noexcept;

    static RngStream derive(std::uint64_t master_seed, std::span<const std::uint64_t> labels) noexcept;
    static RngStream derive(std::uint64_t master_seed, std::initializer_list<std::uint64_t> labels) noexcept;

    /// Child stream; the parent is not advanced.
    RngStream split(std::uint64_t label) const noexcept;

    std::uint64_t key() const noexcept { return key_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Marsaglia polar method; only ln and sqrt are needed from libm.
    double normal(double mean, double std) noexcept;

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) noexcept;

    /// Inverse-CDF draw over a probability vector. Slack left by rounding is
    /// absorbed by the last index with nonzero mass.
    std::size_t categorical(std::span<const double> probs) noexcept;

    /// Same as categorical() but over non-negative weights summing to `total`.
    std::size_t weighted(std::span<const double> weights, double total) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next_u64(); }

private:
    std::uint64_t key_;
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace stigmergy
