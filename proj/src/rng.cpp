#include "stigmergy/rng.hpp"

#include <cmath>

namespace stigmergy {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t derive_key(std::uint64_t master_seed, std::span<const std::uint64_t> labels) noexcept {
    std::uint64_t h = mix64(master_seed + kGolden);
    for (std::uint64_t label : labels) {
        h = mix64(h ^ mix64(label + kGolden));
    }
    return h;
}

RngStream::RngStream(std::uint64_t key) noexcept : key_(key) {
    std::uint64_t s = key;
    for (auto& word : state_) {
        s += kGolden;
        word = mix64(s);
    }
}

RngStream RngStream::derive(std::uint64_t master_seed, std::span<const std::uint64_t> labels) noexcept {
    return RngStream(derive_key(master_seed, labels));
}

RngStream RngStream::derive(std::uint64_t master_seed, std::initializer_list<std::uint64_t> labels) noexcept {
    return derive(master_seed, std::span<const std::uint64_t>(labels.begin(), labels.size()));
}

RngStream RngStream::split(std::uint64_t label) const noexcept {
    const std::uint64_t path[] = {label};
    return derive(key_, path);
}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal(double mean, double std) noexcept {
    if (std == 0.0) {
        return mean;
    }
    if (has_spare_) {
        has_spare_ = false;
        return mean + std * spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return mean + std * (u * factor);
}

__extension__ using u128 = unsigned __int128;

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
    // Lemire's multiply-shift with rejection.
    u128 m = static_cast<u128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<u128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

std::size_t RngStream::categorical(std::span<const double> probs) noexcept {
    return weighted(probs, 1.0);
}

std::size_t RngStream::weighted(std::span<const double> weights, double total) noexcept {
    const double u = uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) {
            continue;
        }
        cumulative += weights[i];
        last_positive = i;
        if (u < cumulative) {
            return i;
        }
    }
    return last_positive;
}

}  // namespace stigmergy
