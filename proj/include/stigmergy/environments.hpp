#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stigmergy/policy.hpp"
#include "stigmergy/rng.hpp"

namespace stigmergy {

/// Bandit whose arms return their intrinsic attractiveness plus Gaussian
/// noise. Optionally the reward table is permuted once at a switch epoch.
class BanditSpec {
public:
    static constexpr double kDefaultNoiseStd = 0.1;

    /// Stateless bandit.
    explicit BanditSpec(std::vector<double> base_rewards, double noise_std = kDefaultNoiseStd);
    /// Two-state bandit. `switched_rewards` must be a permutation of `base_rewards`.
    BanditSpec(std::vector<double> base_rewards, std::vector<double> switched_rewards, std::int64_t switch_epoch,
               double noise_std = kDefaultNoiseStd);

    std::size_t num_arms() const noexcept { return base_rewards_.size(); }
    const std::vector<double>& base_rewards() const noexcept { return base_rewards_; }
    const std::optional<std::vector<double>>& switched_rewards() const noexcept { return switched_rewards_; }
    std::optional<std::int64_t> switch_epoch() const noexcept { return switch_epoch_; }
    double noise_std() const noexcept { return noise_std_; }

    BanditSpec with_noise(double noise_std) const;

    bool operator==(const BanditSpec&) const = default;

private:
    std::vector<double> base_rewards_;
    std::optional<std::vector<double>> switched_rewards_;
    std::optional<std::int64_t> switch_epoch_;
    double noise_std_;
};

/// Reward table in force during `epoch`; the switched table applies from the
/// switch epoch onwards (inclusive).
const std::vector<double>& rewards_at(const BanditSpec& env, std::int64_t epoch);

/// max(0, r(arm) + N(0, noise_std^2)).
double sample_attractiveness(const BanditSpec& env, std::size_t arm, std::int64_t epoch, RngStream& rng);

/// 0.9 on the first arm, 0.1 spread evenly over the rest. Needs num_arms >= 2.
Policy initial_policy(std::size_t num_arms);

/// Three arms: (0, r, 0) before `switch_epoch`, (0, 0, r) from then on.
BanditSpec three_arm_switch(std::int64_t switch_epoch, double good_reward = 2.73,
                            double noise_std = BanditSpec::kDefaultNoiseStd);

}  // namespace stigmergy
