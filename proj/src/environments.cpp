#include "stigmergy/environments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stigmergy {

namespace {

void check_rewards(const std::vector<double>& rewards) {
    if (rewards.empty()) {
        throw std::domain_error("bandit needs at least one arm");
    }
    for (double r : rewards) {
        if (!std::isfinite(r) || r < 0.0) {
            throw std::domain_error("arm attractiveness must be finite and >= 0");
        }
    }
}

void check_noise(double noise_std) {
    if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
        throw std::domain_error("noise standard deviation must be >= 0");
    }
}

}  // namespace

BanditSpec::BanditSpec(std::vector<double> base_rewards, double noise_std)
    : base_rewards_(std::move(base_rewards)), noise_std_(noise_std) {
    check_rewards(base_rewards_);
    check_noise(noise_std_);
}

BanditSpec::BanditSpec(std::vector<double> base_rewards, std::vector<double> switched_rewards,
                       std::int64_t switch_epoch, double noise_std)
    : base_rewards_(std::move(base_rewards)),
      switched_rewards_(std::move(switched_rewards)),
      switch_epoch_(switch_epoch),
      noise_std_(noise_std) {
    check_rewards(base_rewards_);
    check_noise(noise_std_);
    if (switch_epoch < 0) {
        throw std::domain_error("switch epoch must be >= 0");
    }
    auto sorted_base = base_rewards_;
    auto sorted_switched = *switched_rewards_;
    std::sort(sorted_base.begin(), sorted_base.end());
    std::sort(sorted_switched.begin(), sorted_switched.end());
    if (sorted_base != sorted_switched) {
        throw std::domain_error("switched rewards must be a permutation of the base rewards");
    }
}

BanditSpec BanditSpec::with_noise(double noise_std) const {
    check_noise(noise_std);
    BanditSpec copy = *this;
    copy.noise_std_ = noise_std;
    return copy;
}

const std::vector<double>& rewards_at(const BanditSpec& env, std::int64_t epoch) {
    if (env.switch_epoch() && epoch >= *env.switch_epoch()) {
        return *env.switched_rewards();
    }
    return env.base_rewards();
}

double sample_attractiveness(const BanditSpec& env, std::size_t arm, std::int64_t epoch, RngStream& rng) {
    const auto& rewards = rewards_at(env, epoch);
    if (arm >= rewards.size()) {
        throw std::out_of_range("arm index out of range");
    }
    return std::max(0.0, rng.normal(rewards[arm], env.noise_std()));
}

Policy initial_policy(std::size_t num_arms) {
    if (num_arms < 2) {
        throw std::domain_error("initial policy needs at least two arms");
    }
    std::vector<double> probs(num_arms, 0.1 / static_cast<double>(num_arms - 1));
    probs[0] = 0.9;
    return Policy(std::move(probs));
}

BanditSpec three_arm_switch(std::int64_t switch_epoch, double good_reward, double noise_std) {
    return BanditSpec({0.0, good_reward, 0.0}, {0.0, 0.0, good_reward}, switch_epoch, noise_std);
}

}  // namespace stigmergy
