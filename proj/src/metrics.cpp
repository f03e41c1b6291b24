#include "stigmergy/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stigmergy {

std::size_t adaptation_offset(const RunTrace& trace, std::size_t delta, std::size_t target_arm, double threshold,
                              std::size_t horizon) {
    const Matrix& history = trace.policy_history;
    if (target_arm >= history.cols()) {
        throw std::out_of_range("target arm out of range");
    }
    const std::size_t last_row = std::min(history.rows() == 0 ? 0 : history.rows() - 1, horizon);
    for (std::size_t row = delta; row <= last_row && row < history.rows(); ++row) {
        if (history(row, target_arm) >= threshold) {
            return row - delta;
        }
    }
    return horizon;
}

AdaptationSummary mta(std::span<const RunTrace> traces, std::size_t delta, std::size_t target_arm,
                      double threshold, std::size_t horizon) {
    if (traces.empty()) {
        throw std::invalid_argument("mta needs at least one trace");
    }
    if (delta >= horizon) {
        throw std::domain_error("switch epoch must precede the horizon");
    }
    AdaptationSummary summary;
    summary.per_run_k.reserve(traces.size());
    double total = 0.0;
    std::size_t successes = 0;
    for (const auto& trace : traces) {
        const std::size_t k = adaptation_offset(trace, delta, target_arm, threshold, horizon);
        summary.per_run_k.push_back(k);
        total += static_cast<double>(k);
        if (k < horizon) {
            ++successes;
        }
    }
    const auto n = static_cast<double>(traces.size());
    summary.mta = total / n;
    summary.success_rate = static_cast<double>(successes) / n;
    return summary;
}

double mse(const Matrix& predicted, const Matrix& target) {
    if (!predicted.same_shape(target)) {
        throw std::invalid_argument("trajectory shapes differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < predicted.data().size(); ++i) {
        const double d = predicted.data()[i] - target.data()[i];
        total += d * d;
    }
    return total;
}

double mean_squared_error(const Matrix& predicted, const Matrix& target) {
    const double total = mse(predicted, target);
    return predicted.data().empty() ? 0.0 : total / static_cast<double>(predicted.data().size());
}

Matrix mean_trajectory(std::span<const RunTrace> traces) {
    if (traces.empty()) {
        throw std::invalid_argument("mean_trajectory needs at least one trace");
    }
    const Matrix& first = traces.front().policy_history;
    Matrix mean(first.rows(), first.cols());
    for (const auto& trace : traces) {
        if (!trace.policy_history.same_shape(first)) {
            throw std::invalid_argument("traces differ in shape");
        }
        for (std::size_t r = 0; r < first.rows(); ++r) {
            for (std::size_t c = 0; c < first.cols(); ++c) {
                mean(r, c) += trace.policy_history(r, c);
            }
        }
    }
    const auto n = static_cast<double>(traces.size());
    for (std::size_t r = 0; r < first.rows(); ++r) {
        for (std::size_t c = 0; c < first.cols(); ++c) {
            mean(r, c) /= n;
        }
    }
    return mean;
}

namespace {

// Linear interpolation between order statistics of a sorted sample.
double percentile(const std::vector<double>& sorted, double fraction) {
    const double position = fraction * static_cast<double>(sorted.size() - 1);
    const auto lower = static_cast<std::size_t>(std::floor(position));
    const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
    const double weight = position - static_cast<double>(lower);
    return sorted[lower] + weight * (sorted[upper] - sorted[lower]);
}

}  // namespace

BootstrapBand bootstrap_ci(const Matrix& samples, double confidence, std::size_t resamples, RngStream& rng) {
    const std::size_t runs = samples.rows();
    const std::size_t points = samples.cols();
    if (runs < 2) {
        throw std::invalid_argument("bootstrap needs at least two runs");
    }
    if (resamples < 100) {
        throw std::domain_error("bootstrap needs at least 100 resamples");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::domain_error("confidence must lie in (0, 1)");
    }

    BootstrapBand band{std::vector<double>(points), std::vector<double>(points, 0.0), std::vector<double>(points)};
    for (std::size_t r = 0; r < runs; ++r) {
        for (std::size_t c = 0; c < points; ++c) {
            band.mean[c] += samples(r, c);
        }
    }
    for (double& m : band.mean) {
        m /= static_cast<double>(runs);
    }

    // Each resample draws whole runs so that the time correlation is kept.
    Matrix resample_means(resamples, points);
    std::vector<std::size_t> picks(runs);
    for (std::size_t b = 0; b < resamples; ++b) {
        for (auto& p : picks) {
            p = static_cast<std::size_t>(rng.below(runs));
        }
        for (std::size_t c = 0; c < points; ++c) {
            double total = 0.0;
            for (std::size_t p : picks) {
                total += samples(p, c);
            }
            resample_means(b, c) = total / static_cast<double>(runs);
        }
    }

    const double tail = (1.0 - confidence) / 2.0;
    std::vector<double> column(resamples);
    for (std::size_t c = 0; c < points; ++c) {
        for (std::size_t b = 0; b < resamples; ++b) {
            column[b] = resample_means(b, c);
        }
        std::sort(column.begin(), column.end());
        band.lower[c] = std::min(percentile(column, tail), band.mean[c]);
        band.upper[c] = std::max(percentile(column, 1.0 - tail), band.mean[c]);
    }
    return band;
}

Matrix arm_samples(std::span<const RunTrace> traces, std::size_t arm) {
    if (traces.empty()) {
        throw std::invalid_argument("arm_samples needs at least one trace");
    }
    const std::size_t points = traces.front().policy_history.rows();
    Matrix out(traces.size(), points);
    for (std::size_t r = 0; r < traces.size(); ++r) {
        const Matrix& history = traces[r].policy_history;
        if (history.rows() != points || arm >= history.cols()) {
            throw std::invalid_argument("traces differ in shape or arm out of range");
        }
        for (std::size_t t = 0; t < points; ++t) {
            out(r, t) = history(t, arm);
        }
    }
    return out;
}

}  // namespace stigmergy
