#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace ppdcsk::chaos {

// The normalized improved logistic map x' = sqrt(2)(1 - x^2) keeps its
// iterates inside [-sqrt(2), +sqrt(2)].
inline constexpr double kRange = std::numbers::sqrt2;

struct ChaosParams {
    double initial_value = 0.75;  // x_1, dimensionless
    double sample_period = 1e-3;  // seconds between samples (T_x)
};

struct ChaoticSequence {
    std::vector<double> samples;
    double sample_period = 1e-3;
};

// One map step. The result is clamped onto [-sqrt2, sqrt2]: squaring a
// boundary value rounds slightly past 2, which would otherwise let the
// iterate escape by a few ulp.
double step(double x);

// Streaming generator; next() yields x_1, x_2, ... in order.
class LogisticMap {
public:
    explicit LogisticMap(const ChaosParams& params);

    double next();
    void skip(std::size_t count);
    double state() const { return x_; }
    double sample_period() const { return sample_period_; }

private:
    double x_;
    double sample_period_;
};

// Exactly `count` samples starting with the initial value. Deterministic:
// equal params give bit-identical output.
ChaoticSequence generate(const ChaosParams& params, std::size_t count);

// Arithmetic mean of squared samples.
double mean_square(std::span<const double> samples);
double mean_square(const ChaoticSequence& seq);

// Sample-mean estimate of E(x_k x_{k-n}) for n = 0..max_lag: the average of
// the N-n available products at each lag.
std::vector<double> autocorrelation(const ChaoticSequence& seq, std::size_t max_lag);

// autocorrelation() divided by its zero-lag value.
std::vector<double> normalized_autocorrelation(const ChaoticSequence& seq, std::size_t max_lag);

// Smallest 1-based k <= max_iter with |x_k - x'_k| > threshold for two
// trajectories, or nullopt if they stay within threshold throughout.
std::optional<std::size_t> divergence_time(const ChaosParams& first, const ChaosParams& second,
                                           double threshold, std::size_t max_iter);

}  // namespace ppdcsk::chaos
