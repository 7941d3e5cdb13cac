#include "ppdcsk/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ppdcsk/compensated_sum.hpp"

namespace ppdcsk::chaos {

namespace {

void validate_params(const ChaosParams& params) {
    if (!(params.initial_value >= -kRange && params.initial_value <= kRange)) {
        throw std::domain_error("chaos: initial_value " + std::to_string(params.initial_value) +
                                " outside [-sqrt(2), sqrt(2)]");
    }
    if (!(params.sample_period > 0.0)) {
        throw std::domain_error("chaos: sample_period must be positive");
    }
}

}  // namespace

double step(double x) {
    const double next = kRange * (1.0 - x * x);
    return std::clamp(next, -kRange, kRange);
}

LogisticMap::LogisticMap(const ChaosParams& params)
    : x_(params.initial_value), sample_period_(params.sample_period) {
    validate_params(params);
}

double LogisticMap::next() {
    const double current = x_;
    x_ = step(x_);
    return current;
}

void LogisticMap::skip(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        x_ = step(x_);
    }
}

ChaoticSequence generate(const ChaosParams& params, std::size_t count) {
    if (count == 0) {
        throw std::domain_error("chaos: generate count must be >= 1");
    }
    LogisticMap map(params);
    ChaoticSequence seq;
    seq.sample_period = params.sample_period;
    seq.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        seq.samples.push_back(map.next());
    }
    return seq;
}

double mean_square(std::span<const double> samples) {
    if (samples.empty()) {
        throw std::domain_error("chaos: mean_square of an empty sequence");
    }
    CompensatedSum sum;
    for (double v : samples) {
        sum.add(v * v);
    }
    return sum.value() / static_cast<double>(samples.size());
}

double mean_square(const ChaoticSequence& seq) {
    return mean_square(std::span<const double>(seq.samples));
}

std::vector<double> autocorrelation(const ChaoticSequence& seq, std::size_t max_lag) {
    const std::size_t n = seq.samples.size();
    if (max_lag >= n) {
        throw std::domain_error("chaos: autocorrelation max_lag must be < sequence length");
    }
    std::vector<double> r(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        CompensatedSum sum;
        for (std::size_t k = lag; k < n; ++k) {
            sum.add(seq.samples[k] * seq.samples[k - lag]);
        }
        r[lag] = sum.value() / static_cast<double>(n - lag);
    }
    return r;
}

std::vector<double> normalized_autocorrelation(const ChaoticSequence& seq, std::size_t max_lag) {
    std::vector<double> r = autocorrelation(seq, max_lag);
    const double r0 = r[0];
    if (r0 == 0.0) {
        throw std::domain_error("chaos: cannot normalize autocorrelation with zero lag-0 power");
    }
    for (double& v : r) {
        v /= r0;
    }
    return r;
}

std::optional<std::size_t> divergence_time(const ChaosParams& first, const ChaosParams& second,
                                           double threshold, std::size_t max_iter) {
    if (!(threshold > 0.0)) {
        throw std::domain_error("chaos: divergence threshold must be positive");
    }
    LogisticMap a(first);
    LogisticMap b(second);
    for (std::size_t k = 1; k <= max_iter; ++k) {
        if (std::abs(a.next() - b.next()) > threshold) {
            return k;
        }
    }
    return std::nullopt;
}

}  // namespace ppdcsk::chaos
