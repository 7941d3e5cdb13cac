#include "ppdcsk/analysis.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <string>

#include "ppdcsk/compensated_sum.hpp"

namespace ppdcsk::analysis {

namespace {

void validate_window(const BasebandSignal& signal, SampleWindow window) {
    if (window.begin >= window.end) {
        throw std::domain_error("analysis: sample window is empty");
    }
    if (window.end > signal.samples.size()) {
        throw std::domain_error("analysis: sample window [" + std::to_string(window.begin) + ", " +
                                std::to_string(window.end) + ") exceeds signal length " +
                                std::to_string(signal.samples.size()));
    }
}

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

double average_power(const BasebandSignal& signal, SampleWindow window) {
    validate_window(signal, window);
    CompensatedSum sum;
    for (std::size_t k = window.begin; k < window.end; ++k) {
        const double v = signal.samples[k];
        sum.add(v * v);
    }
    return sum.value() / static_cast<double>(window.length());
}

double modulator_output_power(double mean_square_chip, double a) {
    if (mean_square_chip < 0.0 || a < 0.0) {
        throw std::domain_error("analysis: modulator_output_power needs non-negative inputs");
    }
    return (1.0 + a * a) * mean_square_chip / 2.0;
}

double modulator_efficiency(double mean_square_chip, double a) {
    if (!(a > 0.0)) {
        throw std::domain_error("analysis: modulator_efficiency needs a > 0");
    }
    return modulator_output_power(mean_square_chip, a) / (a * a);
}

SpectrumEstimate power_spectrum(const BasebandSignal& signal, SampleWindow window) {
    validate_window(signal, window);
    const std::size_t n = window.length();
    if (n < 2) {
        throw std::domain_error("analysis: power_spectrum window needs at least 2 samples");
    }
    if (!(signal.sample_period > 0.0)) {
        throw std::domain_error("analysis: sample_period must be positive");
    }

    const std::size_t bins = n / 2 + 1;
    std::vector<double> input(signal.samples.begin() + static_cast<std::ptrdiff_t>(window.begin),
                              signal.samples.begin() + static_cast<std::ptrdiff_t>(window.end));
    std::vector<fftw_complex> output(bins);

    fftw_plan plan = nullptr;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), input.data(), output.data(),
                                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    if (plan == nullptr) {
        throw std::runtime_error("analysis: FFTW failed to plan a transform of length " +
                                 std::to_string(n));
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    // One-sided periodogram normalized so the bins sum to the mean square.
    SpectrumEstimate spectrum;
    spectrum.bin_frequencies.resize(bins);
    spectrum.densities.resize(bins);
    const double bin_spacing = 1.0 / (static_cast<double>(n) * signal.sample_period);
    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    CompensatedSum total;
    for (std::size_t j = 0; j < bins; ++j) {
        spectrum.bin_frequencies[j] = static_cast<double>(j) * bin_spacing;
        const double mag2 = output[j][0] * output[j][0] + output[j][1] * output[j][1];
        const bool paired = j > 0 && !(n % 2 == 0 && j == bins - 1);
        spectrum.densities[j] = (paired ? 2.0 : 1.0) * mag2 * scale;
        total.add(spectrum.densities[j]);
    }
    spectrum.total_power = total.value();
    return spectrum;
}

double bit_error_rate(std::span<const int> sent, std::span<const int> received) {
    if (sent.size() != received.size()) {
        throw std::domain_error("analysis: bit_error_rate needs streams of equal length");
    }
    if (sent.empty()) {
        throw std::domain_error("analysis: bit_error_rate of empty streams");
    }
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        if (sent[i] != received[i]) {
            ++errors;
        }
    }
    return static_cast<double>(errors) / static_cast<double>(sent.size());
}

}  // namespace ppdcsk::analysis
