#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppdcsk/signal.hpp"

namespace ppdcsk::analysis {

// Measured vs closed-form payload power for one modulator configuration.
// Powers are in watts under the 1-ohm convention (voltage^2 = power).
struct PowerReport {
    double measured_watts = 0.0;     // mean of s^2 over the payload window
    double closed_form_watts = 0.0;  // (1 + a^2) E[x^2] / 2
    double efficiency = 0.0;         // closed_form_watts / a^2
    double mean_square_chip = 0.0;   // E[x^2] over the payload reference chips
    // configuration echo
    double amplitude = 0.0;
    std::size_t spreading_factor = 0;
    std::size_t payload_bits = 0;
    double sample_period = 0.0;
    double initial_value = 0.0;
};

// Single-segment rectangular-window periodogram, one-sided. Bin spacing is
// 1/(N T_x); the bins sum to the windowed mean square (discrete Parseval).
struct SpectrumEstimate {
    std::vector<double> bin_frequencies;  // Hz, 0 .. Nyquist
    std::vector<double> densities;        // watts per bin
    double total_power = 0.0;
};

// Mean of squared samples over the window. With uniform sampling the
// time-weighted integral reduces to the arithmetic mean.
double average_power(const BasebandSignal& signal, SampleWindow window);

// (1 + a^2) * mean_square_chip / 2.
double modulator_output_power(double mean_square_chip, double a);

// modulator_output_power / a^2; the modulator input power during payload is
// a^2, so this is the output-to-input power ratio.
double modulator_efficiency(double mean_square_chip, double a);

SpectrumEstimate power_spectrum(const BasebandSignal& signal, SampleWindow window);

// Fraction of differing symbols.
double bit_error_rate(std::span<const int> sent, std::span<const int> received);

}  // namespace ppdcsk::analysis
