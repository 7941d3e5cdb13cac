#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppdcsk/chaos.hpp"
#include "ppdcsk/packet.hpp"
#include "ppdcsk/signal.hpp"

namespace ppdcsk::dcsk {

// The spreading factor 2*beta is treated as the shared secret.
struct DcskKey {
    std::size_t half_spreading = 50;  // beta

    std::size_t spreading_factor() const { return 2 * half_spreading; }
    void validate() const;

    bool operator==(const DcskKey&) const = default;
};

enum class TiePolicy { plus_one, minus_one };

struct Detection {
    std::vector<int> symbols;
    std::size_t tie_count = 0;  // bits whose correlator output was exactly zero
};

// Per-bit correlator output split into chip, chip-noise and noise-noise
// parts. signal_term carries the bit sign; the three parts sum to y_l.
struct CorrelatorDecomposition {
    double signal_term = 0.0;
    double cross_term = 0.0;
    double noise_term = 0.0;

    double sum() const { return signal_term + cross_term + noise_term; }
};

// DCSK modulation. Each bit occupies 2*beta chip periods: the first beta
// samples are fresh chaotic chips, the next beta are data_gain * b * (the
// same chips). The generator free-runs at the chip rate, so it advances
// 2*beta samples per bit; the data half transmits the beta-delayed copy.
// Standard DCSK uses data_gain = 1; the power-carrying modulator scales the
// data half by the packet amplitude a.
BasebandSignal modulate(const packet::BitStream& bits, const DcskKey& key,
                        const chaos::ChaosParams& params, double data_gain = 1.0);

// y_l = sum over the data half of bit l of r_k * r_{k-beta}.
std::vector<double> correlate(const BasebandSignal& received, const DcskKey& key);

// Correlator terms for one bit given the transmitted chips and the noise
// added to each half. All three spans must have length beta.
CorrelatorDecomposition decompose(std::span<const double> sent_chips,
                                  std::span<const double> noise_ref,
                                  std::span<const double> noise_data, int bit,
                                  double data_gain = 1.0);

// Zero-threshold detector: y > 0 -> +1, y < 0 -> -1, y == 0 -> tie policy.
Detection detect(std::span<const double> correlator_out,
                 TiePolicy policy = TiePolicy::plus_one);

// correlate() then detect().
Detection demodulate(const BasebandSignal& received, const DcskKey& key,
                     TiePolicy policy = TiePolicy::plus_one);

// Chips transmitted as the reference half of bits [first_bit, first_bit +
// bit_count) of a stream modulated with `params`: bit l occupies generator
// samples [2*beta*l, 2*beta*(l+1)) and transmits the first beta of them.
std::vector<double> reference_chips(const chaos::ChaosParams& params, const DcskKey& key,
                                    std::size_t first_bit, std::size_t bit_count);

}  // namespace ppdcsk::dcsk
