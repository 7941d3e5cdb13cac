#include "ppdcsk/dcsk.hpp"

#include <stdexcept>
#include <string>

#include "ppdcsk/compensated_sum.hpp"
#include "ppdcsk/errors.hpp"

namespace ppdcsk::dcsk {

namespace {

void validate_symbols(const std::vector<int>& symbols) {
    for (int s : symbols) {
        if (s != 1 && s != -1) {
            throw std::domain_error("dcsk: bit symbols must be +1 or -1");
        }
    }
}

}  // namespace

void DcskKey::validate() const {
    if (half_spreading < 1) {
        throw std::domain_error("dcsk: half_spreading (beta) must be >= 1");
    }
}

BasebandSignal modulate(const packet::BitStream& bits, const DcskKey& key,
                        const chaos::ChaosParams& params, double data_gain) {
    key.validate();
    if (bits.symbols.empty()) {
        throw std::domain_error("dcsk: cannot modulate an empty bit stream");
    }
    validate_symbols(bits.symbols);
    if (!(data_gain > 0.0)) {
        throw std::domain_error("dcsk: data_gain must be positive");
    }

    const std::size_t beta = key.half_spreading;
    chaos::LogisticMap map(params);

    BasebandSignal signal;
    signal.sample_period = params.sample_period;
    signal.samples.reserve(bits.symbols.size() * 2 * beta);
    for (int b : bits.symbols) {
        const std::size_t base = signal.samples.size();
        for (std::size_t i = 0; i < beta; ++i) {
            signal.samples.push_back(map.next());
        }
        for (std::size_t i = 0; i < beta; ++i) {
            signal.samples.push_back(data_gain * b * signal.samples[base + i]);
        }
        // The generator free-runs through the data half-bit; the delay line
        // replays the reference chips instead of these samples.
        map.skip(beta);
    }
    return signal;
}

std::vector<double> correlate(const BasebandSignal& received, const DcskKey& key) {
    key.validate();
    const std::size_t beta = key.half_spreading;
    const std::size_t bit_samples = 2 * beta;
    if (received.samples.size() % bit_samples != 0) {
        throw FrameError("dcsk: signal length " + std::to_string(received.samples.size()) +
                         " is not a multiple of 2*beta = " + std::to_string(bit_samples));
    }

    const std::size_t bit_count = received.samples.size() / bit_samples;
    std::vector<double> y;
    y.reserve(bit_count);
    for (std::size_t l = 0; l < bit_count; ++l) {
        const double* ref = received.samples.data() + l * bit_samples;
        const double* data = ref + beta;
        CompensatedSum sum;
        for (std::size_t m = 0; m < beta; ++m) {
            sum.add(data[m] * ref[m]);
        }
        y.push_back(sum.value());
    }
    return y;
}

CorrelatorDecomposition decompose(std::span<const double> sent_chips,
                                  std::span<const double> noise_ref,
                                  std::span<const double> noise_data, int bit, double data_gain) {
    if (bit != 1 && bit != -1) {
        throw std::domain_error("dcsk: decompose bit must be +1 or -1");
    }
    if (!(data_gain > 0.0)) {
        throw std::domain_error("dcsk: data_gain must be positive");
    }
    if (sent_chips.size() != noise_ref.size() || sent_chips.size() != noise_data.size()) {
        throw std::domain_error("dcsk: decompose requires chips and noise spans of equal length");
    }

    // r_ref = x + xi_ref, r_data = g*b*x + xi_data, so
    //   y = g*b*sum(x^2) + sum(x*(xi_data + g*b*xi_ref)) + sum(xi_ref*xi_data).
    const double signed_gain = data_gain * bit;
    CompensatedSum signal, cross, noise;
    for (std::size_t i = 0; i < sent_chips.size(); ++i) {
        const double x = sent_chips[i];
        signal.add(signed_gain * (x * x));
        cross.add(x * (noise_data[i] + signed_gain * noise_ref[i]));
        noise.add(noise_ref[i] * noise_data[i]);
    }
    return {signal.value(), cross.value(), noise.value()};
}

Detection detect(std::span<const double> correlator_out, TiePolicy policy) {
    Detection result;
    result.symbols.reserve(correlator_out.size());
    for (double y : correlator_out) {
        if (y > 0.0) {
            result.symbols.push_back(+1);
        } else if (y < 0.0) {
            result.symbols.push_back(-1);
        } else {
            result.symbols.push_back(policy == TiePolicy::plus_one ? +1 : -1);
            ++result.tie_count;
        }
    }
    return result;
}

Detection demodulate(const BasebandSignal& received, const DcskKey& key, TiePolicy policy) {
    return detect(correlate(received, key), policy);
}

std::vector<double> reference_chips(const chaos::ChaosParams& params, const DcskKey& key,
                                    std::size_t first_bit, std::size_t bit_count) {
    key.validate();
    const std::size_t beta = key.half_spreading;
    chaos::LogisticMap map(params);
    map.skip(first_bit * 2 * beta);

    std::vector<double> chips;
    chips.reserve(bit_count * beta);
    for (std::size_t l = 0; l < bit_count; ++l) {
        for (std::size_t i = 0; i < beta; ++i) {
            chips.push_back(map.next());
        }
        map.skip(beta);
    }
    return chips;
}

}  // namespace ppdcsk::dcsk
