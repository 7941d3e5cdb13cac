#include "ppdcsk/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "ppdcsk/analysis.hpp"
#include "ppdcsk/compensated_sum.hpp"
#include "ppdcsk/errors.hpp"

namespace ppdcsk::pipeline {

namespace {

std::size_t encrypted_prefix_bits(const packet::PacketLayout& layout, EncryptionMode mode) {
    return mode == EncryptionMode::whole ? layout.total_bits()
                                         : layout.preamble_bits + layout.header_bits;
}

// Mean of sign-corrected samples over the plain section; every term is the
// amplitude plus noise.
double estimate_plain_amplitude(std::span<const double> samples, std::span<const int> bits,
                                std::size_t bit_samples) {
    CompensatedSum sum;
    for (std::size_t l = 0; l < bits.size(); ++l) {
        for (std::size_t i = 0; i < bit_samples; ++i) {
            sum.add(bits[l] * samples[l * bit_samples + i]);
        }
    }
    return sum.value() / static_cast<double>(bits.size() * bit_samples);
}

// sqrt of the payload data-half to reference-half energy ratio. The data
// half carries gain a on the same chips as the reference, so the ratio is
// a^2 regardless of bit signs or chip values.
double estimate_whole_amplitude(const BasebandSignal& waveform,
                                const packet::PacketLayout& layout, std::size_t beta) {
    const std::size_t bit_samples = 2 * beta;
    const std::size_t first_bit = layout.preamble_bits + layout.header_bits;
    CompensatedSum ref_energy, data_energy;
    for (std::size_t l = first_bit; l < first_bit + layout.payload_bits; ++l) {
        const double* ref = waveform.samples.data() + l * bit_samples;
        const double* data = ref + beta;
        for (std::size_t i = 0; i < beta; ++i) {
            ref_energy.add(ref[i] * ref[i]);
            data_energy.add(data[i] * data[i]);
        }
    }
    const double denom = ref_energy.value();
    if (!(denom > 0.0)) {
        throw FrameError("pipeline: payload reference energy is zero");
    }
    return std::sqrt(data_energy.value() / denom);
}

}  // namespace

const char* to_string(EncryptionMode mode) {
    return mode == EncryptionMode::partial ? "partial" : "whole";
}

EncryptionMode mode_from_string(std::string_view name) {
    if (name == "partial") {
        return EncryptionMode::partial;
    }
    if (name == "whole") {
        return EncryptionMode::whole;
    }
    throw std::domain_error("pipeline: unknown encryption mode '" + std::string(name) + "'");
}

std::string make_key_id(const dcsk::DcskKey& key) {
    key.validate();
    // FNV-1a over the spreading factor's decimal digits.
    const std::string digits = std::to_string(key.spreading_factor());
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (char c : digits) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

SampleWindow payload_sample_window(const packet::PacketLayout& layout, const dcsk::DcskKey& key) {
    key.validate();
    layout.validate();
    const std::size_t bit_samples = key.spreading_factor();
    const std::size_t begin = (layout.preamble_bits + layout.header_bits) * bit_samples;
    return {begin, begin + layout.payload_bits * bit_samples};
}

EncryptedPacket encrypt(const packet::PowerPacket& pkt, const dcsk::DcskKey& key,
                        const chaos::ChaosParams& params, EncryptionMode mode) {
    key.validate();
    pkt.layout.validate();
    if (!(pkt.amplitude > 0.0)) {
        throw std::domain_error("pipeline: packet amplitude must be positive");
    }

    const packet::BitStream stream = packet::to_bitstream(pkt);
    const std::size_t beta = key.half_spreading;
    const std::size_t enc_bits = encrypted_prefix_bits(pkt.layout, mode);

    EncryptedPacket enc;
    enc.mode = mode;
    enc.layout = pkt.layout;
    enc.key_id = make_key_id(key);

    packet::BitStream prefix{{stream.symbols.begin(),
                              stream.symbols.begin() + static_cast<std::ptrdiff_t>(enc_bits)},
                             pkt.amplitude};
    enc.waveform = dcsk::modulate(prefix, key, params, pkt.amplitude);

    // Partial mode: payload and footer ride plain at the chip rate, 2*beta
    // samples per bit at level +-a, so both modes share one time base.
    for (std::size_t l = enc_bits; l < stream.symbols.size(); ++l) {
        const double level = stream.symbols[l] * pkt.amplitude;
        enc.waveform.samples.insert(enc.waveform.samples.end(), 2 * beta, level);
    }
    return enc;
}

packet::PowerPacket decrypt(const EncryptedPacket& enc, const dcsk::DcskKey& key,
                            DecryptStats* stats) {
    key.validate();
    enc.layout.validate();
    const std::size_t beta = key.half_spreading;
    const std::size_t bit_samples = 2 * beta;
    const std::size_t total_bits = enc.layout.total_bits();
    if (enc.waveform.samples.size() != total_bits * bit_samples) {
        throw FrameError("pipeline: waveform holds " + std::to_string(enc.waveform.samples.size()) +
                         " samples, expected " + std::to_string(total_bits * bit_samples) +
                         " for 2*beta = " + std::to_string(bit_samples));
    }

    const std::size_t enc_bits = encrypted_prefix_bits(enc.layout, enc.mode);
    std::size_t ties = 0;
    std::vector<int> symbols;
    symbols.reserve(total_bits);

    BasebandSignal prefix;
    prefix.sample_period = enc.waveform.sample_period;
    prefix.samples.assign(enc.waveform.samples.begin(),
                          enc.waveform.samples.begin() +
                              static_cast<std::ptrdiff_t>(enc_bits * bit_samples));
    dcsk::Detection det = dcsk::demodulate(prefix, key);
    ties += det.tie_count;
    symbols = std::move(det.symbols);

    double amplitude = 0.0;
    if (enc.mode == EncryptionMode::whole) {
        amplitude = estimate_whole_amplitude(enc.waveform, enc.layout, beta);
    } else {
        // Plain section: per-bit sign of the summed samples.
        std::vector<int> plain_bits;
        plain_bits.reserve(total_bits - enc_bits);
        for (std::size_t l = enc_bits; l < total_bits; ++l) {
            CompensatedSum sum;
            for (std::size_t i = 0; i < bit_samples; ++i) {
                sum.add(enc.waveform.samples[l * bit_samples + i]);
            }
            const double v = sum.value();
            if (v == 0.0) {
                ++ties;
            }
            plain_bits.push_back(v >= 0.0 ? +1 : -1);
        }
        amplitude = estimate_plain_amplitude(
            std::span<const double>(enc.waveform.samples)
                .subspan(enc_bits * bit_samples),
            plain_bits, bit_samples);
        symbols.insert(symbols.end(), plain_bits.begin(), plain_bits.end());
    }

    if (!(amplitude > 0.0)) {
        throw FrameError("pipeline: recovered amplitude is not positive");
    }
    if (stats != nullptr) {
        stats->tie_count = ties;
        stats->amplitude_estimate = amplitude;
    }
    return packet::parse_packet(packet::BitStream{std::move(symbols), amplitude}, enc.layout);
}

AttackReport eavesdrop(const EncryptedPacket& enc, const dcsk::DcskKey& guessed_key,
                       const packet::PowerPacket& truth) {
    guessed_key.validate();
    enc.layout.validate();
    if (truth.layout != enc.layout) {
        throw std::domain_error("pipeline: truth packet layout differs from the encrypted one");
    }

    AttackReport report;
    report.mode = enc.mode;
    report.guessed_spreading_factor = guessed_key.spreading_factor();

    // The tap point sees the raw line, so stolen power is measured on the
    // payload window of the true timing.
    const std::size_t total_bits = enc.layout.total_bits();
    if (enc.waveform.samples.size() % total_bits != 0) {
        throw FrameError("pipeline: waveform length is not a whole number of bits");
    }
    const std::size_t true_bit_samples = enc.waveform.samples.size() / total_bits;
    const std::size_t payload_first = enc.layout.preamble_bits + enc.layout.header_bits;
    report.stolen_power_watts = analysis::average_power(
        enc.waveform, {payload_first * true_bit_samples,
                       (payload_first + enc.layout.payload_bits) * true_bit_samples});

    // Demodulate with the guessed key over as many whole bits as fit.
    const std::size_t guessed_bit_samples = guessed_key.spreading_factor();
    const std::size_t guessed_bits = enc.waveform.samples.size() / guessed_bit_samples;
    std::vector<int> attacker;
    if (guessed_bits > 0) {
        BasebandSignal truncated;
        truncated.sample_period = enc.waveform.sample_period;
        truncated.samples.assign(enc.waveform.samples.begin(),
                                 enc.waveform.samples.begin() +
                                     static_cast<std::ptrdiff_t>(guessed_bits * guessed_bit_samples));
        dcsk::Detection det = dcsk::demodulate(truncated, guessed_key);
        attacker = std::move(det.symbols);
        report.tie_count = det.tie_count;
    }

    // Score each true bit against the attacker bit covering its data-half
    // start. With the correct key the windows align one to one.
    const packet::BitStream truth_stream = packet::to_bitstream(truth);
    auto section_ber = [&](std::size_t first, std::size_t count) {
        if (attacker.empty()) {
            return 1.0;
        }
        std::size_t errors = 0;
        for (std::size_t l = first; l < first + count; ++l) {
            const std::size_t midpoint = l * true_bit_samples + true_bit_samples / 2;
            std::size_t j = midpoint / guessed_bit_samples;
            if (j >= attacker.size()) {
                j = attacker.size() - 1;
            }
            if (attacker[j] != truth_stream.symbols[l]) {
                ++errors;
            }
        }
        return static_cast<double>(errors) / static_cast<double>(count);
    };

    const auto& layout = enc.layout;
    report.ber.preamble = section_ber(0, layout.preamble_bits);
    report.ber.header = section_ber(layout.preamble_bits, layout.header_bits);
    report.ber.payload = section_ber(payload_first, layout.payload_bits);
    report.ber.footer = section_ber(payload_first + layout.payload_bits, layout.footer_bits);
    return report;
}

}  // namespace ppdcsk::pipeline
