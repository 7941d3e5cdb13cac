#include "ppdcsk/io.hpp"

#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ppdcsk/errors.hpp"

namespace ppdcsk::io {

namespace {

void put_u64_le(std::ostream& out, std::uint64_t value) {
    char bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xffu);
    }
    out.write(bytes, 8);
}

std::uint64_t get_u64_le(std::istream& in) {
    char bytes[8];
    in.read(bytes, 8);
    if (in.gcount() != 8) {
        throw FrameError("io: truncated signal file");
    }
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    }
    return value;
}

std::vector<int> symbols_from_json(const nlohmann::json& j, const char* field) {
    std::vector<int> symbols;
    for (const auto& v : j.at(field)) {
        const int s = v.get<int>();
        if (s != 1 && s != -1) {
            throw std::domain_error(std::string("io: ") + field + " entries must be +1 or -1");
        }
        symbols.push_back(s);
    }
    return symbols;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

void write_signal_csv(std::ostream& out, const BasebandSignal& signal) {
    out << "k,value\n";
    for (std::size_t k = 0; k < signal.samples.size(); ++k) {
        out << (k + 1) << ',' << format_double(signal.samples[k]) << '\n';
    }
}

BasebandSignal read_signal_csv(std::istream& in, double sample_period) {
    BasebandSignal signal;
    signal.sample_period = sample_period;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            continue;  // "k,value"
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw FrameError("io: malformed signal CSV row '" + line + "'");
        }
        const char* first = line.data() + comma + 1;
        const char* last = line.data() + line.size();
        double value = 0.0;
        const auto result = std::from_chars(first, last, value);
        if (result.ec != std::errc() || result.ptr != last) {
            throw FrameError("io: malformed sample value in '" + line + "'");
        }
        signal.samples.push_back(value);
    }
    return signal;
}

void write_signal_binary(std::ostream& out, const BasebandSignal& signal) {
    out.write(kSignalMagic.data(), kSignalMagic.size());
    put_u64_le(out, signal.samples.size());
    for (double v : signal.samples) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof(bits));
        put_u64_le(out, bits);
    }
}

BasebandSignal read_signal_binary(std::istream& in, double sample_period) {
    char magic[8];
    in.read(magic, 8);
    if (in.gcount() != 8 || std::memcmp(magic, kSignalMagic.data(), 8) != 0) {
        throw FrameError("io: bad signal file magic");
    }
    const std::uint64_t count = get_u64_le(in);
    BasebandSignal signal;
    signal.sample_period = sample_period;
    signal.samples.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t bits = get_u64_le(in);
        double v = 0.0;
        std::memcpy(&v, &bits, sizeof(v));
        signal.samples.push_back(v);
    }
    return signal;
}

nlohmann::json layout_to_json(const packet::PacketLayout& layout) {
    return {{"preamble_bits", layout.preamble_bits},
            {"header_bits", layout.header_bits},
            {"payload_bits", layout.payload_bits},
            {"footer_bits", layout.footer_bits},
            {"bit_period_s", layout.bit_period}};
}

packet::PacketLayout layout_from_json(const nlohmann::json& j) {
    packet::PacketLayout layout;
    layout.preamble_bits = j.value("preamble_bits", layout.preamble_bits);
    layout.header_bits = j.value("header_bits", layout.header_bits);
    layout.payload_bits = j.value("payload_bits", layout.payload_bits);
    layout.footer_bits = j.value("footer_bits", layout.footer_bits);
    layout.bit_period = j.value("bit_period_s", layout.bit_period);
    layout.validate();
    return layout;
}

nlohmann::json packet_to_json(const packet::PowerPacket& pkt) {
    return {{"layout", layout_to_json(pkt.layout)},
            {"preamble", pkt.preamble},
            {"header", pkt.header},
            {"payload", pkt.payload},
            {"footer", pkt.footer},
            {"amplitude_v", pkt.amplitude}};
}

packet::PowerPacket packet_from_json(const nlohmann::json& j) {
    packet::PowerPacket pkt;
    pkt.layout = layout_from_json(j.at("layout"));
    pkt.preamble = symbols_from_json(j, "preamble");
    pkt.header = symbols_from_json(j, "header");
    pkt.payload = symbols_from_json(j, "payload");
    pkt.footer = symbols_from_json(j, "footer");
    pkt.amplitude = j.at("amplitude_v").get<double>();
    if (pkt.preamble.size() != pkt.layout.preamble_bits ||
        pkt.header.size() != pkt.layout.header_bits ||
        pkt.payload.size() != pkt.layout.payload_bits ||
        pkt.footer.size() != pkt.layout.footer_bits) {
        throw FrameError("io: packet section lengths disagree with layout");
    }
    return pkt;
}

nlohmann::json attack_report_to_json(const pipeline::AttackReport& report) {
    return {{"mode", pipeline::to_string(report.mode)},
            {"key", report.guessed_spreading_factor},
            {"ber",
             {{"preamble", report.ber.preamble},
              {"header", report.ber.header},
              {"payload", report.ber.payload},
              {"footer", report.ber.footer}}},
            {"stolen_power_w", report.stolen_power_watts},
            {"tie_count", report.tie_count}};
}

nlohmann::json power_report_to_json(const analysis::PowerReport& report) {
    return {{"p_modoutsim_w", report.measured_watts},
            {"p_modout_w", report.closed_form_watts},
            {"efficiency", report.efficiency},
            {"mean_square_chip", report.mean_square_chip},
            {"amplitude_v", report.amplitude},
            {"spreading_factor", report.spreading_factor},
            {"payload_bits", report.payload_bits},
            {"sample_period_s", report.sample_period},
            {"initial_value", report.initial_value}};
}

void write_spectrum_csv(std::ostream& out, const analysis::SpectrumEstimate& spectrum) {
    out << "freq_hz,power_w\n";
    for (std::size_t j = 0; j < spectrum.densities.size(); ++j) {
        out << format_double(spectrum.bin_frequencies[j]) << ','
            << format_double(spectrum.densities[j]) << '\n';
    }
}

}  // namespace ppdcsk::io
