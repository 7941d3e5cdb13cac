#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ppdcsk/analysis.hpp"
#include "ppdcsk/packet.hpp"
#include "ppdcsk/pipeline.hpp"
#include "ppdcsk/signal.hpp"

namespace ppdcsk::io {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

// Signal CSV: optional leading '#' comment lines, a "k,value" header, then
// one row per sample with k starting at 1.
void write_signal_csv(std::ostream& out, const BasebandSignal& signal);
BasebandSignal read_signal_csv(std::istream& in, double sample_period);

// Signal binary: 8-byte magic "PPKWAV01", little-endian uint64 sample count,
// then count little-endian IEEE-754 doubles. The sample period travels in
// the experiment config, not in the file.
inline constexpr std::array<char, 8> kSignalMagic = {'P', 'P', 'K', 'W', 'A', 'V', '0', '1'};
void write_signal_binary(std::ostream& out, const BasebandSignal& signal);
BasebandSignal read_signal_binary(std::istream& in, double sample_period);

nlohmann::json layout_to_json(const packet::PacketLayout& layout);
packet::PacketLayout layout_from_json(const nlohmann::json& j);

nlohmann::json packet_to_json(const packet::PowerPacket& pkt);
packet::PowerPacket packet_from_json(const nlohmann::json& j);

nlohmann::json attack_report_to_json(const pipeline::AttackReport& report);
nlohmann::json power_report_to_json(const analysis::PowerReport& report);

// Spectrum CSV rows: "freq_hz,power_w".
void write_spectrum_csv(std::ostream& out, const analysis::SpectrumEstimate& spectrum);

}  // namespace ppdcsk::io
