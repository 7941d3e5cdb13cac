#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppdcsk::packet {

// Section widths in bits plus the bit period T_b. The header carries the
// source id in its first half and the destination address in the rest,
// both most-significant bit first.
struct PacketLayout {
    std::size_t preamble_bits = 4;
    std::size_t header_bits = 8;
    std::size_t payload_bits = 85;  // N_b
    std::size_t footer_bits = 8;
    double bit_period = 0.1;  // seconds (T_b)

    std::size_t total_bits() const {
        return preamble_bits + header_bits + payload_bits + footer_bits;
    }
    std::size_t source_bits() const { return header_bits / 2; }
    std::size_t dest_bits() const { return header_bits - source_bits(); }

    void validate() const;

    bool operator==(const PacketLayout&) const = default;
};

// Logical symbols are +1/-1 throughout.
struct BitStream {
    std::vector<int> symbols;
    double amplitude = 1.0;  // volts
};

struct PowerPacket {
    PacketLayout layout;
    std::vector<int> preamble;
    std::vector<int> header;
    std::vector<int> payload;  // all +1: the payload is a constant-voltage power segment
    std::vector<int> footer;
    double amplitude = 1.0;  // volts (a > 0)

    bool operator==(const PowerPacket&) const = default;
};

// End-of-packet marker: +1,-1,-1,+1,+1,-1,-1,+1 repeated or truncated to the
// requested width.
std::vector<int> footer_pattern(std::size_t bits);

// Preamble = alternating +1/-1 clock pattern, header = source then
// destination, payload = all +1, footer = footer_pattern().
PowerPacket build_packet(const PacketLayout& layout, std::uint64_t source_id,
                         std::uint64_t dest_addr, double amplitude);

// Header field decoders (inverse of build_packet's encoding).
std::uint64_t source_id(const PowerPacket& pkt);
std::uint64_t dest_addr(const PowerPacket& pkt);

// Concatenation preamble||header||payload||footer.
BitStream to_bitstream(const PowerPacket& pkt);

// Splits by layout offsets and validates the footer pattern.
PowerPacket parse_packet(const BitStream& bits, const PacketLayout& layout);

// Layout and all four bit sections equal; amplitude is ignored.
bool same_content(const PowerPacket& a, const PowerPacket& b);

}  // namespace ppdcsk::packet
