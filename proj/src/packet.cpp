#include "ppdcsk/packet.hpp"

#include <stdexcept>
#include <string>

#include "ppdcsk/errors.hpp"

namespace ppdcsk::packet {

namespace {

constexpr int kFooterBase[8] = {+1, -1, -1, +1, +1, -1, -1, +1};

std::uint64_t field_capacity(std::size_t bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

// Fixed-width big-endian encoding with 0 -> -1, 1 -> +1.
void encode_field(std::vector<int>& out, std::uint64_t value, std::size_t bits) {
    for (std::size_t i = bits; i-- > 0;) {
        out.push_back((value >> i) & 1u ? +1 : -1);
    }
}

std::uint64_t decode_field(const std::vector<int>& bits, std::size_t first, std::size_t count) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < count; ++i) {
        value = (value << 1) | (bits[first + i] > 0 ? 1u : 0u);
    }
    return value;
}

}  // namespace

void PacketLayout::validate() const {
    if (preamble_bits < 1 || header_bits < 1 || payload_bits < 1 || footer_bits < 1) {
        throw std::domain_error("packet: every layout section needs at least one bit");
    }
    if (!(bit_period > 0.0)) {
        throw std::domain_error("packet: bit_period must be positive");
    }
}

std::vector<int> footer_pattern(std::size_t bits) {
    std::vector<int> pattern;
    pattern.reserve(bits);
    for (std::size_t i = 0; i < bits; ++i) {
        pattern.push_back(kFooterBase[i % 8]);
    }
    return pattern;
}

PowerPacket build_packet(const PacketLayout& layout, std::uint64_t source, std::uint64_t dest,
                         double amplitude) {
    layout.validate();
    if (!(amplitude > 0.0)) {
        throw std::domain_error("packet: amplitude must be positive");
    }
    if (source > field_capacity(layout.source_bits())) {
        throw std::domain_error("packet: source_id " + std::to_string(source) +
                                " overflows a " + std::to_string(layout.source_bits()) +
                                "-bit field");
    }
    if (dest > field_capacity(layout.dest_bits())) {
        throw std::domain_error("packet: dest_addr " + std::to_string(dest) + " overflows a " +
                                std::to_string(layout.dest_bits()) + "-bit field");
    }

    PowerPacket pkt;
    pkt.layout = layout;
    pkt.amplitude = amplitude;

    pkt.preamble.reserve(layout.preamble_bits);
    for (std::size_t i = 0; i < layout.preamble_bits; ++i) {
        pkt.preamble.push_back(i % 2 == 0 ? +1 : -1);
    }

    pkt.header.reserve(layout.header_bits);
    encode_field(pkt.header, source, layout.source_bits());
    encode_field(pkt.header, dest, layout.dest_bits());

    pkt.payload.assign(layout.payload_bits, +1);
    pkt.footer = footer_pattern(layout.footer_bits);
    return pkt;
}

std::uint64_t source_id(const PowerPacket& pkt) {
    return decode_field(pkt.header, 0, pkt.layout.source_bits());
}

std::uint64_t dest_addr(const PowerPacket& pkt) {
    return decode_field(pkt.header, pkt.layout.source_bits(), pkt.layout.dest_bits());
}

BitStream to_bitstream(const PowerPacket& pkt) {
    BitStream stream;
    stream.amplitude = pkt.amplitude;
    stream.symbols.reserve(pkt.layout.total_bits());
    stream.symbols.insert(stream.symbols.end(), pkt.preamble.begin(), pkt.preamble.end());
    stream.symbols.insert(stream.symbols.end(), pkt.header.begin(), pkt.header.end());
    stream.symbols.insert(stream.symbols.end(), pkt.payload.begin(), pkt.payload.end());
    stream.symbols.insert(stream.symbols.end(), pkt.footer.begin(), pkt.footer.end());
    return stream;
}

PowerPacket parse_packet(const BitStream& bits, const PacketLayout& layout) {
    layout.validate();
    if (bits.symbols.size() != layout.total_bits()) {
        throw FrameError("packet: stream holds " + std::to_string(bits.symbols.size()) +
                         " bits, layout expects " + std::to_string(layout.total_bits()));
    }

    PowerPacket pkt;
    pkt.layout = layout;
    pkt.amplitude = bits.amplitude;

    auto it = bits.symbols.begin();
    pkt.preamble.assign(it, it + static_cast<std::ptrdiff_t>(layout.preamble_bits));
    it += static_cast<std::ptrdiff_t>(layout.preamble_bits);
    pkt.header.assign(it, it + static_cast<std::ptrdiff_t>(layout.header_bits));
    it += static_cast<std::ptrdiff_t>(layout.header_bits);
    pkt.payload.assign(it, it + static_cast<std::ptrdiff_t>(layout.payload_bits));
    it += static_cast<std::ptrdiff_t>(layout.payload_bits);
    pkt.footer.assign(it, it + static_cast<std::ptrdiff_t>(layout.footer_bits));

    if (pkt.footer != footer_pattern(layout.footer_bits)) {
        throw FrameError("packet: footer pattern mismatch");
    }
    return pkt;
}

bool same_content(const PowerPacket& a, const PowerPacket& b) {
    return a.layout == b.layout && a.preamble == b.preamble && a.header == b.header &&
           a.payload == b.payload && a.footer == b.footer;
}

}  // namespace ppdcsk::packet
