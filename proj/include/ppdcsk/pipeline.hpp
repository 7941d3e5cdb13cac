#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "ppdcsk/chaos.hpp"
#include "ppdcsk/dcsk.hpp"
#include "ppdcsk/packet.hpp"
#include "ppdcsk/signal.hpp"

namespace ppdcsk::pipeline {

// Partial: only preamble and header are DCSK-spread, payload and footer are
// sent as plain constant-voltage bits. Whole: every bit is DCSK-spread with
// the payload data half carrying gain a.
enum class EncryptionMode { partial, whole };

const char* to_string(EncryptionMode mode);
EncryptionMode mode_from_string(std::string_view name);

struct EncryptedPacket {
    BasebandSignal waveform;
    EncryptionMode mode = EncryptionMode::whole;
    packet::PacketLayout layout;
    std::string key_id;  // opaque tag; the key itself is never stored
};

struct SectionBer {
    double preamble = 0.0;
    double header = 0.0;
    double payload = 0.0;
    double footer = 0.0;
};

struct AttackReport {
    EncryptionMode mode = EncryptionMode::whole;
    std::size_t guessed_spreading_factor = 0;
    SectionBer ber;
    double stolen_power_watts = 0.0;
    std::size_t tie_count = 0;
};

struct DecryptStats {
    std::size_t tie_count = 0;
    double amplitude_estimate = 0.0;
};

// Deterministic opaque reference for a key (FNV-1a digest, hex).
std::string make_key_id(const dcsk::DcskKey& key);

// Sample range covered by the payload bits of an encrypted packet.
SampleWindow payload_sample_window(const packet::PacketLayout& layout, const dcsk::DcskKey& key);

// Both modes render every bit as 2*beta samples, so partial and whole
// encryptions of the same packet have identical durations.
EncryptedPacket encrypt(const packet::PowerPacket& pkt, const dcsk::DcskKey& key,
                        const chaos::ChaosParams& params, EncryptionMode mode);

// Demodulates the encrypted segments, re-slices plain ones, validates the
// footer and re-estimates the amplitude from the waveform. Throws FrameError
// on length or footer mismatch (wrong key or corruption).
packet::PowerPacket decrypt(const EncryptedPacket& enc, const dcsk::DcskKey& key,
                            DecryptStats* stats = nullptr);

// Attacker model: demodulate the tapped waveform with a guessed key and tap
// the payload power directly. `truth` is used for scoring only.
AttackReport eavesdrop(const EncryptedPacket& enc, const dcsk::DcskKey& guessed_key,
                       const packet::PowerPacket& truth);

}  // namespace ppdcsk::pipeline
