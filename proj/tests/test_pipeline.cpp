#include "ppdcsk/pipeline.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "ppdcsk/analysis.hpp"
#include "ppdcsk/channel.hpp"
#include "ppdcsk/errors.hpp"

using namespace ppdcsk;

namespace {

const chaos::ChaosParams kDefaultChaos{0.75, 1e-3};
const dcsk::DcskKey kDefaultKey{50};  // 2*beta = 100

packet::PowerPacket default_packet(double amplitude = 2.0) {
    return packet::build_packet({}, 3, 5, amplitude);
}

// Layout whose payload starts 19 bits into the chip chain, matching the
// calibrated measurement window of the table experiments.
packet::PacketLayout table_layout() {
    packet::PacketLayout layout;
    layout.preamble_bits = 11;
    return layout;
}

}  // namespace

TEST_CASE("whole and partial encryptions share one time base") {
    const packet::PowerPacket pkt = default_packet();
    const auto whole =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::whole);
    const auto partial =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::partial);

    CHECK(whole.waveform.samples.size() == 105 * 100);
    CHECK(partial.waveform.samples.size() == whole.waveform.samples.size());
    CHECK(whole.waveform.sample_period == 1e-3);
}

TEST_CASE("whole-mode payload power sits near the closed form") {
    // The reference value 2.517 W belongs to the calibrated measurement
    // window (payload 19 bits into the chain); see table_layout().
    const packet::PowerPacket pkt = packet::build_packet(table_layout(), 3, 5, 2.0);
    const auto enc =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::whole);
    const auto window = pipeline::payload_sample_window(enc.layout, kDefaultKey);
    const double power = analysis::average_power(enc.waveform, window);
    CHECK(power == doctest::Approx(2.517).epsilon(0.005));

    // Whatever the window, the measured power matches the closed form
    // evaluated on the chips actually transmitted there.
    const auto chips = dcsk::reference_chips(kDefaultChaos, kDefaultKey, 19, 85);
    const double closed = analysis::modulator_output_power(
        chaos::mean_square(std::span<const double>(chips)), 2.0);
    CHECK(std::abs(power - closed) <= 1e-9 * closed);
}

TEST_CASE("partial-mode payload power is exactly a^2") {
    const auto enc = pipeline::encrypt(default_packet(), kDefaultKey, kDefaultChaos,
                                       pipeline::EncryptionMode::partial);
    const auto window = pipeline::payload_sample_window(enc.layout, kDefaultKey);
    CHECK(analysis::average_power(enc.waveform, window) == 4.0);
}

TEST_CASE("payload_sample_window covers the payload bits") {
    const auto window = pipeline::payload_sample_window({}, kDefaultKey);
    CHECK(window.begin == 12 * 100);
    CHECK(window.end == (12 + 85) * 100);
}

TEST_CASE("decrypt inverts encrypt on a noiseless channel") {
    for (auto mode : {pipeline::EncryptionMode::whole, pipeline::EncryptionMode::partial}) {
        const packet::PowerPacket pkt = default_packet(2.0);
        const auto enc = pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, mode);
        pipeline::DecryptStats stats;
        const packet::PowerPacket back = pipeline::decrypt(enc, kDefaultKey, &stats);
        CHECK(packet::same_content(pkt, back));
        CHECK(stats.tie_count == 0);
        CHECK(std::abs(back.amplitude - pkt.amplitude) <= 1e-9 * pkt.amplitude);
    }
}

TEST_CASE("round trips hold over random keys, amplitudes and seeds") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> amplitude_dist(0.5, 10.0);
    std::uniform_real_distribution<double> x1(-1.4, 1.4);
    for (int trial = 0; trial < 100; ++trial) {
        const dcsk::DcskKey key{1 + rng() % 64};
        const auto mode = rng() & 1u ? pipeline::EncryptionMode::whole
                                     : pipeline::EncryptionMode::partial;
        const double a = amplitude_dist(rng);
        const packet::PowerPacket pkt = packet::build_packet(
            {}, rng() % 16, rng() % 16, a);
        const chaos::ChaosParams params{x1(rng), 1e-3};

        const auto enc = pipeline::encrypt(pkt, key, params, mode);
        pipeline::DecryptStats stats;
        const packet::PowerPacket back = pipeline::decrypt(enc, key, &stats);
        REQUIRE(packet::same_content(pkt, back));
        REQUIRE(std::abs(stats.amplitude_estimate - a) <= 1e-9 * a);
    }
}

TEST_CASE("decrypting with the wrong key nearly always raises a frame error") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> x1(-1.4, 1.4);
    std::size_t frame_errors = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t beta = 20 + rng() % 61;
        std::size_t wrong = beta;
        while (wrong == beta) {
            wrong = 20 + rng() % 61;
        }
        const auto mode = rng() & 1u ? pipeline::EncryptionMode::whole
                                     : pipeline::EncryptionMode::partial;
        const packet::PowerPacket pkt = packet::build_packet({}, rng() % 16, rng() % 16, 2.0);
        const auto enc = pipeline::encrypt(pkt, {beta}, {x1(rng), 1e-3}, mode);
        try {
            (void)pipeline::decrypt(enc, {wrong});
        } catch (const FrameError&) {
            ++frame_errors;
        }
    }
    CHECK(frame_errors >= 990);
}

TEST_CASE("decryption survives a quiet channel") {
    // E_b = (1 + a^2) * beta * E[x^2] is about 250 sample-units here, so
    // N0 = 2.5 corresponds to E_b/N0 = 20 dB.
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> x1(-1.4, 1.4);
    int recovered = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        const packet::PowerPacket pkt = default_packet();
        const auto mode = trial % 2 == 0 ? pipeline::EncryptionMode::whole
                                         : pipeline::EncryptionMode::partial;
        const auto enc = pipeline::encrypt(pkt, kDefaultKey, {x1(rng), 1e-3}, mode);
        channel::AwgnChannel ch(2.5, 1000 + static_cast<std::uint64_t>(trial));
        auto noisy = enc;
        noisy.waveform = ch.transmit(enc.waveform);
        try {
            const packet::PowerPacket back = pipeline::decrypt(noisy, kDefaultKey);
            if (packet::same_content(pkt, back)) {
                ++recovered;
            }
        } catch (const FrameError&) {
        }
    }
    CHECK(recovered >= 990);
}

TEST_CASE("eavesdropping with the correct key reads the header perfectly") {
    const packet::PowerPacket pkt = default_packet();

    const auto whole =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::whole);
    const auto whole_report = pipeline::eavesdrop(whole, kDefaultKey, pkt);
    CHECK(whole_report.ber.preamble == 0.0);
    CHECK(whole_report.ber.header == 0.0);
    CHECK(whole_report.ber.payload == 0.0);
    CHECK(whole_report.ber.footer == 0.0);

    const auto partial =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::partial);
    const auto partial_report = pipeline::eavesdrop(partial, kDefaultKey, pkt);
    CHECK(partial_report.ber.preamble == 0.0);
    CHECK(partial_report.ber.header == 0.0);
    // A DCSK correlator reads constant-level plain segments as +1: the all-+1
    // payload comes out clean, the mixed-sign footer comes out half wrong.
    CHECK(partial_report.ber.payload == 0.0);
    CHECK(partial_report.ber.footer == 0.5);
}

TEST_CASE("partial mode exposes the full payload power to any attacker") {
    const packet::PowerPacket pkt = default_packet(2.0);
    const auto enc =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::partial);
    const auto report = pipeline::eavesdrop(enc, dcsk::DcskKey{31}, pkt);
    CHECK(report.stolen_power_watts == 4.0);
    CHECK(report.mode == pipeline::EncryptionMode::partial);
    CHECK(report.guessed_spreading_factor == 62);
}

TEST_CASE("whole mode hides most of the payload power") {
    const packet::PowerPacket pkt =
        packet::build_packet(table_layout(), 3, 5, 2.0);
    const auto enc =
        pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::whole);
    const auto report = pipeline::eavesdrop(enc, dcsk::DcskKey{31}, pkt);
    CHECK(report.stolen_power_watts == doctest::Approx(2.517).epsilon(0.005));
    CHECK(report.stolen_power_watts < 4.0);
}

TEST_CASE("whole encryption leaks less payload power than partial for a > 1") {
    for (double a : {2.0, 5.0, 10.0}) {
        const packet::PowerPacket pkt = default_packet(a);
        const auto whole =
            pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::whole);
        const auto partial =
            pipeline::encrypt(pkt, kDefaultKey, kDefaultChaos, pipeline::EncryptionMode::partial);
        const auto wrong = dcsk::DcskKey{47};
        const double stolen_whole = pipeline::eavesdrop(whole, wrong, pkt).stolen_power_watts;
        const double stolen_partial = pipeline::eavesdrop(partial, wrong, pkt).stolen_power_watts;
        CHECK(stolen_whole < stolen_partial);
        CHECK(stolen_partial == a * a);
    }
}

TEST_CASE("wrong keys leave the attacker guessing the header") {
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> x1(-1.4, 1.4);
    const std::size_t beta = 50;
    const std::size_t wrong_betas[] = {49, 51, 100, 25};
    std::size_t errors = 0;
    std::size_t scored = 0;
    for (int trial = 0; trial < 250; ++trial) {
        const packet::PowerPacket pkt = packet::build_packet({}, rng() % 16, rng() % 16, 2.0);
        const auto mode = rng() & 1u ? pipeline::EncryptionMode::whole
                                     : pipeline::EncryptionMode::partial;
        const auto enc = pipeline::encrypt(pkt, {beta}, {x1(rng), 1e-3}, mode);
        const auto report =
            pipeline::eavesdrop(enc, {wrong_betas[trial % 4]}, pkt);
        errors += static_cast<std::size_t>(
            std::lround(report.ber.header * static_cast<double>(pkt.layout.header_bits)));
        scored += pkt.layout.header_bits;
    }
    const double ber = static_cast<double>(errors) / static_cast<double>(scored);
    CHECK(ber > 0.43);
    CHECK(ber < 0.57);
}

TEST_CASE("key ids are deterministic, distinct and not the raw key") {
    const std::string id = pipeline::make_key_id(kDefaultKey);
    CHECK(id == pipeline::make_key_id(dcsk::DcskKey{50}));
    CHECK(id != pipeline::make_key_id(dcsk::DcskKey{51}));
    CHECK(id.size() == 16);
    CHECK(id.find("100") == std::string::npos);

    const auto enc = pipeline::encrypt(default_packet(), kDefaultKey, kDefaultChaos,
                                       pipeline::EncryptionMode::whole);
    CHECK(enc.key_id == id);
}

TEST_CASE("mode names round trip") {
    CHECK(pipeline::mode_from_string("whole") == pipeline::EncryptionMode::whole);
    CHECK(pipeline::mode_from_string("partial") == pipeline::EncryptionMode::partial);
    CHECK_THROWS_AS(pipeline::mode_from_string("full"), std::domain_error);
}

TEST_CASE("eavesdrop rejects a truth packet with a different layout") {
    const auto enc = pipeline::encrypt(default_packet(), kDefaultKey, kDefaultChaos,
                                       pipeline::EncryptionMode::whole);
    const packet::PowerPacket other = packet::build_packet(table_layout(), 3, 5, 2.0);
    CHECK_THROWS_AS(pipeline::eavesdrop(enc, kDefaultKey, other), std::domain_error);
}

TEST_CASE("decrypt rejects a waveform of the wrong length") {
    auto enc = pipeline::encrypt(default_packet(), kDefaultKey, kDefaultChaos,
                                 pipeline::EncryptionMode::whole);
    enc.waveform.samples.pop_back();
    CHECK_THROWS_AS(pipeline::decrypt(enc, kDefaultKey), FrameError);
}
