#include "ppdcsk/io.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "ppdcsk/errors.hpp"

using namespace ppdcsk;

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(4.0) == "4");
    CHECK(io::format_double(-0.0625) == "-0.0625");
    CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(std::stod(io::format_double(2.5168778101117587)) == 2.5168778101117587);
}

TEST_CASE("signal CSV round trips exactly") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    BasebandSignal s;
    s.sample_period = 1e-3;
    for (int i = 0; i < 500; ++i) {
        s.samples.push_back(dist(rng));
    }

    std::stringstream buffer;
    io::write_signal_csv(buffer, s);
    const BasebandSignal back = io::read_signal_csv(buffer, 1e-3);
    CHECK(back.samples == s.samples);
    CHECK(back.sample_period == 1e-3);
}

TEST_CASE("signal CSV starts with the header and 1-based index") {
    BasebandSignal s;
    s.samples = {0.5, -0.25};
    std::stringstream buffer;
    io::write_signal_csv(buffer, s);
    CHECK(buffer.str() == "k,value\n1,0.5\n2,-0.25\n");
}

TEST_CASE("signal CSV reader skips comments and flags bad rows") {
    std::stringstream good("# config={}\nk,value\n1,0.5\n");
    CHECK(io::read_signal_csv(good, 1e-3).samples == std::vector<double>{0.5});

    std::stringstream bad("k,value\n1,garbage\n");
    CHECK_THROWS_AS(io::read_signal_csv(bad, 1e-3), FrameError);
}

TEST_CASE("signal binary round trips bit for bit") {
    BasebandSignal s;
    s.sample_period = 1e-3;
    s.samples = {0.0, -0.0, 1e-308, -1e308, 0.1, 0.75};
    std::stringstream buffer;
    io::write_signal_binary(buffer, s);
    const BasebandSignal back = io::read_signal_binary(buffer, 1e-3);
    REQUIRE(back.samples.size() == s.samples.size());
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
        CHECK(std::memcmp(&back.samples[i], &s.samples[i], sizeof(double)) == 0);
    }
}

TEST_CASE("signal binary rejects bad magic and truncation") {
    std::stringstream bad("NOTMAGIC\x01\x02");
    CHECK_THROWS_AS(io::read_signal_binary(bad, 1e-3), FrameError);

    BasebandSignal s;
    s.samples = {1.0, 2.0};
    std::stringstream buffer;
    io::write_signal_binary(buffer, s);
    std::string bytes = buffer.str();
    bytes.resize(bytes.size() - 5);
    std::stringstream truncated(bytes);
    CHECK_THROWS_AS(io::read_signal_binary(truncated, 1e-3), FrameError);
}

TEST_CASE("packet JSON round trips") {
    const packet::PowerPacket pkt = packet::build_packet({}, 7, 11, 2.5);
    const nlohmann::json j = io::packet_to_json(pkt);
    CHECK(j.at("amplitude_v") == 2.5);
    CHECK(j.at("layout").at("payload_bits") == 85);

    const packet::PowerPacket back = io::packet_from_json(j);
    CHECK(back == pkt);
}

TEST_CASE("packet JSON validates section lengths and symbols") {
    const packet::PowerPacket pkt = packet::build_packet({}, 7, 11, 2.5);
    nlohmann::json j = io::packet_to_json(pkt);
    j["header"].push_back(1);
    CHECK_THROWS_AS(io::packet_from_json(j), FrameError);

    nlohmann::json j2 = io::packet_to_json(pkt);
    j2["payload"][0] = 3;
    CHECK_THROWS_AS(io::packet_from_json(j2), std::domain_error);
}

TEST_CASE("attack report JSON carries the documented fields") {
    pipeline::AttackReport report;
    report.mode = pipeline::EncryptionMode::partial;
    report.guessed_spreading_factor = 62;
    report.ber = {0.5, 0.4375, 0.0, 0.25};
    report.stolen_power_watts = 4.0;
    report.tie_count = 2;

    const nlohmann::json j = io::attack_report_to_json(report);
    CHECK(j.at("mode") == "partial");
    CHECK(j.at("key") == 62);
    CHECK(j.at("ber").at("header") == 0.4375);
    CHECK(j.at("stolen_power_w") == 4.0);
    CHECK(j.at("tie_count") == 2);
}

TEST_CASE("spectrum CSV has the documented header") {
    analysis::SpectrumEstimate spectrum;
    spectrum.bin_frequencies = {0.0, 1.0};
    spectrum.densities = {4.0, 0.5};
    spectrum.total_power = 4.5;
    std::stringstream buffer;
    io::write_spectrum_csv(buffer, spectrum);
    CHECK(buffer.str() == "freq_hz,power_w\n0,4\n1,0.5\n");
}
