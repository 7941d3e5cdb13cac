#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "ppdcsk/analysis.hpp"
#include "ppdcsk/chaos.hpp"
#include "ppdcsk/dcsk.hpp"
#include "ppdcsk/packet.hpp"
#include "ppdcsk/pipeline.hpp"

namespace ppdcsk::experiments {

// Full description of one experiment run. The defaults reproduce the
// reference configuration: x1 = 0.75, T_x = 1 ms, 2*beta = 100, a = 2 V,
// N_b = 85 payload bits.
struct ExperimentConfig {
    chaos::ChaosParams chaos_params{0.75, 1e-3};
    std::size_t spreading_factor = 100;  // 2*beta; the key
    packet::PacketLayout layout{};
    double amplitude = 2.0;  // a, volts
    pipeline::EncryptionMode mode = pipeline::EncryptionMode::whole;
    double noise_spectral = 0.0;  // N0
    std::uint64_t seed = 12345;
    std::uint64_t source_id = 3;
    std::uint64_t dest_addr = 5;
    std::size_t guessed_spreading_factor = 102;  // attacker's key
    std::vector<double> amplitude_sweep{1.0, 2.0, 5.0, 10.0};
    std::vector<std::size_t> spreading_sweep{50, 100, 500, 1000};
    // Bits ahead of the payload in table/figure runs; positions the payload
    // measurement window on the chip chain. Calibrated once (see README).
    std::size_t payload_start_bits = 19;

    dcsk::DcskKey key() const;
    dcsk::DcskKey guessed_key() const;
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct Table1Row {
    double amplitude = 0.0;
    double measured_watts = 0.0;
    double closed_form_watts = 0.0;
    double relative_gap = 0.0;
};

struct Table23Row {
    std::size_t spreading_factor = 0;
    double mean_square_chip = 0.0;
    double measured_watts = 0.0;
    double closed_form_watts = 0.0;
};

// Whole-encrypts a packet whose payload starts payload_start_bits into the
// chip chain, measures the payload power and evaluates the closed form on
// the same reference chips.
analysis::PowerReport payload_power_report(const ExperimentConfig& config, double amplitude,
                                           std::size_t spreading_factor);

// Payload power sweep over amplitudes at the configured spreading factor.
std::vector<Table1Row> run_table1(const ExperimentConfig& config);

// Payload power and E[x^2] sweep over spreading factors at the configured
// amplitude.
std::vector<Table23Row> run_table23(const ExperimentConfig& config);

// Full PowerReport arrays for the two sweeps, with the config attached.
nlohmann::json table1_reports(const ExperimentConfig& config);
nlohmann::json table23_reports(const ExperimentConfig& config);

// encrypt -> AWGN channel -> decrypt, reporting recovery and per-section BER.
nlohmann::json run_roundtrip(const ExperimentConfig& config);

// encrypt -> AWGN channel -> eavesdrop with the guessed key.
nlohmann::json run_attack(const ExperimentConfig& config);

void write_table1_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<Table1Row>& rows);
void write_table23_csv(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<Table23Row>& rows);
void write_chaos_csv(std::ostream& out, const ExperimentConfig& config, std::size_t count);

// Emits the figure-data series (divergence traces, autocorrelation, PSDs)
// into out_dir and returns the paths written.
std::vector<std::filesystem::path> write_figures(const ExperimentConfig& config,
                                                 const std::filesystem::path& out_dir);

}  // namespace ppdcsk::experiments
