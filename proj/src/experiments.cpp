#include "ppdcsk/experiments.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ppdcsk/channel.hpp"
#include "ppdcsk/io.hpp"

namespace ppdcsk::experiments {

namespace {

dcsk::DcskKey key_from_spreading(std::size_t spreading_factor, const char* what) {
    if (spreading_factor < 2 || spreading_factor % 2 != 0) {
        throw std::domain_error(std::string("experiments: ") + what + " (2*beta) must be an even"
                                " number >= 2, got " + std::to_string(spreading_factor));
    }
    return dcsk::DcskKey{spreading_factor / 2};
}

// Layout used by the table and figure runs: the preamble width is chosen so
// the payload starts exactly payload_start_bits into the chip chain.
packet::PacketLayout measurement_layout(const ExperimentConfig& config,
                                        std::size_t spreading_factor) {
    packet::PacketLayout layout = config.layout;
    if (config.payload_start_bits <= layout.header_bits) {
        throw std::domain_error("experiments: payload_start_bits must exceed header_bits");
    }
    layout.preamble_bits = config.payload_start_bits - layout.header_bits;
    layout.bit_period = static_cast<double>(spreading_factor) * config.chaos_params.sample_period;
    return layout;
}

packet::PacketLayout resolved_layout(const ExperimentConfig& config) {
    packet::PacketLayout layout = config.layout;
    layout.bit_period =
        static_cast<double>(config.spreading_factor) * config.chaos_params.sample_period;
    return layout;
}

std::string sanitize_number(double v) {
    std::string s = io::format_double(v);
    for (char& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
    }
    return s;
}

void write_config_comment(std::ostream& out, const ExperimentConfig& config) {
    out << "# config=" << config_to_json(config).dump() << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("experiments: cannot open output file " + path.string());
    }
    return out;
}

nlohmann::json section_ber_json(const packet::PowerPacket& truth,
                                const packet::PowerPacket& recovered) {
    return {{"preamble", analysis::bit_error_rate(truth.preamble, recovered.preamble)},
            {"header", analysis::bit_error_rate(truth.header, recovered.header)},
            {"payload", analysis::bit_error_rate(truth.payload, recovered.payload)},
            {"footer", analysis::bit_error_rate(truth.footer, recovered.footer)}};
}

}  // namespace

dcsk::DcskKey ExperimentConfig::key() const {
    return key_from_spreading(spreading_factor, "spreading_factor");
}

dcsk::DcskKey ExperimentConfig::guessed_key() const {
    return key_from_spreading(guessed_spreading_factor, "guessed_spreading_factor");
}

void ExperimentConfig::validate() const {
    key();
    guessed_key();
    if (!(amplitude > 0.0)) {
        throw std::domain_error("experiments: amplitude must be positive");
    }
    if (!(noise_spectral >= 0.0)) {
        throw std::domain_error("experiments: noise_spectral (N0) must be >= 0");
    }
    // LogisticMap's constructor checks the chaos parameter ranges.
    [[maybe_unused]] chaos::LogisticMap probe(chaos_params);
    layout.validate();
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    return {{"chaos",
             {{"initial_value", config.chaos_params.initial_value},
              {"sample_period_s", config.chaos_params.sample_period}}},
            {"spreading_factor", config.spreading_factor},
            {"layout", io::layout_to_json(config.layout)},
            {"amplitude_v", config.amplitude},
            {"mode", pipeline::to_string(config.mode)},
            {"noise_spectral", config.noise_spectral},
            {"seed", config.seed},
            {"source_id", config.source_id},
            {"dest_addr", config.dest_addr},
            {"guessed_spreading_factor", config.guessed_spreading_factor},
            {"amplitude_sweep", config.amplitude_sweep},
            {"spreading_sweep", config.spreading_sweep},
            {"payload_start_bits", config.payload_start_bits},
            {"noise_algorithm", channel::kNoiseAlgorithm}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    if (j.contains("chaos")) {
        const auto& c = j.at("chaos");
        config.chaos_params.initial_value =
            c.value("initial_value", config.chaos_params.initial_value);
        config.chaos_params.sample_period =
            c.value("sample_period_s", config.chaos_params.sample_period);
    }
    config.spreading_factor = j.value("spreading_factor", config.spreading_factor);
    if (j.contains("layout")) {
        config.layout = io::layout_from_json(j.at("layout"));
    }
    config.amplitude = j.value("amplitude_v", config.amplitude);
    if (j.contains("mode")) {
        config.mode = pipeline::mode_from_string(j.at("mode").get<std::string>());
    }
    config.noise_spectral = j.value("noise_spectral", config.noise_spectral);
    config.seed = j.value("seed", config.seed);
    config.source_id = j.value("source_id", config.source_id);
    config.dest_addr = j.value("dest_addr", config.dest_addr);
    config.guessed_spreading_factor =
        j.value("guessed_spreading_factor", config.guessed_spreading_factor);
    if (j.contains("amplitude_sweep")) {
        config.amplitude_sweep = j.at("amplitude_sweep").get<std::vector<double>>();
    }
    if (j.contains("spreading_sweep")) {
        config.spreading_sweep = j.at("spreading_sweep").get<std::vector<std::size_t>>();
    }
    config.payload_start_bits = j.value("payload_start_bits", config.payload_start_bits);
    if (j.contains("noise_algorithm") &&
        j.at("noise_algorithm").get<std::string>() != channel::kNoiseAlgorithm) {
        throw std::domain_error("experiments: unsupported noise_algorithm '" +
                                j.at("noise_algorithm").get<std::string>() + "'");
    }
    return config;
}

analysis::PowerReport payload_power_report(const ExperimentConfig& config, double amplitude,
                                           std::size_t spreading_factor) {
    const dcsk::DcskKey key = key_from_spreading(spreading_factor, "spreading_factor");
    const packet::PacketLayout layout = measurement_layout(config, spreading_factor);
    const packet::PowerPacket pkt =
        packet::build_packet(layout, config.source_id, config.dest_addr, amplitude);
    const pipeline::EncryptedPacket enc =
        pipeline::encrypt(pkt, key, config.chaos_params, pipeline::EncryptionMode::whole);

    const SampleWindow window = pipeline::payload_sample_window(layout, key);
    const std::vector<double> chips = dcsk::reference_chips(
        config.chaos_params, key, config.payload_start_bits, layout.payload_bits);

    analysis::PowerReport report;
    report.measured_watts = analysis::average_power(enc.waveform, window);
    report.mean_square_chip = chaos::mean_square(std::span<const double>(chips));
    report.closed_form_watts = analysis::modulator_output_power(report.mean_square_chip, amplitude);
    report.efficiency = analysis::modulator_efficiency(report.mean_square_chip, amplitude);
    report.amplitude = amplitude;
    report.spreading_factor = spreading_factor;
    report.payload_bits = layout.payload_bits;
    report.sample_period = config.chaos_params.sample_period;
    report.initial_value = config.chaos_params.initial_value;
    return report;
}

std::vector<Table1Row> run_table1(const ExperimentConfig& config) {
    if (config.amplitude_sweep.empty()) {
        throw std::domain_error("experiments: amplitude_sweep must not be empty");
    }
    std::vector<Table1Row> rows;
    rows.reserve(config.amplitude_sweep.size());
    for (double a : config.amplitude_sweep) {
        const analysis::PowerReport report =
            payload_power_report(config, a, config.spreading_factor);
        Table1Row row;
        row.amplitude = a;
        row.measured_watts = report.measured_watts;
        row.closed_form_watts = report.closed_form_watts;
        row.relative_gap =
            std::abs(report.measured_watts - report.closed_form_watts) / report.closed_form_watts;
        rows.push_back(row);
    }
    return rows;
}

std::vector<Table23Row> run_table23(const ExperimentConfig& config) {
    if (config.spreading_sweep.empty()) {
        throw std::domain_error("experiments: spreading_sweep must not be empty");
    }
    std::vector<Table23Row> rows;
    rows.reserve(config.spreading_sweep.size());
    for (std::size_t spreading : config.spreading_sweep) {
        const analysis::PowerReport report =
            payload_power_report(config, config.amplitude, spreading);
        rows.push_back({spreading, report.mean_square_chip, report.measured_watts,
                        report.closed_form_watts});
    }
    return rows;
}

nlohmann::json table1_reports(const ExperimentConfig& config) {
    if (config.amplitude_sweep.empty()) {
        throw std::domain_error("experiments: amplitude_sweep must not be empty");
    }
    nlohmann::json reports = nlohmann::json::array();
    for (double a : config.amplitude_sweep) {
        reports.push_back(
            io::power_report_to_json(payload_power_report(config, a, config.spreading_factor)));
    }
    return {{"config", config_to_json(config)}, {"reports", reports}};
}

nlohmann::json table23_reports(const ExperimentConfig& config) {
    if (config.spreading_sweep.empty()) {
        throw std::domain_error("experiments: spreading_sweep must not be empty");
    }
    nlohmann::json reports = nlohmann::json::array();
    for (std::size_t spreading : config.spreading_sweep) {
        reports.push_back(
            io::power_report_to_json(payload_power_report(config, config.amplitude, spreading)));
    }
    return {{"config", config_to_json(config)}, {"reports", reports}};
}

nlohmann::json run_roundtrip(const ExperimentConfig& config) {
    config.validate();
    const dcsk::DcskKey key = config.key();
    const packet::PacketLayout layout = resolved_layout(config);
    const packet::PowerPacket truth =
        packet::build_packet(layout, config.source_id, config.dest_addr, config.amplitude);

    pipeline::EncryptedPacket enc =
        pipeline::encrypt(truth, key, config.chaos_params, config.mode);
    channel::AwgnChannel ch(config.noise_spectral, config.seed);
    enc.waveform = ch.transmit(enc.waveform);

    nlohmann::json report{{"config", config_to_json(config)},
                          {"mode", pipeline::to_string(config.mode)},
                          {"key", config.spreading_factor},
                          {"key_id", enc.key_id},
                          {"noise_algorithm", channel::kNoiseAlgorithm}};
    // A footer mismatch propagates as FrameError (nonzero CLI exit); the
    // report's recovered flag covers the parseable-but-different outcomes.
    pipeline::DecryptStats stats;
    const packet::PowerPacket recovered = pipeline::decrypt(enc, key, &stats);
    const double amp_rel_error =
        std::abs(stats.amplitude_estimate - truth.amplitude) / truth.amplitude;
    report["recovered"] = packet::same_content(truth, recovered) && amp_rel_error <= 1e-9;
    report["ber"] = section_ber_json(truth, recovered);
    report["tie_count"] = stats.tie_count;
    report["amplitude_recovered_v"] = stats.amplitude_estimate;
    report["amplitude_relative_error"] = amp_rel_error;
    return report;
}

nlohmann::json run_attack(const ExperimentConfig& config) {
    config.validate();
    const dcsk::DcskKey key = config.key();
    const packet::PacketLayout layout = resolved_layout(config);
    const packet::PowerPacket truth =
        packet::build_packet(layout, config.source_id, config.dest_addr, config.amplitude);

    pipeline::EncryptedPacket enc =
        pipeline::encrypt(truth, key, config.chaos_params, config.mode);
    channel::AwgnChannel ch(config.noise_spectral, config.seed);
    enc.waveform = ch.transmit(enc.waveform);

    const pipeline::AttackReport attack = pipeline::eavesdrop(enc, config.guessed_key(), truth);
    nlohmann::json report = io::attack_report_to_json(attack);
    report["config"] = config_to_json(config);
    report["key_id"] = enc.key_id;
    report["noise_algorithm"] = channel::kNoiseAlgorithm;
    return report;
}

void write_table1_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<Table1Row>& rows) {
    write_config_comment(out, config);
    out << "a,p_modoutsim_w,p_modout_w,relative_gap\n";
    for (const Table1Row& row : rows) {
        out << io::format_double(row.amplitude) << ',' << io::format_double(row.measured_watts)
            << ',' << io::format_double(row.closed_form_watts) << ','
            << io::format_double(row.relative_gap) << '\n';
    }
}

void write_table23_csv(std::ostream& out, const ExperimentConfig& config,
                       const std::vector<Table23Row>& rows) {
    write_config_comment(out, config);
    out << "spreading_factor,mean_square_chip,p_modoutsim_w,p_modout_w\n";
    for (const Table23Row& row : rows) {
        out << row.spreading_factor << ',' << io::format_double(row.mean_square_chip) << ','
            << io::format_double(row.measured_watts) << ','
            << io::format_double(row.closed_form_watts) << '\n';
    }
}

void write_chaos_csv(std::ostream& out, const ExperimentConfig& config, std::size_t count) {
    const chaos::ChaoticSequence seq = chaos::generate(config.chaos_params, count);
    write_config_comment(out, config);
    out << "k,x\n";
    for (std::size_t k = 0; k < seq.samples.size(); ++k) {
        out << (k + 1) << ',' << io::format_double(seq.samples[k]) << '\n';
    }
}

std::vector<std::filesystem::path> write_figures(const ExperimentConfig& config,
                                                 const std::filesystem::path& out_dir) {
    config.validate();
    std::vector<std::filesystem::path> written;
    const auto emit = [&](const std::filesystem::path& name) {
        written.push_back(out_dir / name);
        return open_output(written.back());
    };

    // Divergence of two nearby trajectories (0.75 and 0.749 by default).
    {
        std::ofstream out = emit("fig8.csv");
        write_config_comment(out, config);
        const chaos::ChaosParams second{config.chaos_params.initial_value - 0.001,
                                        config.chaos_params.sample_period};
        const chaos::ChaoticSequence c1 = chaos::generate(config.chaos_params, 100);
        const chaos::ChaoticSequence c2 = chaos::generate(second, 100);
        out << "k,c1,c2\n";
        for (std::size_t k = 0; k < c1.samples.size(); ++k) {
            out << (k + 1) << ',' << io::format_double(c1.samples[k]) << ','
                << io::format_double(c2.samples[k]) << '\n';
        }
    }

    constexpr std::size_t kFigureSamples = 1000;
    const chaos::ChaoticSequence seq = chaos::generate(config.chaos_params, kFigureSamples);

    {
        std::ofstream out = emit("fig9.csv");
        write_config_comment(out, config);
        const std::vector<double> r = chaos::normalized_autocorrelation(seq, kFigureSamples - 1);
        out << "n,r\n";
        for (std::size_t n = 0; n < r.size(); ++n) {
            out << n << ',' << io::format_double(r[n]) << '\n';
        }
    }

    {
        std::ofstream out = emit("fig10.csv");
        write_config_comment(out, config);
        const BasebandSignal signal{seq.samples, seq.sample_period};
        io::write_spectrum_csv(out, analysis::power_spectrum(signal, {0, signal.size()}));
    }

    const auto payload_spectrum = [&](double amplitude, std::size_t spreading,
                                      std::ofstream& out) {
        const dcsk::DcskKey key = key_from_spreading(spreading, "spreading_factor");
        const packet::PacketLayout layout = measurement_layout(config, spreading);
        const packet::PowerPacket pkt =
            packet::build_packet(layout, config.source_id, config.dest_addr, amplitude);
        const pipeline::EncryptedPacket enc =
            pipeline::encrypt(pkt, key, config.chaos_params, pipeline::EncryptionMode::whole);
        const SampleWindow window = pipeline::payload_sample_window(layout, key);
        write_config_comment(out, config);
        out << "# average_power_w="
            << io::format_double(analysis::average_power(enc.waveform, window)) << '\n';
        io::write_spectrum_csv(out, analysis::power_spectrum(enc.waveform, window));
    };

    for (double a : config.amplitude_sweep) {
        std::ofstream out = emit("fig11_a" + sanitize_number(a) + ".csv");
        payload_spectrum(a, config.spreading_factor, out);
    }
    for (std::size_t spreading : config.spreading_sweep) {
        std::ofstream out =
            emit("fig12_2b" + std::to_string(spreading) + ".csv");
        payload_spectrum(config.amplitude, spreading, out);
    }
    return written;
}

}  // namespace ppdcsk::experiments
