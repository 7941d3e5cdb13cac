// Experiment harness and ad-hoc encode/decode/attack commands for the DCSK
// power packet simulator. Every command is deterministic for a given config;
// rerunning writes byte-identical files.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ppdcsk/channel.hpp"
#include "ppdcsk/errors.hpp"
#include "ppdcsk/experiments.hpp"
#include "ppdcsk/io.hpp"

namespace fs = std::filesystem;
using namespace ppdcsk;

namespace {

struct Overrides {
    std::optional<double> initial_value;
    std::optional<double> sample_period;
    std::optional<std::size_t> spreading_factor;
    std::optional<double> amplitude;
    std::optional<std::string> mode;
    std::optional<double> noise_spectral;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> source_id;
    std::optional<std::uint64_t> dest_addr;
    std::optional<std::size_t> guessed_spreading_factor;
    std::optional<std::size_t> payload_start_bits;
    std::optional<std::size_t> preamble_bits;
    std::optional<std::size_t> header_bits;
    std::optional<std::size_t> payload_bits;
    std::optional<std::size_t> footer_bits;
    std::vector<double> amplitude_sweep;
    std::vector<std::size_t> spreading_sweep;
};

experiments::ExperimentConfig resolve_config(const std::string& config_path,
                                             const Overrides& o) {
    experiments::ExperimentConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw std::runtime_error("cli: cannot open config file " + config_path);
        }
        nlohmann::json j;
        in >> j;
        config = experiments::config_from_json(j);
    }
    if (o.initial_value) config.chaos_params.initial_value = *o.initial_value;
    if (o.sample_period) config.chaos_params.sample_period = *o.sample_period;
    if (o.spreading_factor) config.spreading_factor = *o.spreading_factor;
    if (o.amplitude) config.amplitude = *o.amplitude;
    if (o.mode) config.mode = pipeline::mode_from_string(*o.mode);
    if (o.noise_spectral) config.noise_spectral = *o.noise_spectral;
    if (o.seed) config.seed = *o.seed;
    if (o.source_id) config.source_id = *o.source_id;
    if (o.dest_addr) config.dest_addr = *o.dest_addr;
    if (o.guessed_spreading_factor) {
        config.guessed_spreading_factor = *o.guessed_spreading_factor;
    }
    if (o.payload_start_bits) config.payload_start_bits = *o.payload_start_bits;
    if (o.preamble_bits) config.layout.preamble_bits = *o.preamble_bits;
    if (o.header_bits) config.layout.header_bits = *o.header_bits;
    if (o.payload_bits) config.layout.payload_bits = *o.payload_bits;
    if (o.footer_bits) config.layout.footer_bits = *o.footer_bits;
    if (!o.amplitude_sweep.empty()) config.amplitude_sweep = o.amplitude_sweep;
    if (!o.spreading_sweep.empty()) config.spreading_sweep = o.spreading_sweep;
    config.layout.bit_period = static_cast<double>(config.spreading_factor) *
                               config.chaos_params.sample_period;
    return config;
}

std::ofstream open_file(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cli: cannot open output file " + path.string());
    }
    return out;
}

void write_json_file(const fs::path& path, const nlohmann::json& j) {
    std::ofstream out = open_file(path);
    out << j.dump(2) << '\n';
}

std::vector<int> parse_bits(const std::string& text) {
    std::vector<int> symbols;
    for (char c : text) {
        if (c == '1' || c == '+') {
            symbols.push_back(+1);
        } else if (c == '0' || c == '-') {
            symbols.push_back(-1);
        } else if (c != ',' && c != ' ') {
            throw std::domain_error("cli: --bits accepts 0/1 or +/- characters");
        }
    }
    if (symbols.empty()) {
        throw std::domain_error("cli: --bits is empty");
    }
    return symbols;
}

std::string bits_to_string(const std::vector<int>& symbols) {
    std::string text;
    text.reserve(symbols.size());
    for (int s : symbols) {
        text.push_back(s > 0 ? '1' : '0');
    }
    return text;
}

BasebandSignal read_signal_file(const fs::path& path, double sample_period) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cli: cannot open signal file " + path.string());
    }
    if (path.extension() == ".bin") {
        return io::read_signal_binary(in, sample_period);
    }
    return io::read_signal_csv(in, sample_period);
}

void write_signal_file(const fs::path& path, const BasebandSignal& signal,
                       const std::string& format) {
    std::ofstream out = open_file(path);
    if (format == "bin") {
        io::write_signal_binary(out, signal);
    } else {
        io::write_signal_csv(out, signal);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DCSK power packet encryption simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    Overrides o;
    app.add_option("--config", config_path, "JSON experiment config file");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--x1,--initial-value", o.initial_value, "chaos initial value x1");
    app.add_option("--sample-period", o.sample_period, "chip period T_x in seconds");
    app.add_option("--key,--spreading-factor", o.spreading_factor,
                   "spreading factor 2*beta (the key)");
    app.add_option("--amplitude,-a", o.amplitude, "packet voltage amplitude a");
    app.add_option("--mode", o.mode, "encryption mode: partial or whole");
    app.add_option("--n0,--noise-spectral", o.noise_spectral, "AWGN spectral density N0");
    app.add_option("--seed", o.seed, "channel RNG seed");
    app.add_option("--source-id", o.source_id, "header source id");
    app.add_option("--dest-addr", o.dest_addr, "header destination address");
    app.add_option("--guessed-key", o.guessed_spreading_factor,
                   "attacker's spreading factor guess");
    app.add_option("--payload-start-bits", o.payload_start_bits,
                   "bits ahead of the payload in table/figure runs");
    app.add_option("--preamble-bits", o.preamble_bits, "layout: preamble width");
    app.add_option("--header-bits", o.header_bits, "layout: header width");
    app.add_option("--payload-bits", o.payload_bits, "layout: payload width N_b");
    app.add_option("--footer-bits", o.footer_bits, "layout: footer width");
    app.add_option("--amplitude-sweep", o.amplitude_sweep, "table1/fig11 amplitudes");
    app.add_option("--spreading-sweep", o.spreading_sweep, "table23/fig12 spreading factors");

    auto* cmd_chaos = app.add_subcommand("chaos", "dump a chaotic sequence as CSV");
    std::size_t chaos_count = 1000;
    cmd_chaos->add_option("--count", chaos_count, "number of samples");

    auto* cmd_modulate = app.add_subcommand("modulate", "DCSK-modulate a bit string");
    std::string bits_text;
    double gain = 1.0;
    std::string format = "csv";
    cmd_modulate->add_option("--bits", bits_text, "bit string, e.g. 1011 or +-++")->required();
    cmd_modulate->add_option("--gain", gain, "data-half gain");
    cmd_modulate->add_option("--format", format, "signal file format: csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));

    auto* cmd_demodulate = app.add_subcommand("demodulate", "demodulate a signal file");
    std::string in_path;
    cmd_demodulate->add_option("--in", in_path, "signal file (.csv or .bin)")->required();

    auto* cmd_encrypt = app.add_subcommand("encrypt", "encrypt a power packet");
    std::string packet_path;
    cmd_encrypt->add_option("--packet", packet_path, "packet JSON (default: built from config)");
    cmd_encrypt->add_option("--format", format, "signal file format: csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));

    auto* cmd_decrypt = app.add_subcommand("decrypt", "decrypt an encrypted waveform");
    std::string meta_path;
    cmd_decrypt->add_option("--in", in_path, "signal file (.csv or .bin)")->required();
    cmd_decrypt->add_option("--meta", meta_path,
                            "encryption metadata JSON (default: <in>.json next to the signal)");

    auto* cmd_attack = app.add_subcommand("attack", "eavesdrop with a guessed key");
    auto* cmd_roundtrip =
        app.add_subcommand("roundtrip", "encrypt -> channel -> decrypt and report");
    auto* cmd_table1 = app.add_subcommand("table1", "payload power vs amplitude sweep");
    auto* cmd_table23 =
        app.add_subcommand("table23", "E[x^2] and payload power vs spreading factor sweep");
    auto* cmd_figures = app.add_subcommand("figures", "emit figure-data CSV series");

    CLI11_PARSE(app, argc, argv);

    try {
        const experiments::ExperimentConfig config = resolve_config(config_path, o);
        const fs::path out(out_dir);
        fs::create_directories(out);

        if (cmd_chaos->parsed()) {
            const fs::path path = out / "chaos.csv";
            std::ofstream file = open_file(path);
            experiments::write_chaos_csv(file, config, chaos_count);
            std::cout << "wrote " << path.string() << " (" << chaos_count << " samples)\n";
        } else if (cmd_modulate->parsed()) {
            const packet::BitStream bits{parse_bits(bits_text), config.amplitude};
            const BasebandSignal signal =
                dcsk::modulate(bits, config.key(), config.chaos_params, gain);
            const fs::path path = out / (format == "bin" ? "signal.bin" : "signal.csv");
            write_signal_file(path, signal, format);
            std::cout << "wrote " << path.string() << " (" << signal.size() << " samples, "
                      << bits.symbols.size() << " bits)\n";
        } else if (cmd_demodulate->parsed()) {
            const BasebandSignal signal =
                read_signal_file(in_path, config.chaos_params.sample_period);
            const dcsk::Detection det = dcsk::demodulate(signal, config.key());
            nlohmann::json report{{"config", experiments::config_to_json(config)},
                                  {"symbols", det.symbols},
                                  {"bits", bits_to_string(det.symbols)},
                                  {"tie_count", det.tie_count}};
            const fs::path path = out / "demodulated.json";
            write_json_file(path, report);
            std::cout << "wrote " << path.string() << " (" << det.symbols.size() << " bits, "
                      << det.tie_count << " ties)\n";
        } else if (cmd_encrypt->parsed()) {
            packet::PowerPacket pkt;
            if (!packet_path.empty()) {
                std::ifstream in(packet_path);
                if (!in) {
                    throw std::runtime_error("cli: cannot open packet file " + packet_path);
                }
                nlohmann::json j;
                in >> j;
                pkt = io::packet_from_json(j);
            } else {
                pkt = packet::build_packet(config.layout, config.source_id, config.dest_addr,
                                           config.amplitude);
            }
            const pipeline::EncryptedPacket enc =
                pipeline::encrypt(pkt, config.key(), config.chaos_params, config.mode);
            const fs::path signal_path =
                out / (format == "bin" ? "encrypted.bin" : "encrypted.csv");
            write_signal_file(signal_path, enc.waveform, format);
            nlohmann::json meta{{"config", experiments::config_to_json(config)},
                                {"mode", pipeline::to_string(enc.mode)},
                                {"layout", io::layout_to_json(enc.layout)},
                                {"key_id", enc.key_id},
                                {"sample_period_s", enc.waveform.sample_period},
                                {"sample_count", enc.waveform.size()},
                                {"signal_file", signal_path.filename().string()}};
            const fs::path meta_out = out / "encrypted.json";
            write_json_file(meta_out, meta);
            std::cout << "wrote " << signal_path.string() << " and " << meta_out.string()
                      << " (key_id " << enc.key_id << ")\n";
        } else if (cmd_decrypt->parsed()) {
            fs::path meta_in = meta_path.empty()
                                   ? fs::path(in_path).replace_extension(".json")
                                   : fs::path(meta_path);
            std::ifstream meta_stream(meta_in);
            if (!meta_stream) {
                throw std::runtime_error("cli: cannot open metadata file " + meta_in.string());
            }
            nlohmann::json meta;
            meta_stream >> meta;

            pipeline::EncryptedPacket enc;
            enc.mode = pipeline::mode_from_string(meta.at("mode").get<std::string>());
            enc.layout = io::layout_from_json(meta.at("layout"));
            enc.key_id = meta.value("key_id", "");
            enc.waveform = read_signal_file(
                in_path, meta.value("sample_period_s", config.chaos_params.sample_period));

            pipeline::DecryptStats stats;
            const packet::PowerPacket pkt = pipeline::decrypt(enc, config.key(), &stats);
            nlohmann::json report{{"config", experiments::config_to_json(config)},
                                  {"packet", io::packet_to_json(pkt)},
                                  {"source_id", packet::source_id(pkt)},
                                  {"dest_addr", packet::dest_addr(pkt)},
                                  {"tie_count", stats.tie_count},
                                  {"amplitude_recovered_v", stats.amplitude_estimate}};
            const fs::path path = out / "decrypted.json";
            write_json_file(path, report);
            std::cout << "wrote " << path.string() << " (source " << packet::source_id(pkt)
                      << ", dest " << packet::dest_addr(pkt) << ")\n";
        } else if (cmd_attack->parsed()) {
            const nlohmann::json report = experiments::run_attack(config);
            const fs::path path = out / "attack.json";
            write_json_file(path, report);
            std::cout << "wrote " << path.string() << " (stolen "
                      << report.at("stolen_power_w").get<double>() << " W)\n";
        } else if (cmd_roundtrip->parsed()) {
            const nlohmann::json report = experiments::run_roundtrip(config);
            const fs::path path = out / "roundtrip.json";
            write_json_file(path, report);
            std::cout << "wrote " << path.string() << " (recovered "
                      << (report.at("recovered").get<bool>() ? "true" : "false") << ")\n";
        } else if (cmd_table1->parsed()) {
            const auto rows = experiments::run_table1(config);
            const fs::path path = out / "table1.csv";
            std::ofstream file = open_file(path);
            experiments::write_table1_csv(file, config, rows);
            write_json_file(out / "table1.json", experiments::table1_reports(config));
            std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
        } else if (cmd_table23->parsed()) {
            const auto rows = experiments::run_table23(config);
            const fs::path path = out / "table23.csv";
            std::ofstream file = open_file(path);
            experiments::write_table23_csv(file, config, rows);
            write_json_file(out / "table23.json", experiments::table23_reports(config));
            std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
        } else if (cmd_figures->parsed()) {
            const auto written = experiments::write_figures(config, out);
            for (const auto& path : written) {
                std::cout << "wrote " << path.string() << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
