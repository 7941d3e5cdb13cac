#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "ppdcsk/signal.hpp"

namespace ppdcsk::channel {

// Identifier of the noise generation algorithm, echoed into result files.
inline constexpr std::string_view kNoiseAlgorithm = "mt19937_64/box-muller";

// AWGN channel: r_k = s_k + xi_k with xi_k i.i.d. Gaussian of zero mean and
// variance N0/2, applied per sample at the chip rate. Gaussians come from a
// Box-Muller transform over mt19937_64 uniforms so a fixed seed reproduces
// the identical stream on any platform. An instance owns its random stream;
// run parallel experiments on distinct seeded instances.
class AwgnChannel {
public:
    AwgnChannel(double noise_spectral, std::uint64_t seed);

    // N0 = 0 returns the input unchanged without consuming random draws.
    BasebandSignal transmit(const BasebandSignal& s);

    // One standard-normal draw from the channel's stream.
    double standard_normal();

    double noise_spectral() const { return noise_spectral_; }
    std::uint64_t seed() const { return seed_; }

private:
    double uniform_unit();  // (0, 1)

    double noise_spectral_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ppdcsk::channel
