#include "ppdcsk/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppdcsk::channel {

AwgnChannel::AwgnChannel(double noise_spectral, std::uint64_t seed)
    : noise_spectral_(noise_spectral), seed_(seed), rng_(seed) {
    if (!(noise_spectral >= 0.0)) {
        throw std::domain_error("channel: noise_spectral (N0) must be >= 0");
    }
}

double AwgnChannel::uniform_unit() {
    // Top 53 bits, offset by half a step: values lie strictly inside (0, 1),
    // so log() below is always finite.
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
}

double AwgnChannel::standard_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_unit()));
    const double angle = 2.0 * std::numbers::pi * uniform_unit();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

BasebandSignal AwgnChannel::transmit(const BasebandSignal& s) {
    if (noise_spectral_ == 0.0) {
        return s;
    }
    const double sigma = std::sqrt(noise_spectral_ / 2.0);
    BasebandSignal r = s;
    for (double& sample : r.samples) {
        sample += sigma * standard_normal();
    }
    return r;
}

}  // namespace ppdcsk::channel
