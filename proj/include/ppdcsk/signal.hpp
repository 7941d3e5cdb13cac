#pragma once

#include <cstddef>
#include <vector>

namespace ppdcsk {

// Uniformly sampled real baseband waveform in volts: a modulator output s_k
// or a channel output r_k.
struct BasebandSignal {
    std::vector<double> samples;
    double sample_period = 1e-3;  // seconds between adjacent samples (T_x)

    std::size_t size() const { return samples.size(); }
    double duration() const { return static_cast<double>(samples.size()) * sample_period; }
};

// Half-open index range [begin, end) into a signal's samples.
struct SampleWindow {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - begin; }
};

}  // namespace ppdcsk
