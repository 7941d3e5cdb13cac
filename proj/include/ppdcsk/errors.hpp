#pragma once

#include <stdexcept>
#include <string>

namespace ppdcsk {

// Structural failure of a bit stream or waveform: wrong length, footer
// mismatch, corrupt signal file. Out-of-range parameters throw
// std::domain_error instead.
class FrameError : public std::runtime_error {
public:
    explicit FrameError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ppdcsk
