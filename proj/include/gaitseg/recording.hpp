#pragma once

#include "gaitseg/emg.hpp"
#include "gaitseg/signal_core.hpp"

#include <array>
#include <string_view>

namespace gaitseg {

inline constexpr std::array<std::string_view, 6> kKinematicColumns{"ax", "ay", "az",
                                                                   "px", "py", "pz"};

/// Kinematic channels (3-axis acceleration in m/s^2, 3-axis position in m)
/// and named sEMG channels covering the same time span. Kinematics may be at
/// their native rate or synchronized onto the EMG sample grid.
struct Recording {
    TimeSeries ax, ay, az;
    TimeSeries px, py, pz;
    EmgChannelSet emg;

    const TimeSeries& kinematic(std::string_view column) const;
    double kinematic_rate_hz() const noexcept { return az.sample_rate_hz(); }
    bool synchronized() const noexcept { return az.size() == emg.length(); }
};

/// Linearly interpolates every kinematic channel to the EMG sample count
/// (endpoints anchored) and relabels it with the EMG rate, so all channels
/// share one sample index.
Recording synchronize(const Recording& native);

}  // namespace gaitseg
