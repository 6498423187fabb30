#pragma once

#include "gaitseg/emg.hpp"
#include "gaitseg/signal_core.hpp"

#include <string>
#include <vector>

namespace gaitseg {

/// Envelope trace with a red triangle above each heel strike. Times on the
/// axis are start_s plus the sample offset; hs_times_s are absolute.
std::string svg_envelope(const TimeSeries& envelope, double start_s,
                         const std::vector<double>& hs_times_s, const std::string& title);

/// Mean profile over 0-100 % of the gait cycle with a shaded +/- std band.
std::string svg_profile(const MuscleProfile& profile, const std::string& title);

}  // namespace gaitseg
