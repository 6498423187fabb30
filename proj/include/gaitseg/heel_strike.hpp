#pragma once

#include "gaitseg/filters.hpp"
#include "gaitseg/signal_core.hpp"

#include <optional>
#include <vector>

namespace gaitseg {

/// Parameters of the heel-strike chain. The cadence bound sets the minimum
/// spacing between accepted peaks; expected_velocity_mps is carried for
/// bookkeeping and does not influence detection.
struct HsParams {
    double highpass_hz = 9.0;
    double lowpass_hz = 6.0;
    int filter_order = 7;
    double max_cadence_steps_per_min = 140.0;
    double min_peak_height_rel = 0.3;
    double height_percentile = 95.0;
    std::optional<double> expected_velocity_mps;

    void validate(double sample_rate_hz) const;
    /// Minimum sample distance between events: ceil(60 * fs / max_cadence).
    std::size_t min_separation_samples(double sample_rate_hz) const;
};

struct HsEvents {
    std::vector<std::size_t> indices;
    std::vector<double> times_s;

    std::size_t size() const noexcept { return indices.size(); }
    bool empty() const noexcept { return indices.empty(); }
};

/// High-pass (zero-phase) -> half-wave rectify -> low-pass (zero-phase).
/// The straight line through the first and last samples is removed before
/// the high-pass; a ramp has no steady-state high-pass response, so this only
/// suppresses the start-up transient of the zero-state passes.
TimeSeries hs_envelope(const TimeSeries& accel_z, const HsParams& params);

/// Local maxima above min_peak_height_rel * percentile(envelope, 95),
/// accepted greedily from the tallest down (earlier index wins ties) while
/// keeping every pair at least min_separation_samples apart. Sorted by time.
HsEvents find_peaks(const TimeSeries& envelope, const HsParams& params);

HsEvents detect_heel_strikes(const TimeSeries& accel_z, const HsParams& params);

}  // namespace gaitseg
