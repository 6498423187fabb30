#pragma once

#include "gaitseg/signal_core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gaitseg {

struct BinaryMask {
    std::vector<std::uint8_t> bits;
    double sample_rate_hz = 1.0;

    std::size_t size() const noexcept { return bits.size(); }
    std::size_t count() const noexcept;
    /// Maximal runs of 1s, in time order.
    std::vector<SegmentRange> runs() const;
};

enum class Direction { Forward, Reverse };

std::string to_string(Direction d);

struct HalfTrial {
    SegmentRange range;
    Direction direction = Direction::Forward;
};

struct ActivityParams {
    std::size_t energy_window_samples = 1000;
    double energy_threshold = 1.0;
    std::size_t min_activity_samples = 6000;
    std::size_t merge_gap_samples = 1500;
};

/// Sliding sum of squared, mean-removed samples over a centered window of
/// energy_window_samples (w): index i covers [i - (w-1)/2, i + w/2], clipped
/// to the series. The mean is taken over the whole series.
TimeSeries compute_energy(const TimeSeries& accel, const ActivityParams& params);

/// multiplier * percentile(energy, q), floored at the smallest positive
/// double so the threshold stays strictly positive.
double relative_energy_threshold(const TimeSeries& energy, double multiplier, double q);

/// bits[i] = energy[i] > threshold (strict).
BinaryMask binarize_activity(const TimeSeries& energy, const ActivityParams& params);

/// Drops runs of 1s shorter than min_activity_samples, then fills interior
/// gaps shorter than merge_gap_samples between the surviving runs.
BinaryMask remove_short_segments(const BinaryMask& mask, const ActivityParams& params);

/// One half-trial per activity run, directions alternating from Forward.
/// Throws ActivityCountMismatch when the run count differs from
/// expected_count.
std::vector<HalfTrial> extract_half_trials(const BinaryMask& mask, std::size_t expected_count = 4);

}  // namespace gaitseg
