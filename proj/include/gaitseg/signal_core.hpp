#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gaitseg {

/// Half-open sample index range [start_idx, end_idx).
struct SegmentRange {
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;

    std::size_t length() const noexcept { return end_idx - start_idx; }
    bool contains(std::size_t i) const noexcept { return i >= start_idx && i < end_idx; }
    friend bool operator==(const SegmentRange&, const SegmentRange&) = default;
};

/// Uniformly sampled scalar channel.
///
/// Construction rejects a non-positive rate and any non-finite sample, so
/// every downstream comparison can assume finite values.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::vector<double> samples, double sample_rate_hz, std::string label = {});

    std::span<const double> samples() const noexcept { return samples_; }
    const std::vector<double>& values() const noexcept { return samples_; }
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    const std::string& label() const noexcept { return label_; }

    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    double duration_s() const noexcept {
        return static_cast<double>(samples_.size()) / sample_rate_hz_;
    }

    /// Same rate and label, new samples.
    TimeSeries with_samples(std::vector<double> samples) const;
    /// Copy of the samples in `range`; throws InvalidSeries if out of bounds.
    TimeSeries slice(SegmentRange range) const;

private:
    std::vector<double> samples_;
    double sample_rate_hz_ = 1.0;
    std::string label_;
};

struct ResampleSpec {
    std::size_t target_len = 2;
};

/// Moving-average half width; the full window is 2N+1 samples.
struct SmoothingSpec {
    std::size_t half_window = 0;
};

/// Linear interpolation onto `target_len` points with both endpoints anchored:
/// output index i reads source position i*(len-1)/(target_len-1).
TimeSeries linear_interpolate(const TimeSeries& series, ResampleSpec spec);

/// Centered (2N+1)-point moving average. Near the ends the window shrinks
/// symmetrically to the widest centered window that fits.
TimeSeries moving_average(const TimeSeries& series, SmoothingSpec spec);

TimeSeries half_wave_rectify(const TimeSeries& series);

/// Interior local maxima. A flat plateau bounded by lower samples reports
/// its middle index (left-biased); endpoints never qualify.
std::vector<std::size_t> local_maxima(std::span<const double> x);

/// Percentile with linear interpolation between order statistics
/// (position q/100 * (n-1)). Throws EmptyInput on an empty span.
double percentile(std::span<const double> values, double q);

}  // namespace gaitseg
