#pragma once

#include "gaitseg/heel_strike.hpp"
#include "gaitseg/modality.hpp"
#include "gaitseg/signal_core.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace gaitseg {

inline constexpr std::array<std::string_view, 6> kCanonicalMuscles{"TA",  "mGAST", "VL",
                                                                   "RF",  "SEM",   "BFL"};

/// Named sEMG channels sharing one sample rate and length. Channel order is
/// insertion order.
class EmgChannelSet {
public:
    EmgChannelSet() = default;

    void add(std::string name, TimeSeries channel);

    std::size_t channel_count() const noexcept { return channels_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const TimeSeries& channel(std::size_t i) const { return channels_.at(i); }
    /// Throws InvalidParams when the muscle is absent.
    const TimeSeries& channel(std::string_view name) const;
    bool has(std::string_view name) const;

    double sample_rate_hz() const;
    std::size_t length() const;

    EmgChannelSet slice(SegmentRange range) const;

private:
    std::vector<std::string> names_;
    std::vector<TimeSeries> channels_;
};

struct EmgFilterParams {
    double bandpass_low_hz = 10.0;
    double bandpass_high_hz = 150.0;
    int bandpass_order = 4;
    double notch_hz = 60.0;
    double notch_q = 30.0;
};

struct GaitCycle {
    SegmentRange range;
    Modality modality = Modality::LGW;
    EmgChannelSet emg;
};

struct MuscleProfile {
    std::string muscle;
    std::size_t n_points = 0;
    std::vector<double> mean;
    std::vector<double> std;
    std::size_t n_cycles = 0;
};

/// Per channel: remove the mean, zero-phase band-pass, zero-phase notch, then
/// remove any residual mean left by the finite-length edges.
EmgChannelSet preprocess_emg(const EmgChannelSet& raw, const EmgFilterParams& params = {});

/// Cycle k spans [events[k], events[k+1]). Fewer than two events gives no
/// cycles.
std::vector<GaitCycle> segment_cycles(const EmgChannelSet& emg, const HsEvents& events,
                                      Modality modality);

/// Full-wave rectification followed by a zero-phase low-pass of the given
/// order. The endpoint line is taken out before filtering and added back so
/// the zero-state passes start without a step.
TimeSeries activity_envelope(const TimeSeries& channel, double lowpass_hz = 6.0, int order = 2);

/// Resamples one cycle onto n_points spanning 0-100 % of the gait cycle.
std::vector<double> normalize_cycle(const TimeSeries& cycle_channel, std::size_t n_points = 1000);

/// Pointwise mean and population standard deviation across cycles.
MuscleProfile profile_stats(const std::vector<std::vector<double>>& cycles,
                            std::string muscle = {});

}  // namespace gaitseg
