#include "gaitseg/emg.hpp"

#include "gaitseg/error.hpp"
#include "gaitseg/filters.hpp"

#include <algorithm>
#include <cmath>

namespace gaitseg {

namespace {

double mean_of(std::span<const double> x) {
    long double s = 0.0L;
    for (double v : x) s += v;
    return static_cast<double>(s / static_cast<long double>(x.size()));
}

std::vector<double> minus_constant(std::span<const double> x, double c) {
    std::vector<double> out(x.begin(), x.end());
    for (double& v : out) v -= c;
    return out;
}

}  // namespace

void EmgChannelSet::add(std::string name, TimeSeries channel) {
    if (has(name)) throw InvalidParams("duplicate EMG channel '" + name + "'");
    if (!channels_.empty()) {
        if (channel.sample_rate_hz() != channels_.front().sample_rate_hz())
            throw InvalidParams("EMG channel '" + name + "' has a different sample rate");
        if (channel.size() != channels_.front().size())
            throw InvalidParams("EMG channel '" + name + "' has a different length");
    }
    names_.push_back(std::move(name));
    channels_.push_back(std::move(channel));
}

const TimeSeries& EmgChannelSet::channel(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return channels_[i];
    throw InvalidParams("no EMG channel named '" + std::string(name) + "'");
}

bool EmgChannelSet::has(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

double EmgChannelSet::sample_rate_hz() const {
    return channels_.empty() ? 0.0 : channels_.front().sample_rate_hz();
}

std::size_t EmgChannelSet::length() const {
    return channels_.empty() ? 0 : channels_.front().size();
}

EmgChannelSet EmgChannelSet::slice(SegmentRange range) const {
    EmgChannelSet out;
    for (std::size_t i = 0; i < names_.size(); ++i) out.add(names_[i], channels_[i].slice(range));
    return out;
}

EmgChannelSet preprocess_emg(const EmgChannelSet& raw, const EmgFilterParams& params) {
    const double fs = raw.sample_rate_hz();
    if (raw.channel_count() == 0) return raw;
    if (!(fs > 2.0 * params.bandpass_high_hz))
        throw InvalidCutoff("EMG sample rate must exceed twice the band-pass upper edge");
    const auto bp = design_butterworth(FilterSpec::bandpass(
        params.bandpass_order, params.bandpass_low_hz, params.bandpass_high_hz, fs));
    const auto notch = design_notch(FilterSpec::notch(params.notch_hz, params.notch_q, fs));

    EmgChannelSet out;
    for (std::size_t c = 0; c < raw.channel_count(); ++c) {
        const TimeSeries& ch = raw.channel(c);
        TimeSeries y = ch.with_samples(minus_constant(ch.samples(), mean_of(ch.samples())));
        y = filtfilt(notch, filtfilt(bp, y));
        y = y.with_samples(minus_constant(y.samples(), mean_of(y.samples())));
        out.add(raw.names()[c], std::move(y));
    }
    return out;
}

std::vector<GaitCycle> segment_cycles(const EmgChannelSet& emg, const HsEvents& events,
                                      Modality modality) {
    std::vector<GaitCycle> cycles;
    if (events.size() < 2) return cycles;
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        const SegmentRange r{events.indices[k], events.indices[k + 1]};
        if (r.end_idx <= r.start_idx)
            throw InvalidParams("heel-strike indices must be strictly increasing");
        cycles.push_back({r, modality, emg.slice(r)});
    }
    return cycles;
}

TimeSeries activity_envelope(const TimeSeries& channel, double lowpass_hz, int order) {
    const auto lp =
        design_butterworth(FilterSpec::lowpass(order, lowpass_hz, channel.sample_rate_hz()));
    const auto x = channel.samples();
    const std::size_t n = x.size();
    if (n <= filtfilt_padlen(lp)) throw SeriesTooShort(n, filtfilt_padlen(lp) + 1);

    std::vector<double> rect(n);
    for (std::size_t i = 0; i < n; ++i) rect[i] = std::abs(x[i]);
    const double first = rect.front();
    const double slope = (rect.back() - rect.front()) / static_cast<double>(n - 1);
    auto line = [&](std::size_t i) { return first + slope * static_cast<double>(i); };
    for (std::size_t i = 0; i < n; ++i) rect[i] -= line(i);

    std::vector<double> y = filtfilt(lp, channel.with_samples(std::move(rect))).values();
    for (std::size_t i = 0; i < n; ++i) y[i] += line(i);
    return channel.with_samples(std::move(y));
}

std::vector<double> normalize_cycle(const TimeSeries& cycle_channel, std::size_t n_points) {
    return linear_interpolate(cycle_channel, ResampleSpec{n_points}).values();
}

MuscleProfile profile_stats(const std::vector<std::vector<double>>& cycles, std::string muscle) {
    if (cycles.empty()) throw EmptyInput("profile_stats needs at least one cycle");
    const std::size_t n = cycles.front().size();
    for (const auto& c : cycles)
        if (c.size() != n) throw InvalidParams("cycles must share one normalized length");

    MuscleProfile p;
    p.muscle = std::move(muscle);
    p.n_points = n;
    p.n_cycles = cycles.size();
    p.mean.assign(n, 0.0);
    p.std.assign(n, 0.0);
    const double k = static_cast<double>(cycles.size());
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (const auto& c : cycles) s += c[i];
        const double m = s / k;
        double ss = 0.0;
        for (const auto& c : cycles) ss += (c[i] - m) * (c[i] - m);
        p.mean[i] = m;
        p.std[i] = std::sqrt(ss / k);
    }
    return p;
}

}  // namespace gaitseg
