#include "gaitseg/heel_strike.hpp"

#include "gaitseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gaitseg {

void HsParams::validate(double fs) const {
    if (!(max_cadence_steps_per_min > 0.0)) throw InvalidParams("max_cadence must be > 0");
    if (!(min_peak_height_rel > 0.0 && min_peak_height_rel < 1.0))
        throw InvalidParams("min_peak_height_rel must be within (0, 1)");
    if (filter_order < 1) throw InvalidParams("filter_order must be >= 1");
    if (!(highpass_hz > 0.0 && highpass_hz < fs / 2.0))
        throw InvalidCutoff("heel-strike high-pass cutoff outside (0, fs/2)");
    if (!(lowpass_hz > 0.0 && lowpass_hz < fs / 2.0))
        throw InvalidCutoff("heel-strike low-pass cutoff outside (0, fs/2)");
}

std::size_t HsParams::min_separation_samples(double fs) const {
    const double d = 60.0 * fs / max_cadence_steps_per_min;
    return static_cast<std::size_t>(std::ceil(d - 1e-9));
}

TimeSeries hs_envelope(const TimeSeries& accel_z, const HsParams& params) {
    const double fs = accel_z.sample_rate_hz();
    params.validate(fs);
    const auto hp = design_butterworth(FilterSpec::highpass(params.filter_order, params.highpass_hz, fs));
    const auto lp = design_butterworth(FilterSpec::lowpass(params.filter_order, params.lowpass_hz, fs));

    const auto x = accel_z.samples();
    const std::size_t n = x.size();
    if (n < 2) throw SeriesTooShort(n, filtfilt_padlen(hp) + 1);
    std::vector<double> detrended(n);
    const double first = x.front();
    const double slope = (x.back() - x.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) detrended[i] = x[i] - (first + slope * static_cast<double>(i));

    const TimeSeries high = filtfilt(hp, accel_z.with_samples(std::move(detrended)));
    return filtfilt(lp, half_wave_rectify(high));
}

HsEvents find_peaks(const TimeSeries& envelope, const HsParams& params) {
    HsEvents events;
    if (envelope.size() < 3) return events;
    const auto x = envelope.samples();
    const double fs = envelope.sample_rate_hz();
    const double threshold = params.min_peak_height_rel * percentile(x, params.height_percentile);
    const std::size_t sep = params.min_separation_samples(fs);

    std::vector<std::size_t> candidates;
    for (std::size_t i : local_maxima(x))
        if (x[i] > threshold) candidates.push_back(i);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });

    std::set<std::size_t> accepted;
    for (std::size_t c : candidates) {
        auto next = accepted.lower_bound(c);
        if (next != accepted.end() && *next - c < sep) continue;
        if (next != accepted.begin() && c - *std::prev(next) < sep) continue;
        accepted.insert(c);
    }

    events.indices.assign(accepted.begin(), accepted.end());
    events.times_s.reserve(events.indices.size());
    for (std::size_t i : events.indices) events.times_s.push_back(static_cast<double>(i) / fs);
    return events;
}

HsEvents detect_heel_strikes(const TimeSeries& accel_z, const HsParams& params) {
    return find_peaks(hs_envelope(accel_z, params), params);
}

}  // namespace gaitseg
