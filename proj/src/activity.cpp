#include "gaitseg/activity.hpp"

#include "gaitseg/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace gaitseg {

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::vector<SegmentRange> BinaryMask::runs() const {
    std::vector<SegmentRange> out;
    std::size_t i = 0;
    const std::size_t n = bits.size();
    while (i < n) {
        if (!bits[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && bits[j]) ++j;
        out.push_back({i, j});
        i = j;
    }
    return out;
}

std::string to_string(Direction d) { return d == Direction::Forward ? "forward" : "reverse"; }

TimeSeries compute_energy(const TimeSeries& accel, const ActivityParams& params) {
    const std::size_t n = accel.size();
    const std::size_t w = params.energy_window_samples;
    if (w == 0) throw InvalidParams("energy_window_samples must be positive");
    if (w > n) throw WindowTooLarge(w, n);

    const auto x = accel.samples();
    long double total = 0.0L;
    for (double v : x) total += v;
    const double mean = static_cast<double>(total / static_cast<long double>(n));

    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
        const long double d = x[i] - mean;
        prefix[i + 1] = prefix[i] + d * d;
    }

    const std::size_t left = (w - 1) / 2;
    const std::size_t right = w / 2;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= left ? i - left : 0;
        const std::size_t hi = std::min(n, i + right + 1);
        out[i] = static_cast<double>(prefix[hi] - prefix[lo]);
    }
    return TimeSeries(std::move(out), accel.sample_rate_hz(), accel.label() + "_energy");
}

double relative_energy_threshold(const TimeSeries& energy, double multiplier, double q) {
    if (!(multiplier > 0.0)) throw InvalidParams("threshold multiplier must be positive");
    const double base = percentile(energy.samples(), q);
    return std::max(multiplier * base, std::numeric_limits<double>::min());
}

BinaryMask binarize_activity(const TimeSeries& energy, const ActivityParams& params) {
    BinaryMask mask;
    mask.sample_rate_hz = energy.sample_rate_hz();
    mask.bits.resize(energy.size());
    const auto e = energy.samples();
    for (std::size_t i = 0; i < e.size(); ++i)
        mask.bits[i] = e[i] > params.energy_threshold ? 1 : 0;
    return mask;
}

BinaryMask remove_short_segments(const BinaryMask& mask, const ActivityParams& params) {
    BinaryMask out;
    out.sample_rate_hz = mask.sample_rate_hz;
    out.bits.assign(mask.size(), 0);

    std::vector<SegmentRange> kept;
    for (const auto& r : mask.runs())
        if (r.length() >= params.min_activity_samples) kept.push_back(r);

    for (std::size_t k = 0; k < kept.size(); ++k) {
        std::fill(out.bits.begin() + static_cast<std::ptrdiff_t>(kept[k].start_idx),
                  out.bits.begin() + static_cast<std::ptrdiff_t>(kept[k].end_idx), 1);
        if (k + 1 < kept.size()) {
            const std::size_t gap = kept[k + 1].start_idx - kept[k].end_idx;
            if (gap < params.merge_gap_samples)
                std::fill(out.bits.begin() + static_cast<std::ptrdiff_t>(kept[k].end_idx),
                          out.bits.begin() + static_cast<std::ptrdiff_t>(kept[k + 1].start_idx), 1);
        }
    }
    return out;
}

std::vector<HalfTrial> extract_half_trials(const BinaryMask& mask, std::size_t expected_count) {
    const auto runs = mask.runs();
    if (runs.size() != expected_count) throw ActivityCountMismatch(runs.size(), expected_count);
    std::vector<HalfTrial> out;
    out.reserve(runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k)
        out.push_back({runs[k], k % 2 == 0 ? Direction::Forward : Direction::Reverse});
    return out;
}

}  // namespace gaitseg
