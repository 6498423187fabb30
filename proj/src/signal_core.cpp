#include "gaitseg/signal_core.hpp"

#include "gaitseg/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaitseg {

TimeSeries::TimeSeries(std::vector<double> samples, double sample_rate_hz, std::string label)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz), label_(std::move(label)) {
    if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_))
        throw InvalidSeries("sample rate must be positive and finite");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(samples_[i]))
            throw InvalidSeries("non-finite sample at index " + std::to_string(i) +
                                (label_.empty() ? std::string{} : " of '" + label_ + "'"));
    }
}

TimeSeries TimeSeries::with_samples(std::vector<double> samples) const {
    return TimeSeries(std::move(samples), sample_rate_hz_, label_);
}

TimeSeries TimeSeries::slice(SegmentRange range) const {
    if (range.start_idx > range.end_idx || range.end_idx > samples_.size())
        throw InvalidSeries("slice [" + std::to_string(range.start_idx) + ", " +
                            std::to_string(range.end_idx) + ") out of bounds for length " +
                            std::to_string(samples_.size()));
    auto first = samples_.begin() + static_cast<std::ptrdiff_t>(range.start_idx);
    auto last = samples_.begin() + static_cast<std::ptrdiff_t>(range.end_idx);
    return TimeSeries(std::vector<double>(first, last), sample_rate_hz_, label_);
}

TimeSeries linear_interpolate(const TimeSeries& series, ResampleSpec spec) {
    const std::size_t n = series.size();
    if (n < 2) throw SeriesTooShort(n, 2);
    if (spec.target_len < 2) throw InvalidParams("target_len must be >= 2");

    const std::size_t m = spec.target_len;
    const auto src = series.samples();
    std::vector<double> out(m);
    const double denom = static_cast<double>(m - 1);
    out.front() = src.front();
    out.back() = src.back();
    for (std::size_t i = 1; i + 1 < m; ++i) {
        // i*(n-1) is exact, so the position carries a single rounding
        const double x = static_cast<double>(i * (n - 1)) / denom;
        auto x0 = static_cast<std::size_t>(std::floor(x));
        if (x0 >= n - 1) x0 = n - 2;
        const double frac = x - static_cast<double>(x0);
        // y0*(x1-x) + y1*(x-x0) with x1 - x0 == 1
        out[i] = src[x0] * (1.0 - frac) + src[x0 + 1] * frac;
    }
    const double rate =
        series.sample_rate_hz() * static_cast<double>(m) / static_cast<double>(n);
    return TimeSeries(std::move(out), rate, series.label());
}

TimeSeries moving_average(const TimeSeries& series, SmoothingSpec spec) {
    const std::size_t n = series.size();
    const std::size_t half = spec.half_window;
    if (2 * half + 1 > n) throw WindowTooLarge(2 * half + 1, n);
    if (half == 0) return series;

    const auto x = series.samples();
    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];

    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t h = std::min({half, i, n - 1 - i});
        const long double sum = prefix[i + h + 1] - prefix[i - h];
        out[i] = static_cast<double>(sum / static_cast<long double>(2 * h + 1));
    }
    return series.with_samples(std::move(out));
}

TimeSeries half_wave_rectify(const TimeSeries& series) {
    std::vector<double> out(series.values());
    for (double& v : out) v = std::max(v, 0.0);
    return series.with_samples(std::move(out));
}

std::vector<std::size_t> local_maxima(std::span<const double> x) {
    std::vector<std::size_t> out;
    const std::size_t n = x.size();
    std::size_t i = 1;
    while (i + 1 < n) {
        if (x[i - 1] < x[i]) {
            std::size_t ahead = i + 1;
            while (ahead + 1 < n && x[ahead] == x[i]) ++ahead;
            if (x[ahead] < x[i]) {
                out.push_back((i + ahead - 1) / 2);
                i = ahead;
                continue;
            }
        }
        ++i;
    }
    return out;
}

double percentile(std::span<const double> values, double q) {
    if (values.empty()) throw EmptyInput("percentile of an empty sequence");
    if (!(q >= 0.0 && q <= 100.0)) throw InvalidParams("percentile must be within [0, 100]");
    std::vector<double> v(values.begin(), values.end());
    const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (frac == 0.0 || lo + 1 >= v.size()) return a;
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + (b - a) * frac;
}

}  // namespace gaitseg
