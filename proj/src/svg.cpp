#include "gaitseg/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace gaitseg {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 300.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 40.0;
constexpr std::size_t kMaxBuckets = 1500;

struct Frame {
    double x0, x1, y0, y1;
    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
    double py(double y) const {
        return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
    }
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string open(const std::string& title) {
    return fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">{3}</text>\n",
        kWidth, kHeight, kLeft, escape(title));
}

std::string axes(const Frame& f, const std::string& xlabel) {
    std::string s = fmt::format(
        "<g stroke=\"#444\" fill=\"none\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>"
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/></g>\n",
        kLeft, kHeight - kBottom, kWidth - kRight, kTop);
    s += fmt::format(
        "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">"
        "<text x=\"{}\" y=\"{}\">{:.2f}</text><text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.2f}</text>"
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>"
        "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>"
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text></g>\n",
        kLeft, kHeight - kBottom + 16, f.x0, kWidth - kRight, kHeight - kBottom + 16, f.x1,
        kLeft - 6, kHeight - kBottom, f.y0, kLeft - 6, kTop + 10, f.y1, kWidth / 2,
        kHeight - 8, escape(xlabel));
    return s;
}

void widen(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
}

}  // namespace

std::string svg_envelope(const TimeSeries& envelope, double start_s,
                         const std::vector<double>& hs_times_s, const std::string& title) {
    const auto x = envelope.samples();
    const double fs = envelope.sample_rate_hz();
    const std::size_t n = x.size();
    if (n == 0) return open(title) + "</svg>\n";

    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    Frame f{start_s, start_s + static_cast<double>(n - 1) / fs, *mn, *mx + 0.1 * (*mx - *mn)};
    widen(f.x0, f.x1);
    widen(f.y0, f.y1);

    // Min/max decimation keeps every peak visible.
    std::string pts;
    const std::size_t buckets = std::min(n, kMaxBuckets);
    for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t lo = b * n / buckets;
        const std::size_t hi = std::max(lo + 1, (b + 1) * n / buckets);
        std::size_t imin = lo, imax = lo;
        for (std::size_t i = lo; i < hi; ++i) {
            if (x[i] < x[imin]) imin = i;
            if (x[i] > x[imax]) imax = i;
        }
        for (std::size_t i : {std::min(imin, imax), std::max(imin, imax)}) {
            const double t = start_s + static_cast<double>(i) / fs;
            pts += fmt::format("{:.1f},{:.1f} ", f.px(t), f.py(x[i]));
        }
    }

    std::string s = open(title) + axes(f, "time (s)");
    s += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"" + pts + "\"/>\n";
    s += "<g fill=\"red\">\n";
    for (double t : hs_times_s) {
        const double rel = (t - start_s) * fs;
        if (rel < 0.0 || rel > static_cast<double>(n - 1)) continue;
        const auto i = static_cast<std::size_t>(std::llround(rel));
        const double cx = f.px(t);
        const double cy = f.py(x[i]) - 4.0;
        s += fmt::format("<polygon points=\"{:.1f},{:.1f} {:.1f},{:.1f} {:.1f},{:.1f}\"/>\n", cx,
                         cy, cx - 4.0, cy - 8.0, cx + 4.0, cy - 8.0);
    }
    s += "</g>\n</svg>\n";
    return s;
}

std::string svg_profile(const MuscleProfile& p, const std::string& title) {
    if (p.n_points < 2) return open(title) + "</svg>\n";
    double lo = p.mean[0] - p.std[0];
    double hi = p.mean[0] + p.std[0];
    for (std::size_t i = 0; i < p.n_points; ++i) {
        lo = std::min(lo, p.mean[i] - p.std[i]);
        hi = std::max(hi, p.mean[i] + p.std[i]);
    }
    Frame f{0.0, 100.0, lo, hi};
    widen(f.y0, f.y1);
    auto pct = [&](std::size_t i) {
        return 100.0 * static_cast<double>(i) / static_cast<double>(p.n_points - 1);
    };

    std::string band;
    for (std::size_t i = 0; i < p.n_points; ++i)
        band += fmt::format("{:.1f},{:.1f} ", f.px(pct(i)), f.py(p.mean[i] + p.std[i]));
    for (std::size_t i = p.n_points; i-- > 0;)
        band += fmt::format("{:.1f},{:.1f} ", f.px(pct(i)), f.py(p.mean[i] - p.std[i]));
    std::string line;
    for (std::size_t i = 0; i < p.n_points; ++i)
        line += fmt::format("{:.1f},{:.1f} ", f.px(pct(i)), f.py(p.mean[i]));

    std::string s = open(title) + axes(f, "gait cycle (%)");
    s += "<polygon fill=\"#9ab7e0\" fill-opacity=\"0.5\" stroke=\"none\" points=\"" + band + "\"/>\n";
    s += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"" + line + "\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace gaitseg
