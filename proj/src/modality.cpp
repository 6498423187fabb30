#include "gaitseg/modality.hpp"

#include "gaitseg/error.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace gaitseg {

namespace {

constexpr std::array<std::pair<Modality, std::string_view>, 5> kNames{{
    {Modality::RA, "RA"},
    {Modality::RD, "RD"},
    {Modality::SA, "SA"},
    {Modality::SD, "SD"},
    {Modality::LGW, "LGW"},
}};

// Prominence of a maximum at i: height above the higher of the lowest points
// reached on each side before meeting a strictly higher sample.
double prominence_of(std::span<const double> x, std::size_t i) {
    const double h = x[i];
    double left_min = h;
    for (std::size_t k = i; k-- > 0;) {
        if (x[k] > h) break;
        left_min = std::min(left_min, x[k]);
    }
    double right_min = h;
    for (std::size_t k = i + 1; k < x.size(); ++k) {
        if (x[k] > h) break;
        right_min = std::min(right_min, x[k]);
    }
    return h - std::max(left_min, right_min);
}

}  // namespace

std::string to_string(Modality m) {
    for (const auto& [mod, name] : kNames)
        if (mod == m) return std::string(name);
    return "?";
}

std::optional<Modality> parse_modality(std::string_view name) {
    for (const auto& [mod, n] : kNames)
        if (n == name) return mod;
    return std::nullopt;
}

std::vector<Extremum> find_extrema(std::span<const double> x) {
    std::vector<Extremum> out;
    for (std::size_t i : local_maxima(x)) out.push_back({i, prominence_of(x, i), true});

    std::vector<double> neg(x.size());
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
    for (std::size_t i : local_maxima(neg)) out.push_back({i, prominence_of(neg, i), false});

    std::sort(out.begin(), out.end(),
              [](const Extremum& a, const Extremum& b) { return a.index < b.index; });
    return out;
}

std::vector<std::size_t> detect_turns(const TimeSeries& y_position, const HalfTrial& trial,
                                      const TurnParams& params, std::size_t count) {
    if (params.min_turn_separation_samples < 1)
        throw InvalidParams("min_turn_separation_samples must be >= 1");
    const TimeSeries y = y_position.slice(trial.range);
    const TimeSeries smooth = moving_average(y, SmoothingSpec{params.smoothing_N});

    auto extrema = find_extrema(smooth.samples());
    std::stable_sort(extrema.begin(), extrema.end(), [](const Extremum& a, const Extremum& b) {
        return a.prominence > b.prominence;
    });

    std::vector<std::size_t> picked;
    for (const auto& e : extrema) {
        if (picked.size() == count) break;
        const bool clear = std::all_of(picked.begin(), picked.end(), [&](std::size_t p) {
            const std::size_t d = p > e.index ? p - e.index : e.index - p;
            return d >= params.min_turn_separation_samples;
        });
        if (clear) picked.push_back(e.index);
    }
    if (picked.size() < count) throw TurnCountMismatch(picked.size());

    std::sort(picked.begin(), picked.end());
    for (auto& p : picked) p += trial.range.start_idx;
    return picked;
}

std::vector<ModalitySegment> label_modalities(const HalfTrial& trial,
                                              std::span<const std::size_t> turns,
                                              const TurnParams& params,
                                              std::size_t half_trial_index,
                                              const CourseProtocol& protocol) {
    const auto& labels = protocol.sequence(trial.direction);
    if (labels.empty()) throw InvalidParams("course protocol has no modalities");
    if (turns.size() + 1 != labels.size()) throw TurnCountMismatch(turns.size());

    std::vector<std::size_t> bounds;
    bounds.push_back(trial.range.start_idx);
    for (std::size_t t : turns) {
        if (t <= bounds.back() || t >= trial.range.end_idx)
            throw SegmentTooShort("turn index " + std::to_string(t) +
                                  " is not strictly inside the half-trial in ascending order");
        bounds.push_back(t);
    }
    bounds.push_back(trial.range.end_idx);

    std::vector<ModalitySegment> out;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const SegmentRange r{bounds[k], bounds[k + 1]};
        if (r.length() <= 2 * params.safety_margin_samples)
            throw SegmentTooShort("segment " + to_string(labels[k]) + " of " +
                                  std::to_string(r.length()) +
                                  " samples does not exceed twice the safety margin");
        out.push_back({r, labels[k], half_trial_index});
    }
    return out;
}

SegmentRange inset(SegmentRange range, std::size_t margin) {
    if (range.length() <= 2 * margin) return {range.start_idx, range.start_idx};
    return {range.start_idx + margin, range.end_idx - margin};
}

}  // namespace gaitseg
