#pragma once

#include "gaitseg/activity.hpp"
#include "gaitseg/signal_core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gaitseg {

enum class Modality { RA, RD, SA, SD, LGW };

std::string to_string(Modality m);
std::optional<Modality> parse_modality(std::string_view name);

struct ModalitySegment {
    SegmentRange range;
    Modality modality = Modality::LGW;
    std::size_t half_trial_index = 0;
};

struct TurnParams {
    std::size_t smoothing_N = 250;
    std::size_t min_turn_separation_samples = 3000;
    std::size_t safety_margin_samples = 2000;
};

/// Course order walked in each direction. The number of turns per
/// half-trial is one less than the number of modalities.
struct CourseProtocol {
    std::vector<Modality> forward{Modality::RD, Modality::LGW, Modality::SA};
    std::vector<Modality> reverse{Modality::SD, Modality::LGW, Modality::RA};

    std::size_t turns_per_half_trial() const noexcept { return forward.size() - 1; }
    const std::vector<Modality>& sequence(Direction d) const {
        return d == Direction::Forward ? forward : reverse;
    }
};

struct Extremum {
    std::size_t index = 0;
    double prominence = 0.0;
    bool is_maximum = true;
};

/// Local maxima and minima of `x` with their prominences. A flat plateau
/// reports its middle sample (left-biased). Endpoints are never extrema.
std::vector<Extremum> find_extrema(std::span<const double> x);

/// Indices (absolute, into y_position) of the `count` most prominent extrema of
/// the smoothed y-position inside trial.range, at least
/// min_turn_separation_samples apart, sorted ascending. Equal prominence
/// prefers the earlier index. Throws TurnCountMismatch(found) when fewer
/// than `count` qualify.
std::vector<std::size_t> detect_turns(const TimeSeries& y_position, const HalfTrial& trial,
                                      const TurnParams& params, std::size_t count = 2);

/// Partitions the half-trial at the turns and labels the pieces from the
/// protocol sequence for its direction.
std::vector<ModalitySegment> label_modalities(const HalfTrial& trial,
                                              std::span<const std::size_t> turns,
                                              const TurnParams& params,
                                              std::size_t half_trial_index = 0,
                                              const CourseProtocol& protocol = {});

/// The range shrunk by `margin` on both sides, used when slicing signals.
SegmentRange inset(SegmentRange range, std::size_t margin);

}  // namespace gaitseg
