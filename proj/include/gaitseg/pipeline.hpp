#pragma once

#include "gaitseg/config.hpp"
#include "gaitseg/error.hpp"
#include "gaitseg/emg.hpp"
#include "gaitseg/recording.hpp"

#include <exception>
#include <map>
#include <string>
#include <vector>

namespace gaitseg {

/// A module error annotated with the pipeline stage that raised it.
class StageError : public Error {
public:
    enum class Kind { Usage, Data, Internal };

    StageError(std::string stage, Kind kind, const std::string& message, std::exception_ptr cause)
        : Error(stage + ": " + message), stage_(std::move(stage)), kind_(kind), cause_(cause) {}
    const std::string& stage() const noexcept { return stage_; }
    Kind kind() const noexcept { return kind_; }
    [[noreturn]] void rethrow_cause() const { std::rethrow_exception(cause_); }

private:
    std::string stage_;
    Kind kind_;
    std::exception_ptr cause_;
};

struct AnalyzedSegment {
    ModalitySegment segment;  ///< reported boundaries; segments partition each half-trial
    SegmentRange analysis;    ///< segment inset by the safety margin
    HsEvents heel_strikes;    ///< indices into the whole recording
    TimeSeries envelope;      ///< heel-strike envelope over `analysis`
};

enum class PipelineDepth { Segmentation, HeelStrikes, Profiles };

struct PipelineResult {
    double sample_rate_hz = 0.0;
    std::size_t n_samples = 0;
    double energy_threshold = 0.0;
    std::vector<HalfTrial> half_trials;
    std::vector<std::vector<std::size_t>> turns;  ///< per half-trial
    std::vector<AnalyzedSegment> segments;
    HsEvents heel_strikes;  ///< all segments, time ordered
    std::vector<GaitCycle> cycles;  ///< preprocessed EMG, grouped by segment
    std::map<Modality, std::vector<MuscleProfile>> profiles;
};

/// Runs the stages in order (smoothing, energy, binarize, artifact-filter,
/// half-trials, turns, modalities, heel-strike, emg-preprocess, cycles,
/// profiles) on a synchronized recording, stopping after `depth`. Module
/// errors are rethrown as StageError.
PipelineResult run_pipeline(const Recording& recording, const PipelineConfig& config,
                            PipelineDepth depth = PipelineDepth::Profiles);

/// Heel strikes over the whole recording, without segmentation.
HsEvents detect_all_heel_strikes(const Recording& recording, const PipelineConfig& config);

/// The acceleration signal the activity stage works on (x axis or the
/// magnitude of all three axes).
TimeSeries activity_signal(const Recording& recording, ActivityAxis axis);

}  // namespace gaitseg
