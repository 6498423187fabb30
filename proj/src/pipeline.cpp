#include "gaitseg/pipeline.hpp"

#include "gaitseg/error.hpp"

#include <algorithm>
#include <cmath>

namespace gaitseg {

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const DataError& e) {
        throw StageError(name, StageError::Kind::Data, e.what(), std::current_exception());
    } catch (const Error& e) {
        throw StageError(name, StageError::Kind::Usage, e.what(), std::current_exception());
    } catch (const std::exception& e) {
        throw StageError(name, StageError::Kind::Internal, e.what(), std::current_exception());
    }
}

HsEvents shift_events(const HsEvents& local, std::size_t offset, double fs) {
    HsEvents out;
    for (std::size_t i : local.indices) {
        out.indices.push_back(i + offset);
        out.times_s.push_back(static_cast<double>(i + offset) / fs);
    }
    return out;
}

}  // namespace

TimeSeries activity_signal(const Recording& rec, ActivityAxis axis) {
    if (axis == ActivityAxis::X) return rec.ax;
    std::vector<double> m(rec.ax.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = std::sqrt(rec.ax[i] * rec.ax[i] + rec.ay[i] * rec.ay[i] + rec.az[i] * rec.az[i]);
    return TimeSeries(std::move(m), rec.ax.sample_rate_hz(), "accel_magnitude");
}

HsEvents detect_all_heel_strikes(const Recording& recording, const PipelineConfig& config) {
    return stage("heel-strike",
                 [&] { return detect_heel_strikes(recording.az, config.heel_strike); });
}

PipelineResult run_pipeline(const Recording& rec, const PipelineConfig& cfg, PipelineDepth depth) {
    stage("config", [&] { cfg.validate(); });
    if (!rec.synchronized())
        throw StageError("ingest", StageError::Kind::Data,
                         "kinematics are not synchronized to the EMG sample grid", nullptr);

    PipelineResult r;
    r.sample_rate_hz = rec.az.sample_rate_hz();
    r.n_samples = rec.az.size();
    const double fs = r.sample_rate_hz;

    const TimeSeries smoothed = stage("smoothing", [&] {
        return moving_average(activity_signal(rec, cfg.activity.axis),
                              SmoothingSpec{cfg.activity.smoothing_N});
    });
    ActivityParams ap = cfg.activity.params;
    const TimeSeries energy = stage("energy", [&] { return compute_energy(smoothed, ap); });
    const BinaryMask raw_mask = stage("binarize", [&] {
        ap.energy_threshold = cfg.activity.energy_threshold
                                  ? *cfg.activity.energy_threshold
                                  : relative_energy_threshold(energy, cfg.activity.threshold_multiplier,
                                                              cfg.activity.threshold_percentile);
        return binarize_activity(energy, ap);
    });
    r.energy_threshold = ap.energy_threshold;
    const BinaryMask mask =
        stage("artifact-filter", [&] { return remove_short_segments(raw_mask, ap); });
    r.half_trials =
        stage("half-trials", [&] { return extract_half_trials(mask, cfg.expected_half_trials); });

    for (std::size_t k = 0; k < r.half_trials.size(); ++k) {
        const HalfTrial& trial = r.half_trials[k];
        auto turns = stage("turns", [&] {
            return detect_turns(rec.py, trial, cfg.turns, cfg.protocol.turns_per_half_trial());
        });
        auto labelled = stage("modalities", [&] {
            return label_modalities(trial, turns, cfg.turns, k, cfg.protocol);
        });
        r.turns.push_back(std::move(turns));
        for (auto& seg : labelled) {
            AnalyzedSegment a;
            a.segment = seg;
            a.analysis = inset(seg.range, cfg.turns.safety_margin_samples);
            r.segments.push_back(std::move(a));
        }
    }
    if (depth == PipelineDepth::Segmentation) return r;

    for (auto& a : r.segments) {
        stage("heel-strike", [&] {
            const TimeSeries z = rec.az.slice(a.analysis);
            a.envelope = hs_envelope(z, cfg.heel_strike);
            a.heel_strikes = shift_events(find_peaks(a.envelope, cfg.heel_strike),
                                          a.analysis.start_idx, fs);
        });
        r.heel_strikes.indices.insert(r.heel_strikes.indices.end(),
                                      a.heel_strikes.indices.begin(), a.heel_strikes.indices.end());
        r.heel_strikes.times_s.insert(r.heel_strikes.times_s.end(),
                                      a.heel_strikes.times_s.begin(), a.heel_strikes.times_s.end());
    }
    if (depth == PipelineDepth::HeelStrikes) return r;

    const EmgChannelSet filtered =
        stage("emg-preprocess", [&] { return preprocess_emg(rec.emg, cfg.emg.filter); });
    const std::vector<TimeSeries> envelopes = stage("emg-preprocess", [&] {
        std::vector<TimeSeries> env;
        for (std::size_t c = 0; c < filtered.channel_count(); ++c)
            env.push_back(activity_envelope(filtered.channel(c), cfg.emg.envelope_lowpass_hz,
                                            cfg.emg.envelope_order));
        return env;
    });

    stage("cycles", [&] {
        for (const auto& a : r.segments) {
            auto cycles = segment_cycles(filtered, a.heel_strikes, a.segment.modality);
            std::move(cycles.begin(), cycles.end(), std::back_inserter(r.cycles));
        }
    });

    stage("profiles", [&] {
        std::map<Modality, std::vector<const GaitCycle*>> by_modality;
        for (const auto& c : r.cycles) by_modality[c.modality].push_back(&c);
        for (const auto& [modality, cycles] : by_modality) {
            std::vector<MuscleProfile> profiles;
            for (std::size_t ch = 0; ch < filtered.channel_count(); ++ch) {
                std::vector<std::vector<double>> normalized;
                for (const GaitCycle* c : cycles) {
                    auto v = normalize_cycle(envelopes[ch].slice(c->range), cfg.emg.profile_points);
                    for (double& x : v) x /= cfg.emg.normalization;
                    normalized.push_back(std::move(v));
                }
                profiles.push_back(profile_stats(normalized, filtered.names()[ch]));
            }
            r.profiles[modality] = std::move(profiles);
        }
    });
    return r;
}

}  // namespace gaitseg
