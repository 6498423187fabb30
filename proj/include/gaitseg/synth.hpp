#pragma once

#include "gaitseg/activity.hpp"
#include "gaitseg/modality.hpp"
#include "gaitseg/recording.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gaitseg {

/// Seeded pseudo-random source with a portable output sequence.
///
/// Bits come from std::mt19937_64, whose sequence is fixed by the C++
/// standard. Uniform doubles take the top 53 bits: (x >> 11) * 2^-53.
/// Normals use the Box-Muller cosine branch with u1 mapped to (0, 1]:
///   z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)
/// Each normal consumes exactly two draws, so sequences do not depend on the
/// standard library's distribution implementations.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

private:
    std::mt19937_64 engine_;
};

struct TremorParams {
    double low_hz = 4.0;
    double high_hz = 6.0;
    double amplitude_mps2 = 2.0;  ///< RMS of the tremor component
};

/// Muscle activation window as a fraction of the gait cycle measured from
/// heel strike; `end` may exceed 1 to wrap into the next cycle.
struct BurstPhase {
    std::string muscle;
    double start = 0.0;
    double end = 0.0;

    double center() const noexcept { return 0.5 * (start + end); }
    /// True when phase p in [0, 1) falls in the window, modulo 1.
    bool contains(double p) const noexcept;
};

std::vector<BurstPhase> default_burst_phases();

struct SynthParams {
    std::uint64_t seed = 1;
    double fs_emg_hz = 1000.0;
    double fs_kin_hz = 60.0;
    /// Heel strikes of the instrumented foot per minute.
    std::map<Modality, double> cadence_steps_per_min{{Modality::RA, 100.0},
                                                      {Modality::RD, 105.0},
                                                      {Modality::SA, 90.0},
                                                      {Modality::SD, 95.0},
                                                      {Modality::LGW, 110.0}};
    double hs_amplitude_mps2 = 30.0;
    double hs_frequency_hz = 15.0;
    /// Time for the impact oscillation to decay to 1 % of its initial amplitude.
    double hs_decay_s = 0.05;
    /// Impact of the other foot, felt half a cycle after each heel strike.
    double contralateral_amplitude_mps2 = 7.5;
    double noise_std = 0.3;
    double position_noise_std = 0.002;
    double gait_accel_amplitude_mps2 = 3.0;
    double rest_duration_s = 10.0;
    std::array<double, 3> modality_durations_s{25.0, 30.0, 25.0};
    std::size_t n_half_trials = 4;
    std::optional<TremorParams> tremor;

    double emg_burst_amplitude_mv = 0.5;
    double emg_baseline_mv = 0.03;
    double emg_powerline_mv = 0.1;
    double powerline_hz = 60.0;
    std::vector<BurstPhase> bursts = default_burst_phases();

    void validate() const;
    double cadence(Modality m) const;
};

/// Slow parkinsonian gait: cadence 50 in every modality, heel-strike
/// amplitude halved, 4-6 Hz tremor.
SynthParams parkinsonian_params(std::uint64_t seed = 1);

struct HalfTrialTruth {
    double start_s = 0.0;
    double end_s = 0.0;
    Direction direction = Direction::Forward;
};

struct SegmentTruth {
    double start_s = 0.0;
    double end_s = 0.0;
    Modality modality = Modality::LGW;
    std::size_t half_trial_index = 0;
};

struct GroundTruth {
    std::vector<double> hs_times_s;
    std::vector<double> turn_times_s;
    std::vector<HalfTrialTruth> half_trials;
    std::vector<std::vector<Modality>> modality_labels;
    std::vector<SegmentTruth> segments;
    std::vector<BurstPhase> emg_burst_phases;
};

struct SynthOutput {
    Recording recording;  ///< kinematics at fs_kin_hz, EMG at fs_emg_hz
    GroundTruth truth;
};

/// Full recording: rest, then n_half_trials traversals of the course with
/// alternating direction separated by rests, then rest.
SynthOutput generate_trial(const SynthParams& params);

/// One walking bout of a single modality lasting walk_s, framed by stand_s
/// of quiet standing on each side.
SynthOutput generate_segment(const SynthParams& params, Modality modality, double walk_s,
                             double stand_s = 2.0);

/// {"hs_times_s":[...],"turn_times_s":[...],"half_trials":[...],
///  "modalities":[[...]],"emg_burst_phases":[...]}
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(const std::string& text);

}  // namespace gaitseg
