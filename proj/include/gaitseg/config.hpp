#pragma once

#include "gaitseg/activity.hpp"
#include "gaitseg/emg.hpp"
#include "gaitseg/heel_strike.hpp"
#include "gaitseg/modality.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace gaitseg {

enum class ActivityAxis { X, Magnitude };

struct ActivityConfig {
    ActivityAxis axis = ActivityAxis::X;
    std::size_t smoothing_N = 25;
    /// energy_threshold inside is ignored unless `energy_threshold` is set.
    ActivityParams params;
    double threshold_multiplier = 8.0;
    double threshold_percentile = 10.0;
    std::optional<double> energy_threshold;
};

struct EmgConfig {
    EmgFilterParams filter;
    double envelope_lowpass_hz = 6.0;
    int envelope_order = 2;
    std::size_t profile_points = 1000;
    /// Profiles are divided by this constant (e.g. an MVC amplitude).
    double normalization = 1.0;
};

struct OutputConfig {
    std::string dir = "gaitseg_out";
    bool plots = true;
    std::string format = "json";  ///< "json" or "csv"
};

struct PipelineConfig {
    double fs_kin_hz = 60.0;
    double fs_emg_hz = 1000.0;
    std::size_t expected_half_trials = 4;
    ActivityConfig activity;
    TurnParams turns;
    CourseProtocol protocol;
    HsParams heel_strike;
    EmgConfig emg;
    OutputConfig output;

    /// Throws ConfigError on any out-of-range value.
    void validate() const;
};

/// Every key is optional; unknown keys and mistyped values throw ConfigError.
PipelineConfig config_from_json(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);
/// Effective configuration with every key spelled out.
std::string config_to_json(const PipelineConfig& config);

}  // namespace gaitseg
