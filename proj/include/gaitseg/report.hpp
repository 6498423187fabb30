#pragma once

#include "gaitseg/pipeline.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gaitseg {

inline constexpr std::string_view kToolName = "gaitseg";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ReportSources {
    std::string kin;
    std::string emg;
};

/// Event report. Keys keep insertion order and every floating-point value is
/// printed with exactly six decimals, so equal inputs give identical bytes.
std::string report_json(const PipelineResult& result, const PipelineConfig& config,
                        const ReportSources& sources = {});

/// half_trial,direction,modality,start_s,end_s,analysis_start_s,analysis_end_s,n_heel_strikes
std::string segments_csv(const PipelineResult& result);
/// half_trial,modality,index,time_s
std::string heel_strikes_csv(const PipelineResult& result);
/// percent_gait_cycle,mean,std
std::string profile_csv(const MuscleProfile& profile);

/// Writes the report (report.json, or segments.csv + heel_strikes.csv when
/// the output format is csv), per-cycle EMG CSVs under cycles/, profile CSVs
/// under profiles/ and, when enabled, SVG plots under plots/.
void write_artifacts(const PipelineResult& result, const PipelineConfig& config,
                     const ReportSources& sources, const std::filesystem::path& out_dir);

}  // namespace gaitseg
