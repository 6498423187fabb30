#pragma once

#include "gaitseg/recording.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace gaitseg {

// File formats (comma-separated, '.' decimal, LF line endings):
//   kinematics  t,ax,ay,az,px,py,pz     seconds, m/s^2, m
//   EMG         t,TA,mGAST,VL,RF,SEM,BFL seconds, mV
//
// Rows are numbered by file line, the header being line 1; columns are
// 1-based. The t column must step by 1/fs within 1 % of the nominal period.
// Other acquisition layouts can be supported by producing a Recording
// directly and skipping these readers.

inline constexpr std::string_view kKinematicsHeader = "t,ax,ay,az,px,py,pz";
inline constexpr std::string_view kEmgHeader = "t,TA,mGAST,VL,RF,SEM,BFL";

struct KinematicsTable {
    TimeSeries ax, ay, az, px, py, pz;
};

KinematicsTable parse_kinematics_csv(std::string_view text, double fs_kin_hz);
EmgChannelSet parse_emg_csv(std::string_view text, double fs_emg_hz);

std::string format_kinematics_csv(const Recording& recording);
std::string format_emg_csv(const EmgChannelSet& emg);
/// Header `t,<names...>`; rows start at t = 0 with the series rate.
std::string format_columns_csv(const std::vector<std::string>& names,
                               const std::vector<const TimeSeries*>& columns);

/// Both files at their native rates. Throws DurationMismatch when the spans
/// differ by more than 0.5 s.
Recording read_recording(const std::filesystem::path& kin_csv,
                         const std::filesystem::path& emg_csv, double fs_kin_hz,
                         double fs_emg_hz);

/// read_recording followed by synchronize().
Recording ingest(const std::filesystem::path& kin_csv, const std::filesystem::path& emg_csv,
                 double fs_kin_hz, double fs_emg_hz);

void write_recording(const Recording& native, const std::filesystem::path& kin_csv,
                     const std::filesystem::path& emg_csv);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gaitseg
