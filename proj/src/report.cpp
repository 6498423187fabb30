#include "gaitseg/report.hpp"

#include "gaitseg/csv_io.hpp"
#include "gaitseg/svg.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace gaitseg {

namespace {

using nlohmann::ordered_json;

void emit(const ordered_json& j, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + ordered_json(k).dump() + ": ";
                emit(v, depth + 1, out);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                emit(v, depth + 1, out);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += fmt::format("{:.6f}", j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

double seconds(std::size_t idx, double fs) { return static_cast<double>(idx) / fs; }

std::string segment_stem(const AnalyzedSegment& a) {
    return fmt::format("h{}_{}", a.segment.half_trial_index, to_string(a.segment.modality));
}

}  // namespace

std::string report_json(const PipelineResult& r, const PipelineConfig& config,
                        const ReportSources& sources) {
    const double fs = r.sample_rate_hz;
    ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

    ordered_json rec;
    rec["sample_rate_hz"] = fs;
    rec["n_samples"] = r.n_samples;
    rec["duration_s"] = r.n_samples > 0 ? seconds(r.n_samples - 1, fs) : 0.0;
    if (!sources.kin.empty()) rec["kin_source"] = sources.kin;
    if (!sources.emg.empty()) rec["emg_source"] = sources.emg;
    j["recording"] = rec;
    j["parameters"] = ordered_json::parse(config_to_json(config));
    j["activity"] = {{"energy_threshold", r.energy_threshold}};

    ordered_json halves = ordered_json::array();
    for (std::size_t k = 0; k < r.half_trials.size(); ++k) {
        const auto& h = r.half_trials[k];
        ordered_json e;
        e["index"] = k;
        e["direction"] = to_string(h.direction);
        e["start_idx"] = h.range.start_idx;
        e["end_idx"] = h.range.end_idx;
        e["start_s"] = seconds(h.range.start_idx, fs);
        e["end_s"] = seconds(h.range.end_idx, fs);
        ordered_json turns = ordered_json::array();
        if (k < r.turns.size())
            for (std::size_t t : r.turns[k])
                turns.push_back({{"index", t}, {"time_s", seconds(t, fs)}});
        e["turns"] = turns;
        halves.push_back(e);
    }
    j["half_trials"] = halves;

    std::map<Modality, std::size_t> cycle_counts;
    for (const auto& c : r.cycles) ++cycle_counts[c.modality];

    ordered_json segs = ordered_json::array();
    for (const auto& a : r.segments) {
        ordered_json e;
        e["half_trial"] = a.segment.half_trial_index;
        e["modality"] = to_string(a.segment.modality);
        e["start_idx"] = a.segment.range.start_idx;
        e["end_idx"] = a.segment.range.end_idx;
        e["start_s"] = seconds(a.segment.range.start_idx, fs);
        e["end_s"] = seconds(a.segment.range.end_idx, fs);
        e["analysis_start_s"] = seconds(a.analysis.start_idx, fs);
        e["analysis_end_s"] = seconds(a.analysis.end_idx, fs);
        ordered_json hs = ordered_json::array();
        for (double t : a.heel_strikes.times_s) hs.push_back(t);
        e["heel_strikes_s"] = hs;
        segs.push_back(e);
    }
    j["modalities"] = segs;

    ordered_json all = ordered_json::array();
    for (double t : r.heel_strikes.times_s) all.push_back(t);
    j["heel_strikes"] = {{"count", r.heel_strikes.size()}, {"times_s", all}};

    ordered_json counts = ordered_json::object();
    for (const auto& [m, n] : cycle_counts) counts[to_string(m)] = n;
    j["cycle_counts"] = counts;

    std::string out;
    emit(j, 0, out);
    out.push_back('\n');
    return out;
}

std::string segments_csv(const PipelineResult& r) {
    const double fs = r.sample_rate_hz;
    std::string out =
        "half_trial,direction,modality,start_s,end_s,analysis_start_s,analysis_end_s,"
        "n_heel_strikes\n";
    for (const auto& a : r.segments) {
        const auto& h = r.half_trials.at(a.segment.half_trial_index);
        out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", a.segment.half_trial_index,
                           to_string(h.direction), to_string(a.segment.modality),
                           seconds(a.segment.range.start_idx, fs),
                           seconds(a.segment.range.end_idx, fs), seconds(a.analysis.start_idx, fs),
                           seconds(a.analysis.end_idx, fs), a.heel_strikes.size());
    }
    return out;
}

std::string heel_strikes_csv(const PipelineResult& r) {
    std::string out = "half_trial,modality,index,time_s\n";
    for (const auto& a : r.segments)
        for (std::size_t k = 0; k < a.heel_strikes.size(); ++k)
            out += fmt::format("{},{},{},{:.6f}\n", a.segment.half_trial_index,
                               to_string(a.segment.modality), a.heel_strikes.indices[k],
                               a.heel_strikes.times_s[k]);
    return out;
}

std::string profile_csv(const MuscleProfile& p) {
    std::string out = "percent_gait_cycle,mean,std\n";
    const double step = p.n_points > 1 ? 100.0 / static_cast<double>(p.n_points - 1) : 0.0;
    for (std::size_t i = 0; i < p.n_points; ++i)
        out += fmt::format("{},{},{}\n", step * static_cast<double>(i), p.mean[i], p.std[i]);
    return out;
}

void write_artifacts(const PipelineResult& r, const PipelineConfig& config,
                     const ReportSources& sources, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    if (config.output.format == "csv") {
        write_text_file(out_dir / "segments.csv", segments_csv(r));
        write_text_file(out_dir / "heel_strikes.csv", heel_strikes_csv(r));
    } else {
        write_text_file(out_dir / "report.json", report_json(r, config, sources));
    }

    std::map<std::string, std::size_t> seen;
    std::size_t seg = 0;
    std::size_t in_seg = 0;
    for (const auto& c : r.cycles) {
        while (seg < r.segments.size() && !r.segments[seg].analysis.contains(c.range.start_idx)) {
            ++seg;
            in_seg = 0;
        }
        const std::string stem =
            seg < r.segments.size() ? segment_stem(r.segments[seg]) : to_string(c.modality);
        std::vector<const TimeSeries*> cols;
        for (std::size_t ch = 0; ch < c.emg.channel_count(); ++ch) cols.push_back(&c.emg.channel(ch));
        write_text_file(out_dir / "cycles" / fmt::format("{}_cycle{:03d}.csv", stem, in_seg++),
                        format_columns_csv(c.emg.names(), cols));
    }

    for (const auto& [m, profiles] : r.profiles)
        for (const auto& p : profiles)
            write_text_file(out_dir / "profiles" / fmt::format("{}_{}.csv", to_string(m), p.muscle),
                            profile_csv(p));

    if (!config.output.plots) return;
    for (const auto& a : r.segments) {
        if (a.envelope.empty()) continue;
        write_text_file(
            out_dir / "plots" / fmt::format("{}_envelope.svg", segment_stem(a)),
            svg_envelope(a.envelope, seconds(a.analysis.start_idx, r.sample_rate_hz),
                         a.heel_strikes.times_s,
                         fmt::format("Heel-strike envelope, half-trial {}, {}",
                                     a.segment.half_trial_index, to_string(a.segment.modality))));
    }
    for (const auto& [m, profiles] : r.profiles)
        for (const auto& p : profiles)
            write_text_file(out_dir / "plots" / fmt::format("{}_{}_profile.svg", to_string(m), p.muscle),
                            svg_profile(p, fmt::format("{} {} ({} cycles)", to_string(m), p.muscle,
                                                       p.n_cycles)));
}

}  // namespace gaitseg
