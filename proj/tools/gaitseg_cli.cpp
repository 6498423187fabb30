// gaitseg command-line frontend.
//
//   gaitseg synth    --out DIR [--seed N] [--pd | --segment MOD --walk-s S]
//   gaitseg detect   --kin K --emg E [--config C] [--out DIR] [--format json|csv]
//   gaitseg segment  --kin K --emg E [--config C] [--out DIR] [--format json|csv]
//   gaitseg profile  --kin K --emg E [--config C] [--out DIR] [--plots on|off]
//   gaitseg pipeline --kin K --emg E [--config C] [--out DIR] [--format ..] [--plots ..]
//   gaitseg --print-config [--config C]
//   gaitseg --dump-filters [--config C]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error,
// 3 internal error. GAITSEG_LOG selects the log level (default warn).

#include "gaitseg/csv_io.hpp"
#include "gaitseg/error.hpp"
#include "gaitseg/filters.hpp"
#include "gaitseg/pipeline.hpp"
#include "gaitseg/report.hpp"
#include "gaitseg/svg.hpp"
#include "gaitseg/synth.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace gaitseg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("gaitseg");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("GAITSEG_LOG")) {
        const std::string v = env;
        if (v == "error") level = spdlog::level::err;
        else if (v == "warn") level = spdlog::level::warn;
        else if (v == "info") level = spdlog::level::info;
        else if (v == "debug") level = spdlog::level::debug;
        else spdlog::warn("ignoring unknown GAITSEG_LOG value '{}'", v);
    }
    spdlog::set_level(level);
}

struct Options {
    std::string kin, emg, config, out;
    std::string format, plots;
    std::uint64_t seed = 1;
    bool pd = false;
    std::string segment;
    double walk_s = 13.0;
};

PipelineConfig effective_config(const Options& o) {
    PipelineConfig c = o.config.empty() ? PipelineConfig{} : load_config(o.config);
    if (!o.format.empty()) c.output.format = o.format;
    if (!o.plots.empty()) c.output.plots = o.plots == "on";
    if (!o.out.empty()) c.output.dir = o.out;
    c.validate();
    return c;
}

Recording load(const Options& o, const PipelineConfig& c) {
    if (o.kin.empty() || o.emg.empty()) throw ConfigError("--kin and --emg are required");
    spdlog::info("reading {} and {}", o.kin, o.emg);
    Recording r = ingest(o.kin, o.emg, c.fs_kin_hz, c.fs_emg_hz);
    spdlog::info("synchronized {} samples at {} Hz", r.az.size(), r.az.sample_rate_hz());
    return r;
}

void log_summary(const PipelineResult& r) {
    spdlog::info("{} half-trials, {} segments, {} heel strikes, {} cycles", r.half_trials.size(),
                 r.segments.size(), r.heel_strikes.size(), r.cycles.size());
    for (const auto& a : r.segments)
        spdlog::debug("half-trial {} {}: {} heel strikes", a.segment.half_trial_index,
                      to_string(a.segment.modality), a.heel_strikes.size());
}

int cmd_synth(const Options& o) {
    SynthParams p = o.pd ? parkinsonian_params(o.seed) : SynthParams{};
    p.seed = o.seed;
    SynthOutput s;
    if (!o.segment.empty()) {
        const auto m = parse_modality(o.segment);
        if (!m) throw ConfigError("unknown modality '" + o.segment + "'");
        s = generate_segment(p, *m, o.walk_s);
    } else {
        s = generate_trial(p);
    }
    const fs::path out = o.out.empty() ? fs::path("synth") : fs::path(o.out);
    write_recording(s.recording, out / "kin.csv", out / "emg.csv");
    write_text_file(out / "truth.json", truth_to_json(s.truth));
    spdlog::info("wrote {} heel strikes of ground truth to {}", s.truth.hs_times_s.size(),
                 out.string());
    return kExitOk;
}

int cmd_detect(const Options& o) {
    const PipelineConfig c = effective_config(o);
    const Recording r = load(o, c);
    const HsEvents hs = detect_all_heel_strikes(r, c);
    const fs::path out = c.output.dir;
    if (c.output.format == "csv") {
        std::string text = "index,time_s\n";
        for (std::size_t k = 0; k < hs.size(); ++k)
            text += fmt::format("{},{:.6f}\n", hs.indices[k], hs.times_s[k]);
        write_text_file(out / "heel_strikes.csv", text);
    } else {
        std::string text = fmt::format("{{\n  \"tool\": {{\"name\": \"{}\", \"version\": \"{}\"}},\n"
                                       "  \"count\": {},\n  \"times_s\": [",
                                       kToolName, kToolVersion, hs.size());
        for (std::size_t k = 0; k < hs.size(); ++k)
            text += fmt::format("{}{:.6f}", k ? ", " : "", hs.times_s[k]);
        text += "]\n}\n";
        write_text_file(out / "heel_strikes.json", text);
    }
    if (c.output.plots) {
        HsParams hp = c.heel_strike;
        write_text_file(out / "plots" / "envelope.svg",
                        svg_envelope(hs_envelope(r.az, hp), 0.0, hs.times_s, "Heel-strike envelope"));
    }
    spdlog::info("{} heel strikes", hs.size());
    return kExitOk;
}

int cmd_run(const Options& o, PipelineDepth depth, bool report, bool profiles_only) {
    PipelineConfig c = effective_config(o);
    const Recording r = load(o, c);
    const PipelineResult res = run_pipeline(r, c, depth);
    log_summary(res);
    const fs::path out = c.output.dir;
    if (profiles_only) {
        for (const auto& [m, profiles] : res.profiles)
            for (const auto& p : profiles) {
                write_text_file(out / "profiles" / fmt::format("{}_{}.csv", to_string(m), p.muscle),
                                profile_csv(p));
                if (c.output.plots)
                    write_text_file(
                        out / "plots" / fmt::format("{}_{}_profile.svg", to_string(m), p.muscle),
                        svg_profile(p, fmt::format("{} {} ({} cycles)", to_string(m), p.muscle,
                                                   p.n_cycles)));
            }
        return kExitOk;
    }
    if (report && depth == PipelineDepth::Profiles) {
        write_artifacts(res, c, {o.kin, o.emg}, out);
    } else if (c.output.format == "csv") {
        write_text_file(out / "segments.csv", segments_csv(res));
    } else {
        write_text_file(out / "report.json", report_json(res, c, {o.kin, o.emg}));
    }
    return kExitOk;
}

std::string dump_filters(const PipelineConfig& c) {
    const double fs = c.fs_emg_hz;
    const auto& h = c.heel_strike;
    const auto& e = c.emg.filter;
    struct Item {
        const char* name;
        FilterSpec spec;
    };
    const Item items[] = {
        {"heel_strike_highpass", FilterSpec::highpass(h.filter_order, h.highpass_hz, fs)},
        {"heel_strike_lowpass", FilterSpec::lowpass(h.filter_order, h.lowpass_hz, fs)},
        {"emg_bandpass",
         FilterSpec::bandpass(e.bandpass_order, e.bandpass_low_hz, e.bandpass_high_hz, fs)},
        {"emg_notch", FilterSpec::notch(e.notch_hz, e.notch_q, fs)},
        {"emg_envelope_lowpass",
         FilterSpec::lowpass(c.emg.envelope_order, c.emg.envelope_lowpass_hz, fs)},
    };
    std::string out = "{\n";
    for (std::size_t i = 0; i < std::size(items); ++i) {
        const auto cascade = design(items[i].spec);
        out += fmt::format("  \"{}\": {{\"kind\": \"{}\", \"stable\": {}, \"max_pole_radius\": {:.17g}, "
                           "\"filter\": {}}}{}\n",
                           items[i].name, to_string(items[i].spec.kind),
                           is_stable(cascade) ? "true" : "false", max_pole_radius(cascade),
                           to_json(cascade), i + 1 < std::size(items) ? "," : "");
    }
    return out + "}\n";
}

int exit_code_for(const StageError& e) {
    switch (e.kind()) {
        case StageError::Kind::Usage: return kExitUsage;
        case StageError::Kind::Data: return kExitData;
        case StageError::Kind::Internal: return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Gait event segmentation for wearable IMU and sEMG recordings", "gaitseg"};
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;
    bool print_config = false;
    bool dump = false;
    app.add_flag("--print-config", print_config, "Print the effective configuration and exit");
    app.add_flag("--dump-filters", dump, "Print the designed filter cascades and exit");
    app.add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--kin", o.kin, "Kinematics CSV (t,ax,ay,az,px,py,pz)")->required();
        sub->add_option("--emg", o.emg, "EMG CSV (t,TA,mGAST,VL,RF,SEM,BFL)")->required();
        sub->add_option("--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "Output directory");
        sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--plots", o.plots, "Write SVG plots")->check(CLI::IsMember({"on", "off"}));
    };

    auto* synth = app.add_subcommand("synth", "Generate a synthetic recording with ground truth");
    synth->add_option("--out", o.out, "Output directory");
    synth->add_option("--seed", o.seed, "Random seed");
    synth->add_flag("--pd", o.pd, "Slow parkinsonian gait with tremor");
    synth->add_option("--segment", o.segment, "Single walking bout of this modality");
    synth->add_option("--walk-s", o.walk_s, "Walking duration of --segment in seconds");

    auto* detect = app.add_subcommand("detect", "Heel strikes over the whole recording");
    add_io(detect);
    auto* segment = app.add_subcommand("segment", "Half-trials and modality segments");
    add_io(segment);
    auto* profile = app.add_subcommand("profile", "EMG muscle profiles per modality");
    add_io(profile);
    auto* pipeline = app.add_subcommand("pipeline", "Full analysis with every artifact");
    add_io(pipeline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (print_config) {
            std::cout << config_to_json(effective_config(o));
            return kExitOk;
        }
        if (dump) {
            std::cout << dump_filters(effective_config(o));
            return kExitOk;
        }
        if (synth->parsed()) return cmd_synth(o);
        if (detect->parsed()) return cmd_detect(o);
        if (segment->parsed()) return cmd_run(o, PipelineDepth::Segmentation, true, false);
        if (profile->parsed()) return cmd_run(o, PipelineDepth::Profiles, false, true);
        if (pipeline->parsed()) return cmd_run(o, PipelineDepth::Profiles, true, false);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const StageError& e) {
        spdlog::error("{}", e.what());
        return exit_code_for(e);
    } catch (const DataError& e) {
        spdlog::error("{}", e.what());
        return kExitData;
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        spdlog::error("internal error: {}", e.what());
        return kExitInternal;
    }
}
