#include "gaitseg/csv_io.hpp"
#include "gaitseg/error.hpp"
#include "gaitseg/pipeline.hpp"
#include "gaitseg/report.hpp"
#include "gaitseg/synth.hpp"
#include "oracles.hpp"
#include "scoring.hpp"

#include <doctest.h>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>

using namespace gaitseg;
namespace fs = std::filesystem;

namespace {

struct Trial {
    SynthOutput synth;
    Recording rec;
    PipelineResult result;
};

const Trial& default_trial() {
    static const Trial t = [] {
        SynthParams p;
        p.seed = 5;
        Trial x{generate_trial(p), {}, {}};
        x.rec = synchronize(x.synth.recording);
        x.result = run_pipeline(x.rec, PipelineConfig{});
        return x;
    }();
    return t;
}

PipelineConfig single_bout_config() {
    PipelineConfig c;
    c.expected_half_trials = 1;
    c.protocol.forward = {Modality::LGW};
    c.protocol.reverse = {Modality::LGW};
    return c;
}

Recording quiet_recording(double seconds) {
    oracle::Gen g(77);
    const std::size_t n = static_cast<std::size_t>(seconds * 1000.0) + 1;
    auto noisy = [&](double level, double sd) {
        std::vector<double> v(n);
        for (double& x : v) x = level + sd * g.normal();
        return TimeSeries(std::move(v), 1000.0);
    };
    Recording r;
    r.ax = noisy(0.0, 0.05);
    r.ay = noisy(0.0, 0.05);
    r.az = noisy(9.81, 0.05);
    r.px = noisy(0.0, 0.001);
    r.py = noisy(0.0, 0.001);
    r.pz = noisy(0.0, 0.001);
    for (auto m : kCanonicalMuscles) r.emg.add(std::string(m), noisy(0.0, 0.01));
    return r;
}

int run_cli(const std::string& args) {
    const std::string cmd = fmt::format("\"{}\" {} >/dev/null 2>&1", GAITSEG_CLI_PATH, args);
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path temp_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("gaitseg_pipeline_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("default trial: four half-trials, twelve labelled segments") {
    const auto& t = default_trial();
    REQUIRE(t.result.half_trials.size() == 4);
    REQUIRE(t.result.segments.size() == 12);
    const CourseProtocol protocol;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(t.result.half_trials[k].direction == t.synth.truth.half_trials[k].direction);
        for (std::size_t j = 0; j < 3; ++j) {
            const auto& s = t.result.segments[3 * k + j].segment;
            CHECK(s.half_trial_index == k);
            CHECK(s.modality == protocol.sequence(t.result.half_trials[k].direction)[j]);
        }
        // the detected bout covers the walking bout to within the energy window
        const double fs = t.result.sample_rate_hz;
        CHECK(std::abs(static_cast<double>(t.result.half_trials[k].range.start_idx) / fs -
                       t.synth.truth.half_trials[k].start_s) < 1.5);
        CHECK(std::abs(static_cast<double>(t.result.half_trials[k].range.end_idx) / fs -
                       t.synth.truth.half_trials[k].end_s) < 1.5);
    }
}

TEST_CASE("default trial: heel strikes within 30 ms of ground truth") {
    const auto& t = default_trial();
    const auto s = scoring::score(t.synth.truth.hs_times_s, t.result.heel_strikes.times_s,
                                  scoring::analysis_windows(t.result), 0.030, 0.1);
    CHECK(s.truth > 300);
    CHECK(s.recall() >= 0.98);
    CHECK(s.spurious_rate() <= 0.01);
}

TEST_CASE("every heel strike lies inside exactly one analysis window, in time order") {
    const auto& r = default_trial().result;
    for (std::size_t k = 1; k < r.heel_strikes.size(); ++k)
        CHECK(r.heel_strikes.indices[k] > r.heel_strikes.indices[k - 1]);
    for (std::size_t i : r.heel_strikes.indices) {
        std::size_t owners = 0;
        for (const auto& a : r.segments) owners += a.analysis.contains(i) ? 1 : 0;
        CHECK(owners == 1);
    }
    // segments tile each half-trial
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(r.segments[3 * k].segment.range.start_idx == r.half_trials[k].range.start_idx);
        CHECK(r.segments[3 * k + 2].segment.range.end_idx == r.half_trials[k].range.end_idx);
    }
}

TEST_CASE("cycles and profiles follow from the heel strikes") {
    const auto& r = default_trial().result;
    std::size_t want = 0;
    for (const auto& a : r.segments) want += a.heel_strikes.size() > 1 ? a.heel_strikes.size() - 1 : 0;
    CHECK(r.cycles.size() == want);
    CHECK(r.profiles.size() == 5);
    for (const auto& [m, profiles] : r.profiles) {
        REQUIRE(profiles.size() == 6);
        std::size_t n = 0;
        for (const auto& c : r.cycles) n += c.modality == m ? 1 : 0;
        for (const auto& p : profiles) {
            CHECK(p.n_cycles == n);
            CHECK(p.n_points == 1000);
        }
    }
}

TEST_CASE("report is byte-stable and carries the expected keys") {
    const auto& t = default_trial();
    const PipelineConfig cfg;
    const std::string a = report_json(t.result, cfg, {"kin.csv", "emg.csv"});
    const std::string b = report_json(run_pipeline(t.rec, cfg), cfg, {"kin.csv", "emg.csv"});
    CHECK(a == b);
    for (const char* key : {"\"tool\"", "\"recording\"", "\"parameters\"", "\"half_trials\"",
                            "\"modalities\"", "\"heel_strikes\"", "\"cycle_counts\""})
        CHECK(a.find(key) != std::string::npos);
    CHECK(segments_csv(t.result).rfind("half_trial,direction,modality,", 0) == 0);
    CHECK(heel_strikes_csv(t.result).rfind("half_trial,modality,index,time_s\n", 0) == 0);
}

TEST_CASE("single bout: N heel strikes give N - 1 cycles") {
    SynthParams p;
    p.seed = 12;
    const auto seg = generate_segment(p, Modality::LGW, 14.0);
    const auto r = run_pipeline(synchronize(seg.recording), single_bout_config());
    REQUIRE(r.segments.size() == 1);
    REQUIRE(r.heel_strikes.size() >= 2);
    CHECK(r.cycles.size() == r.heel_strikes.size() - 1);
    for (std::size_t k = 0; k < r.cycles.size(); ++k) {
        CHECK(r.cycles[k].range.start_idx == r.heel_strikes.indices[k]);
        CHECK(r.cycles[k].range.end_idx == r.heel_strikes.indices[k + 1]);
    }
}

TEST_CASE("depth stops the pipeline early") {
    const auto& t = default_trial();
    const auto seg = run_pipeline(t.rec, PipelineConfig{}, PipelineDepth::Segmentation);
    CHECK(seg.segments.size() == 12);
    CHECK(seg.heel_strikes.empty());
    const auto hs = run_pipeline(t.rec, PipelineConfig{}, PipelineDepth::HeelStrikes);
    CHECK(hs.heel_strikes.indices == t.result.heel_strikes.indices);
    CHECK(hs.cycles.empty());
}

TEST_CASE("a recording without walking fails in the half-trial stage") {
    try {
        run_pipeline(quiet_recording(60.0), PipelineConfig{});
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "half-trials");
        CHECK(e.kind() == StageError::Kind::Data);
        try {
            e.rethrow_cause();
        } catch (const ActivityCountMismatch& m) {
            CHECK(m.found() == 0);
            CHECK(m.expected() == 4);
        }
    }
}

TEST_CASE("unsynchronized input and invalid configs are rejected") {
    const auto& t = default_trial();
    CHECK_THROWS_AS(run_pipeline(t.synth.recording, PipelineConfig{}), StageError);
    PipelineConfig bad;
    bad.heel_strike.max_cadence_steps_per_min = -1;
    try {
        run_pipeline(t.rec, bad);
        FAIL("expected StageError");
    } catch (const StageError& e) {
        CHECK(e.stage() == "config");
        CHECK(e.kind() == StageError::Kind::Usage);
    }
}

TEST_CASE("CLI exit codes") {
    const auto dir = temp_dir("cli");
    write_recording(quiet_recording(60.0), dir / "kin.csv", dir / "emg.csv");
    // the quiet recording is on the EMG grid; declare that rate for kinematics
    write_text_file(dir / "sync.json", R"({"fs_kin_hz": 1000})");
    write_text_file(dir / "bad.json", R"({"heel_strike": {"cadence": 80}})");
    const std::string io = fmt::format("--kin \"{}\" --emg \"{}\" --out \"{}\"", (dir / "kin.csv").string(),
                                       (dir / "emg.csv").string(), (dir / "out").string());

    CHECK(run_cli("--version") == 0);
    CHECK(run_cli(fmt::format("segment {} --config \"{}\"", io, (dir / "sync.json").string())) == 2);
    CHECK(run_cli(fmt::format("segment {} --config \"{}\"", io, (dir / "bad.json").string())) == 1);
    CHECK(run_cli("segment --kin") == 1);
    CHECK(run_cli(fmt::format("detect {} --config \"{}\"", io, (dir / "sync.json").string())) == 0);
    write_text_file(dir / "broken.csv", "t,ax,ay,az,px,py,pz\n0,1,2,x,4,5,6\n");
    CHECK(run_cli(fmt::format("detect --kin \"{}\" --emg \"{}\"", (dir / "broken.csv").string(),
                              (dir / "emg.csv").string())) == 2);

    CHECK(run_cli(fmt::format("synth --out \"{}\" --seed 3", (dir / "trial").string())) == 0);
    CHECK(fs::exists(dir / "trial" / "truth.json"));
    const std::string trial_io =
        fmt::format("--kin \"{}\" --emg \"{}\" --out \"{}\"", (dir / "trial" / "kin.csv").string(),
                    (dir / "trial" / "emg.csv").string(), (dir / "run").string());
    CHECK(run_cli("pipeline " + trial_io + " --plots off") == 0);
    CHECK(fs::exists(dir / "run" / "report.json"));
    CHECK(fs::exists(dir / "run" / "profiles" / "LGW_TA.csv"));
    CHECK_FALSE(fs::exists(dir / "run" / "plots"));
    fs::remove_all(dir);
}
