#include "gaitseg/config.hpp"

#include "gaitseg/csv_io.hpp"
#include "gaitseg/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <set>

namespace gaitseg {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads keys of one JSON object and remembers which were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(where() + " must be a JSON object");
    }

    void number(const char* key, double& out) {
        if (const json* v = take(key)) {
            if (!v->is_number()) throw ConfigError(where(key) + " must be a number");
            out = v->get<double>();
        }
    }
    void optional_number(const char* key, std::optional<double>& out) {
        if (const json* v = take(key)) {
            if (v->is_null()) {
                out.reset();
                return;
            }
            if (!v->is_number()) throw ConfigError(where(key) + " must be a number or null");
            out = v->get<double>();
        }
    }
    void count(const char* key, std::size_t& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_unsigned())
                throw ConfigError(where(key) + " must be a non-negative integer");
            out = v->get<std::size_t>();
        }
    }
    void integer(const char* key, int& out) {
        if (const json* v = take(key)) {
            if (!v->is_number_integer()) throw ConfigError(where(key) + " must be an integer");
            out = v->get<int>();
        }
    }
    void boolean(const char* key, bool& out) {
        if (const json* v = take(key)) {
            if (!v->is_boolean()) throw ConfigError(where(key) + " must be true or false");
            out = v->get<bool>();
        }
    }
    void string(const char* key, std::string& out) {
        if (const json* v = take(key)) {
            if (!v->is_string()) throw ConfigError(where(key) + " must be a string");
            out = v->get<std::string>();
        }
    }
    void modalities(const char* key, std::vector<Modality>& out) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_array()) throw ConfigError(where(key) + " must be an array of modality names");
        out.clear();
        for (const auto& e : *v) {
            const auto m = e.is_string() ? parse_modality(e.get<std::string>()) : std::nullopt;
            if (!m) throw ConfigError(where(key) + ": unknown modality " + e.dump());
            out.push_back(*m);
        }
    }
    const json* section(const char* key) { return take(key); }
    std::string path(const char* key) const { return where(key); }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ConfigError("unknown config key '" + where(k.c_str()) + "'");
    }

private:
    const json* take(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }
    std::string where() const { return path_.empty() ? "config" : path_; }
    std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

ordered_json modality_names(const std::vector<Modality>& ms) {
    ordered_json a = ordered_json::array();
    for (auto m : ms) a.push_back(to_string(m));
    return a;
}

}  // namespace

void PipelineConfig::validate() const {
    require(fs_kin_hz > 0.0 && std::isfinite(fs_kin_hz), "fs_kin_hz must be positive");
    require(fs_emg_hz > 0.0 && std::isfinite(fs_emg_hz), "fs_emg_hz must be positive");
    require(expected_half_trials >= 1, "expected_half_trials must be >= 1");

    require(activity.params.energy_window_samples >= 1,
            "activity.energy_window_samples must be >= 1");
    require(activity.params.min_activity_samples >= 1,
            "activity.min_activity_samples must be >= 1");
    require(activity.threshold_multiplier > 0.0, "activity.threshold_multiplier must be > 0");
    require(activity.threshold_percentile >= 0.0 && activity.threshold_percentile <= 100.0,
            "activity.threshold_percentile must lie in [0, 100]");
    require(!activity.energy_threshold || *activity.energy_threshold > 0.0,
            "activity.energy_threshold must be > 0");

    require(turns.min_turn_separation_samples >= 1,
            "turns.min_turn_separation_samples must be >= 1");
    require(!protocol.forward.empty() && protocol.forward.size() == protocol.reverse.size(),
            "turns.forward_sequence and turns.reverse_sequence must be non-empty and of equal "
            "length");

    try {
        heel_strike.validate(fs_emg_hz);
    } catch (const Error& e) {
        throw ConfigError(std::string("heel_strike: ") + e.what());
    }

    const double nyq = fs_emg_hz / 2.0;
    const auto& f = emg.filter;
    require(f.bandpass_low_hz > 0.0 && f.bandpass_low_hz < f.bandpass_high_hz,
            "emg.bandpass_low_hz must lie in (0, bandpass_high_hz)");
    require(fs_emg_hz > 2.0 * f.bandpass_high_hz,
            "fs_emg_hz must exceed twice emg.bandpass_high_hz");
    require(f.bandpass_order >= 1, "emg.bandpass_order must be >= 1");
    require(f.notch_hz > 0.0 && f.notch_hz < nyq, "emg.notch_hz must lie in (0, fs_emg/2)");
    require(f.notch_q > 0.0, "emg.notch_q must be > 0");
    require(emg.envelope_lowpass_hz > 0.0 && emg.envelope_lowpass_hz < nyq,
            "emg.envelope_lowpass_hz must lie in (0, fs_emg/2)");
    require(emg.envelope_order >= 1, "emg.envelope_order must be >= 1");
    require(emg.profile_points >= 2, "emg.profile_points must be >= 2");
    require(emg.normalization > 0.0, "emg.normalization must be > 0");
    require(output.format == "json" || output.format == "csv",
            "output.format must be \"json\" or \"csv\"");
}

PipelineConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig c;
    Section root(j, "");
    root.number("fs_kin_hz", c.fs_kin_hz);
    root.number("fs_emg_hz", c.fs_emg_hz);
    root.count("expected_half_trials", c.expected_half_trials);

    if (const json* a = root.section("activity")) {
        Section s(*a, "activity");
        std::string axis = c.activity.axis == ActivityAxis::X ? "x" : "magnitude";
        s.string("axis", axis);
        if (axis == "x")
            c.activity.axis = ActivityAxis::X;
        else if (axis == "magnitude")
            c.activity.axis = ActivityAxis::Magnitude;
        else
            throw ConfigError("activity.axis must be \"x\" or \"magnitude\"");
        s.count("smoothing_N", c.activity.smoothing_N);
        s.count("energy_window_samples", c.activity.params.energy_window_samples);
        s.number("threshold_multiplier", c.activity.threshold_multiplier);
        s.number("threshold_percentile", c.activity.threshold_percentile);
        s.optional_number("energy_threshold", c.activity.energy_threshold);
        s.count("min_activity_samples", c.activity.params.min_activity_samples);
        s.count("merge_gap_samples", c.activity.params.merge_gap_samples);
        s.finish();
    }
    if (const json* t = root.section("turns")) {
        Section s(*t, "turns");
        s.count("smoothing_N", c.turns.smoothing_N);
        s.count("min_turn_separation_samples", c.turns.min_turn_separation_samples);
        s.count("safety_margin_samples", c.turns.safety_margin_samples);
        s.modalities("forward_sequence", c.protocol.forward);
        s.modalities("reverse_sequence", c.protocol.reverse);
        s.finish();
    }
    if (const json* h = root.section("heel_strike")) {
        Section s(*h, "heel_strike");
        s.number("highpass_hz", c.heel_strike.highpass_hz);
        s.number("lowpass_hz", c.heel_strike.lowpass_hz);
        s.integer("filter_order", c.heel_strike.filter_order);
        s.number("max_cadence_steps_per_min", c.heel_strike.max_cadence_steps_per_min);
        s.number("min_peak_height_rel", c.heel_strike.min_peak_height_rel);
        s.number("height_percentile", c.heel_strike.height_percentile);
        s.optional_number("expected_velocity_mps", c.heel_strike.expected_velocity_mps);
        s.finish();
    }
    if (const json* e = root.section("emg")) {
        Section s(*e, "emg");
        s.number("bandpass_low_hz", c.emg.filter.bandpass_low_hz);
        s.number("bandpass_high_hz", c.emg.filter.bandpass_high_hz);
        s.integer("bandpass_order", c.emg.filter.bandpass_order);
        s.number("notch_hz", c.emg.filter.notch_hz);
        s.number("notch_q", c.emg.filter.notch_q);
        s.number("envelope_lowpass_hz", c.emg.envelope_lowpass_hz);
        s.integer("envelope_order", c.emg.envelope_order);
        s.count("profile_points", c.emg.profile_points);
        s.number("normalization", c.emg.normalization);
        s.finish();
    }
    if (const json* o = root.section("output")) {
        Section s(*o, "output");
        s.string("dir", c.output.dir);
        s.boolean("plots", c.output.plots);
        s.string("format", c.output.format);
        s.finish();
    }
    root.finish();
    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    return config_from_json(read_text_file(path));
}

std::string config_to_json(const PipelineConfig& c) {
    ordered_json j;
    j["fs_kin_hz"] = c.fs_kin_hz;
    j["fs_emg_hz"] = c.fs_emg_hz;
    j["expected_half_trials"] = c.expected_half_trials;

    auto& a = j["activity"];
    a["axis"] = c.activity.axis == ActivityAxis::X ? "x" : "magnitude";
    a["smoothing_N"] = c.activity.smoothing_N;
    a["energy_window_samples"] = c.activity.params.energy_window_samples;
    a["threshold_multiplier"] = c.activity.threshold_multiplier;
    a["threshold_percentile"] = c.activity.threshold_percentile;
    a["energy_threshold"] =
        c.activity.energy_threshold ? ordered_json(*c.activity.energy_threshold) : ordered_json();
    a["min_activity_samples"] = c.activity.params.min_activity_samples;
    a["merge_gap_samples"] = c.activity.params.merge_gap_samples;

    auto& t = j["turns"];
    t["smoothing_N"] = c.turns.smoothing_N;
    t["min_turn_separation_samples"] = c.turns.min_turn_separation_samples;
    t["safety_margin_samples"] = c.turns.safety_margin_samples;
    t["forward_sequence"] = modality_names(c.protocol.forward);
    t["reverse_sequence"] = modality_names(c.protocol.reverse);

    auto& h = j["heel_strike"];
    h["highpass_hz"] = c.heel_strike.highpass_hz;
    h["lowpass_hz"] = c.heel_strike.lowpass_hz;
    h["filter_order"] = c.heel_strike.filter_order;
    h["max_cadence_steps_per_min"] = c.heel_strike.max_cadence_steps_per_min;
    h["min_peak_height_rel"] = c.heel_strike.min_peak_height_rel;
    h["height_percentile"] = c.heel_strike.height_percentile;
    h["expected_velocity_mps"] = c.heel_strike.expected_velocity_mps
                                     ? ordered_json(*c.heel_strike.expected_velocity_mps)
                                     : ordered_json();

    auto& e = j["emg"];
    e["bandpass_low_hz"] = c.emg.filter.bandpass_low_hz;
    e["bandpass_high_hz"] = c.emg.filter.bandpass_high_hz;
    e["bandpass_order"] = c.emg.filter.bandpass_order;
    e["notch_hz"] = c.emg.filter.notch_hz;
    e["notch_q"] = c.emg.filter.notch_q;
    e["envelope_lowpass_hz"] = c.emg.envelope_lowpass_hz;
    e["envelope_order"] = c.emg.envelope_order;
    e["profile_points"] = c.emg.profile_points;
    e["normalization"] = c.emg.normalization;

    auto& o = j["output"];
    o["dir"] = c.output.dir;
    o["plots"] = c.output.plots;
    o["format"] = c.output.format;
    return j.dump(2) + "\n";
}

}  // namespace gaitseg
