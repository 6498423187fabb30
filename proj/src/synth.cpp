#include "gaitseg/synth.hpp"

#include "gaitseg/error.hpp"
#include "gaitseg/filters.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gaitseg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGravity = 9.81;
constexpr double kRampS = 0.5;           // walking onset/offset ramp
constexpr double kLateralSpeed = 0.8;    // m/s along the zig-zag axis
constexpr double kForwardSpeed = 1.0;    // m/s of course progress
constexpr double kHsJitter = 0.03;       // fraction of the step interval
constexpr double kAmplitudeSpread = 0.1; // relative impact amplitude spread
constexpr int kTremorComponents = 6;

struct BoutPlan {
    double start_s = 0.0;
    Direction direction = Direction::Forward;
    std::vector<Modality> modalities;
    std::vector<double> durations;
    std::size_t half_trial_index = 0;

    double end_s() const {
        double t = start_s;
        for (double d : durations) t += d;
        return t;
    }
};

double elevation_change(Modality m) {
    switch (m) {
        case Modality::RA: return 1.0;
        case Modality::RD: return -1.0;
        case Modality::SA: return 2.0;
        case Modality::SD: return -2.0;
        case Modality::LGW: return 0.0;
    }
    return 0.0;
}

// Stride phase c(t) of a bout: piecewise linear, slope cadence/60 per segment.
struct PhaseClock {
    std::vector<double> seg_start;
    std::vector<double> seg_end;
    std::vector<double> rate;
    std::vector<double> phase0;

    PhaseClock(const BoutPlan& plan, const SynthParams& p) {
        double t = plan.start_s;
        double c = 0.0;
        for (std::size_t j = 0; j < plan.durations.size(); ++j) {
            seg_start.push_back(t);
            seg_end.push_back(t + plan.durations[j]);
            rate.push_back(p.cadence(plan.modalities[j]) / 60.0);
            phase0.push_back(c);
            c += rate.back() * plan.durations[j];
            t += plan.durations[j];
        }
    }

    double phase(double t) const {
        std::size_t j = 0;
        while (j + 1 < seg_start.size() && t >= seg_end[j]) ++j;
        return phase0[j] + rate[j] * (t - seg_start[j]);
    }
};

double walk_window(double t, double start, double end) {
    if (t < start || t > end) return 0.0;
    const double in = std::min(t - start, end - t);
    if (in >= kRampS) return 1.0;
    return 0.5 - 0.5 * std::cos(kPi * in / kRampS);
}

struct Waypoints {
    std::vector<double> x, y, z;
};

// Course geometry traced by a forward traversal; the reverse traversal walks
// the same points backwards.
Waypoints course_waypoints(const std::vector<Modality>& forward,
                           const std::vector<double>& forward_durations) {
    Waypoints w;
    w.x.push_back(0.0);
    w.y.push_back(0.0);
    w.z.push_back(0.0);
    for (std::size_t j = 0; j < forward.size(); ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        w.x.push_back(w.x.back() + kForwardSpeed * forward_durations[j]);
        w.y.push_back(w.y.back() + sign * kLateralSpeed * forward_durations[j]);
        w.z.push_back(w.z.back() + elevation_change(forward[j]));
    }
    return w;
}

void impact(std::vector<double>& fine, double fs, double t0, double amplitude, double freq,
            double tau) {
    const auto n = static_cast<std::ptrdiff_t>(fine.size());
    auto i = static_cast<std::ptrdiff_t>(std::ceil(t0 * fs));
    const auto last = static_cast<std::ptrdiff_t>(std::floor((t0 + 8.0 * tau) * fs));
    for (; i <= last && i < n; ++i) {
        if (i < 0) continue;
        const double d = static_cast<double>(i) / fs - t0;
        fine[static_cast<std::size_t>(i)] +=
            amplitude * std::exp(-d / tau) * std::cos(2.0 * kPi * freq * d);
    }
}

// Each output sample averages the fine signal over one output period centred
// on its timestamp.
std::vector<double> box_sample(const std::vector<double>& fine, double fs_fine, double fs_out,
                               std::size_t n_out) {
    std::vector<double> prefix(fine.size() + 1, 0.0);
    for (std::size_t i = 0; i < fine.size(); ++i) prefix[i + 1] = prefix[i] + fine[i];
    const double half = 0.5 / fs_out;
    const auto n_fine = static_cast<long long>(fine.size());
    std::vector<double> out(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        const double t = static_cast<double>(k) / fs_out;
        long long lo = std::llround((t - half) * fs_fine);
        long long hi = std::llround((t + half) * fs_fine);
        lo = std::clamp(lo, 0LL, n_fine - 1);
        hi = std::clamp(hi, lo + 1, n_fine);
        out[k] = (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) /
                 static_cast<double>(hi - lo);
    }
    return out;
}

SynthOutput render(const SynthParams& p, const std::vector<BoutPlan>& plans, double total_s,
                   const std::vector<Modality>& course_forward,
                   const std::vector<double>& course_durations) {
    PortableRng rng(p.seed);

    const auto kin_periods = std::llround(total_s * p.fs_kin_hz);
    const double t_end = static_cast<double>(kin_periods) / p.fs_kin_hz;
    const auto n_kin = static_cast<std::size_t>(kin_periods + 1);
    const auto n_emg = static_cast<std::size_t>(std::llround(t_end * p.fs_emg_hz) + 1);
    const double fs = p.fs_emg_hz;
    const double tau = p.hs_decay_s / std::log(100.0);

    GroundTruth truth;
    truth.emg_burst_phases = p.bursts;

    std::vector<double> ax(n_emg, 0.0), ay(n_emg, 0.0), az(n_emg, kGravity);
    std::vector<std::vector<double>> bout_hs;

    for (const auto& plan : plans) {
        const PhaseClock clock(plan, p);
        const double start = plan.start_s;
        const double end = plan.end_s();

        truth.half_trials.push_back({start, end, plan.direction});
        truth.modality_labels.push_back(plan.modalities);
        for (std::size_t j = 0; j < plan.modalities.size(); ++j) {
            truth.segments.push_back(
                {clock.seg_start[j], clock.seg_end[j], plan.modalities[j], plan.half_trial_index});
            if (j > 0) truth.turn_times_s.push_back(clock.seg_start[j]);
        }

        std::vector<double> hs;
        std::vector<double> amps;
        for (std::size_t j = 0; j < clock.seg_start.size(); ++j) {
            const double r = clock.rate[j];
            double m = std::ceil(clock.phase0[j] - 0.5);
            for (;; m += 1.0) {
                const double t = clock.seg_start[j] + (m + 0.5 - clock.phase0[j]) / r;
                if (t >= clock.seg_end[j]) break;
                const double h = t + rng.uniform(-kHsJitter, kHsJitter) / r;
                const double a =
                    p.hs_amplitude_mps2 * (1.0 + rng.uniform(-kAmplitudeSpread, kAmplitudeSpread));
                if (h <= start || h >= end) continue;
                hs.push_back(h);
                amps.push_back(a);
            }
        }

        for (std::size_t k = 0; k < hs.size(); ++k) {
            impact(az, fs, hs[k], amps[k], p.hs_frequency_hz, tau);
            if (k + 1 < hs.size()) {
                const double c = p.contralateral_amplitude_mps2 *
                                  (1.0 + rng.uniform(-kAmplitudeSpread, kAmplitudeSpread));
                impact(az, fs, 0.5 * (hs[k] + hs[k + 1]), c, p.hs_frequency_hz, tau);
            }
        }

        const auto i0 = static_cast<std::size_t>(std::max(0.0, std::ceil(start * fs)));
        const auto i1 = std::min(n_emg, static_cast<std::size_t>(std::floor(end * fs)) + 1);
        const double g = p.gait_accel_amplitude_mps2;
        for (std::size_t i = i0; i < i1; ++i) {
            const double t = static_cast<double>(i) / fs;
            const double w = walk_window(t, start, end);
            const double c = clock.phase(t);
            ax[i] += w * g * (std::sin(2.0 * kPi * c) + 0.4 * std::sin(4.0 * kPi * c + 0.5));
            ay[i] += w * 0.5 * g * std::sin(kPi * c);
            az[i] += w * 2.0 * std::sin(2.0 * kPi * c + 1.0);
        }

        truth.hs_times_s.insert(truth.hs_times_s.end(), hs.begin(), hs.end());
        bout_hs.push_back(std::move(hs));
    }

    if (p.tremor) {
        const auto& tr = *p.tremor;
        const double a = tr.amplitude_mps2 / std::sqrt(kTremorComponents / 2.0);
        for (int c = 0; c < kTremorComponents; ++c) {
            const double f = rng.uniform(tr.low_hz, tr.high_hz);
            const double ph_z = rng.uniform(0.0, 2.0 * kPi);
            const double ph_x = rng.uniform(0.0, 2.0 * kPi);
            for (std::size_t i = 0; i < n_emg; ++i) {
                const double t = static_cast<double>(i) / fs;
                az[i] += a * std::sin(2.0 * kPi * f * t + ph_z);
                ax[i] += a * std::sin(2.0 * kPi * f * t + ph_x);
            }
        }
    }

    auto add_noise = [&](std::vector<double> v, double sd) {
        for (double& x : v) x += sd * rng.normal();
        return v;
    };
    std::vector<double> kax = add_noise(box_sample(ax, fs, p.fs_kin_hz, n_kin), p.noise_std);
    std::vector<double> kay = add_noise(box_sample(ay, fs, p.fs_kin_hz, n_kin), p.noise_std);
    std::vector<double> kaz = add_noise(box_sample(az, fs, p.fs_kin_hz, n_kin), p.noise_std);

    // Positions: hold the last waypoint while resting, interpolate linearly
    // between waypoints while walking.
    const Waypoints course = course_waypoints(course_forward, course_durations);
    std::vector<double> kpx(n_kin), kpy(n_kin), kpz(n_kin);
    for (std::size_t k = 0; k < n_kin; ++k) {
        const double t = static_cast<double>(k) / p.fs_kin_hz;
        std::size_t at = 0;  // waypoint index held at rest
        double x = course.x[0], y = course.y[0], z = course.z[0];
        for (const auto& plan : plans) {
            const std::size_t nseg = plan.durations.size();
            auto wp = [&](std::size_t j) {
                return plan.direction == Direction::Forward ? j : nseg - j;
            };
            if (t < plan.start_s) break;
            const double end = plan.end_s();
            if (t >= end) {
                at = wp(nseg);
                x = course.x[at];
                y = course.y[at];
                z = course.z[at];
                continue;
            }
            double s = plan.start_s;
            for (std::size_t j = 0; j < nseg; ++j) {
                const double e = s + plan.durations[j];
                if (t < e) {
                    const double f = (t - s) / plan.durations[j];
                    const std::size_t a = wp(j), b = wp(j + 1);
                    x = course.x[a] + f * (course.x[b] - course.x[a]);
                    y = course.y[a] + f * (course.y[b] - course.y[a]);
                    z = course.z[a] + f * (course.z[b] - course.z[a]);
                    break;
                }
                s = e;
            }
            break;
        }
        kpx[k] = x;
        kpy[k] = y;
        kpz[k] = z;
    }
    kpx = add_noise(std::move(kpx), p.position_noise_std);
    kpy = add_noise(std::move(kpy), p.position_noise_std);
    kpz = add_noise(std::move(kpz), p.position_noise_std);

    SynthOutput out;
    out.truth = std::move(truth);
    Recording& rec = out.recording;
    rec.ax = TimeSeries(std::move(kax), p.fs_kin_hz, "ax");
    rec.ay = TimeSeries(std::move(kay), p.fs_kin_hz, "ay");
    rec.az = TimeSeries(std::move(kaz), p.fs_kin_hz, "az");
    rec.px = TimeSeries(std::move(kpx), p.fs_kin_hz, "px");
    rec.py = TimeSeries(std::move(kpy), p.fs_kin_hz, "py");
    rec.pz = TimeSeries(std::move(kpz), p.fs_kin_hz, "pz");

    // EMG: band-limited carrier, amplitude-modulated by the burst windows of
    // each cycle, plus powerline interference.
    const auto carrier_filter = design_butterworth(FilterSpec::bandpass(2, 20.0, 150.0, fs));
    for (const auto& burst : p.bursts) {
        std::vector<double> white(n_emg);
        for (double& v : white) v = rng.normal();
        std::vector<double> carrier = filt(carrier_filter, std::span<const double>(white));
        double ss = 0.0;
        for (double v : carrier) ss += v * v;
        const double rms = std::sqrt(ss / static_cast<double>(n_emg));
        const double phase_pl = rng.uniform(0.0, 2.0 * kPi);

        std::vector<double> mod(n_emg, p.emg_baseline_mv);
        const double width = burst.end - burst.start;
        for (const auto& hs : bout_hs) {
            if (hs.size() < 2) continue;
            const auto i0 = static_cast<std::size_t>(std::ceil(hs.front() * fs));
            const auto i1 = std::min(n_emg, static_cast<std::size_t>(std::ceil(hs.back() * fs)));
            std::size_t k = 0;
            for (std::size_t i = i0; i < i1; ++i) {
                const double t = static_cast<double>(i) / fs;
                while (k + 2 < hs.size() && t >= hs[k + 1]) ++k;
                const double cycle_phase =
                    static_cast<double>(k) + (t - hs[k]) / (hs[k + 1] - hs[k]);
                const double u = cycle_phase - burst.start;
                const double r = u - std::floor(u);
                if (r < width)
                    mod[i] += p.emg_burst_amplitude_mv * (0.5 - 0.5 * std::cos(2.0 * kPi * r / width));
            }
        }

        std::vector<double> emg(n_emg);
        for (std::size_t i = 0; i < n_emg; ++i) {
            const double t = static_cast<double>(i) / fs;
            emg[i] = mod[i] * carrier[i] / rms +
                     p.emg_powerline_mv * std::sin(2.0 * kPi * p.powerline_hz * t + phase_pl);
        }
        rec.emg.add(burst.muscle, TimeSeries(std::move(emg), fs, burst.muscle));
    }
    return out;
}

}  // namespace

double PortableRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double PortableRng::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * kPi * u2);
}

bool BurstPhase::contains(double p) const noexcept {
    const double u = p - start;
    const double r = u - std::floor(u);
    return r <= end - start;
}

std::vector<BurstPhase> default_burst_phases() {
    return {{"TA", 0.90, 1.10},  {"mGAST", 0.30, 0.50}, {"VL", 0.00, 0.20},
            {"RF", 0.55, 0.70},  {"SEM", 0.80, 1.00},   {"BFL", 0.85, 1.05}};
}

void SynthParams::validate() const {
    if (!(fs_emg_hz > 2.0 * 150.0)) throw InvalidParams("fs_emg_hz must exceed 300 Hz");
    if (!(fs_kin_hz > 0.0) || fs_kin_hz > fs_emg_hz)
        throw InvalidParams("fs_kin_hz must be positive and not above fs_emg_hz");
    for (const auto& [m, c] : cadence_steps_per_min)
        if (!(c > 0.0)) throw InvalidParams("cadence must be positive for " + to_string(m));
    if (!(hs_decay_s > 0.0) || !(hs_frequency_hz > 0.0))
        throw InvalidParams("heel-strike transient parameters must be positive");
    if (!(rest_duration_s > 0.0)) throw InvalidParams("rest_duration_s must be positive");
    for (double d : modality_durations_s)
        if (!(d > 0.0)) throw InvalidParams("modality durations must be positive");
    if (n_half_trials < 1) throw InvalidParams("n_half_trials must be >= 1");
    if (noise_std < 0.0 || position_noise_std < 0.0) throw InvalidParams("noise must be >= 0");
    if (!(powerline_hz > 0.0 && powerline_hz < fs_emg_hz / 2.0))
        throw InvalidParams("powerline_hz outside (0, fs_emg/2)");
    if (tremor && !(tremor->low_hz > 0.0 && tremor->low_hz <= tremor->high_hz))
        throw InvalidParams("tremor band must satisfy 0 < low <= high");
    for (const auto& b : bursts)
        if (!(b.end > b.start && b.end - b.start < 1.0))
            throw InvalidParams("burst window for " + b.muscle + " must have width in (0, 1)");
}

double SynthParams::cadence(Modality m) const {
    auto it = cadence_steps_per_min.find(m);
    if (it == cadence_steps_per_min.end())
        throw InvalidParams("no cadence configured for " + to_string(m));
    return it->second;
}

SynthParams parkinsonian_params(std::uint64_t seed) {
    SynthParams p;
    p.seed = seed;
    for (auto& [m, c] : p.cadence_steps_per_min) c = 50.0;
    p.hs_amplitude_mps2 = 15.0;
    p.tremor = TremorParams{4.0, 6.0, 2.0};
    return p;
}

SynthOutput generate_trial(const SynthParams& params) {
    params.validate();
    const CourseProtocol protocol;
    const std::vector<double> durations(params.modality_durations_s.begin(),
                                        params.modality_durations_s.end());
    std::vector<BoutPlan> plans;
    double t = params.rest_duration_s;
    for (std::size_t k = 0; k < params.n_half_trials; ++k) {
        BoutPlan plan;
        plan.start_s = t;
        plan.direction = k % 2 == 0 ? Direction::Forward : Direction::Reverse;
        plan.modalities = protocol.sequence(plan.direction);
        plan.durations = durations;
        plan.half_trial_index = k;
        t = plan.end_s() + params.rest_duration_s;
        plans.push_back(std::move(plan));
    }
    return render(params, plans, t, protocol.forward, durations);
}

SynthOutput generate_segment(const SynthParams& params, Modality modality, double walk_s,
                             double stand_s) {
    params.validate();
    if (!(walk_s > 0.0) || !(stand_s > 0.0))
        throw InvalidParams("walk and stand durations must be positive");
    BoutPlan plan;
    plan.start_s = stand_s;
    plan.modalities = {modality};
    plan.durations = {walk_s};
    return render(params, {plan}, walk_s + 2.0 * stand_s, plan.modalities, plan.durations);
}

std::string truth_to_json(const GroundTruth& truth) {
    nlohmann::ordered_json j;
    j["hs_times_s"] = truth.hs_times_s;
    j["turn_times_s"] = truth.turn_times_s;
    j["half_trials"] = nlohmann::ordered_json::array();
    for (const auto& h : truth.half_trials) {
        nlohmann::ordered_json e;
        e["start_s"] = h.start_s;
        e["end_s"] = h.end_s;
        e["direction"] = to_string(h.direction);
        j["half_trials"].push_back(e);
    }
    j["modalities"] = nlohmann::ordered_json::array();
    for (const auto& labels : truth.modality_labels) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (auto m : labels) row.push_back(to_string(m));
        j["modalities"].push_back(row);
    }
    j["emg_burst_phases"] = nlohmann::ordered_json::array();
    for (const auto& b : truth.emg_burst_phases)
        j["emg_burst_phases"].push_back({{"muscle", b.muscle}, {"start", b.start}, {"end", b.end}});
    return j.dump(2) + "\n";
}

GroundTruth truth_from_json(const std::string& text) {
    GroundTruth t;
    try {
        const auto j = nlohmann::json::parse(text);
        t.hs_times_s = j.at("hs_times_s").get<std::vector<double>>();
        t.turn_times_s = j.at("turn_times_s").get<std::vector<double>>();
        for (const auto& h : j.at("half_trials"))
            t.half_trials.push_back({h.at("start_s").get<double>(), h.at("end_s").get<double>(),
                                     h.at("direction").get<std::string>() == "forward"
                                         ? Direction::Forward
                                         : Direction::Reverse});
        for (const auto& row : j.at("modalities")) {
            std::vector<Modality> labels;
            for (const auto& m : row) {
                auto parsed = parse_modality(m.get<std::string>());
                if (!parsed) throw ParseError(0, 0, "unknown modality " + m.get<std::string>());
                labels.push_back(*parsed);
            }
            t.modality_labels.push_back(std::move(labels));
        }
        if (j.contains("emg_burst_phases"))
            for (const auto& b : j.at("emg_burst_phases"))
                t.emg_burst_phases.push_back({b.at("muscle").get<std::string>(),
                                              b.at("start").get<double>(), b.at("end").get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, 0, std::string("ground-truth JSON: ") + e.what());
    }
    return t;
}

}  // namespace gaitseg
