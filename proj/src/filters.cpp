#include "gaitseg/filters.hpp"

#include "gaitseg/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gaitseg {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = std::numbers::pi;

void check_cutoff(double f, double fs, const char* what) {
    if (!(fs > 0.0) || !std::isfinite(fs))
        throw InvalidCutoff("sample rate must be positive and finite");
    if (!(f > 0.0 && f < fs / 2.0))
        throw InvalidCutoff(fmt::format("{} of {} Hz is outside (0, {}) Hz", what, f, fs / 2.0));
}

// Poles of one section before the bilinear map, in the analog domain.
struct AnalogGroup {
    enum class Shape { ConjugatePair, RealPair, Single } shape;
    cplx p1;
    cplx p2;
};

cplx bilinear(cplx s, double fs2) { return (fs2 + s) / (fs2 - s); }

double section_radius(const Biquad& s) {
    if (s.a2 == 0.0) return std::abs(s.a1);
    const cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
    const cplx r1 = (-s.a1 + disc) / 2.0;
    const cplx r2 = (-s.a1 - disc) / 2.0;
    return std::max(std::abs(r1), std::abs(r2));
}

double section_angle(const Biquad& s) {
    if (s.a2 == 0.0) return s.a1 > 0.0 ? kPi : 0.0;
    const cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
    return std::abs(std::arg((-s.a1 + disc) / 2.0));
}

std::complex<double> response_at(const BiquadCascade& c, double omega) {
    const cplx z1 = std::polar(1.0, -omega);
    const cplx z2 = z1 * z1;
    cplx h(c.overall_gain, 0.0);
    for (const auto& s : c.sections) {
        h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
    }
    return h;
}

std::vector<double> odd_extend(std::span<const double> x, std::size_t pad) {
    const std::size_t n = x.size();
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t k = pad; k >= 1; --k) ext.push_back(2.0 * x[0] - x[k]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t k = 1; k <= pad; ++k) ext.push_back(2.0 * x[n - 1] - x[n - 1 - k]);
    return ext;
}

}  // namespace

std::string to_string(FilterKind kind) {
    switch (kind) {
        case FilterKind::LowPass: return "lowpass";
        case FilterKind::HighPass: return "highpass";
        case FilterKind::BandPass: return "bandpass";
        case FilterKind::Notch: return "notch";
    }
    return "unknown";
}

FilterSpec FilterSpec::lowpass(int order, double cutoff_hz, double fs) {
    return FilterSpec{FilterKind::LowPass, order, 0.0, cutoff_hz, 0.0, fs};
}
FilterSpec FilterSpec::highpass(int order, double cutoff_hz, double fs) {
    return FilterSpec{FilterKind::HighPass, order, 0.0, cutoff_hz, 0.0, fs};
}
FilterSpec FilterSpec::bandpass(int order, double low_hz, double high_hz, double fs) {
    return FilterSpec{FilterKind::BandPass, order, 0.0, low_hz, high_hz, fs};
}
FilterSpec FilterSpec::notch(double f0_hz, double q, double fs) {
    return FilterSpec{FilterKind::Notch, 2, q, f0_hz, 0.0, fs};
}

int BiquadCascade::order() const {
    int n = 0;
    for (const auto& s : sections) n += (s.a2 == 0.0 && s.b2 == 0.0) ? 1 : 2;
    return n;
}

BiquadCascade design_butterworth(const FilterSpec& spec) {
    if (spec.kind == FilterKind::Notch)
        throw InvalidParams("design_butterworth does not design notch filters");
    if (spec.order < 1) throw InvalidParams("Butterworth order must be >= 1");
    const double fs = spec.sample_rate_hz;
    check_cutoff(spec.cutoff_hz, fs, "cutoff");
    if (spec.kind == FilterKind::BandPass) {
        check_cutoff(spec.cutoff_high_hz, fs, "upper cutoff");
        if (!(spec.cutoff_hz < spec.cutoff_high_hz))
            throw InvalidCutoff("band-pass lower cutoff must be below the upper cutoff");
    }

    const int n = spec.order;
    const double fs2 = 2.0 * fs;
    auto warp = [&](double f) { return fs2 * std::tan(kPi * f / fs); };

    // Prototype poles on the unit circle in the left half plane: the upper
    // half of each conjugate pair, plus -1 for odd orders.
    std::vector<cplx> upper;
    for (int k = 0; k < n / 2; ++k) {
        const double theta = kPi * static_cast<double>(2 * k + n + 1) / static_cast<double>(2 * n);
        cplx p = std::polar(1.0, theta);
        if (p.imag() < 0.0) p = std::conj(p);
        upper.push_back(p);
    }
    const bool has_real = (n % 2) == 1;

    std::vector<AnalogGroup> groups;
    double ref_omega = 0.0;
    switch (spec.kind) {
        case FilterKind::LowPass: {
            const double wc = warp(spec.cutoff_hz);
            for (auto p : upper) groups.push_back({AnalogGroup::Shape::ConjugatePair, p * wc, {}});
            if (has_real) groups.push_back({AnalogGroup::Shape::Single, cplx(-wc, 0.0), {}});
            ref_omega = 0.0;
            break;
        }
        case FilterKind::HighPass: {
            const double wc = warp(spec.cutoff_hz);
            for (auto p : upper) {
                cplx q = wc / p;
                if (q.imag() < 0.0) q = std::conj(q);
                groups.push_back({AnalogGroup::Shape::ConjugatePair, q, {}});
            }
            if (has_real) groups.push_back({AnalogGroup::Shape::Single, cplx(-wc, 0.0), {}});
            ref_omega = kPi;
            break;
        }
        case FilterKind::BandPass: {
            const double w1 = warp(spec.cutoff_hz);
            const double w2 = warp(spec.cutoff_high_hz);
            const double bw = w2 - w1;
            const double w0 = std::sqrt(w1 * w2);
            auto split = [&](cplx p) {
                const cplx pl = p * (bw / 2.0);
                const cplx root = std::sqrt(pl * pl - w0 * w0);
                return std::pair{pl + root, pl - root};
            };
            for (auto p : upper) {
                auto [r1, r2] = split(p);
                for (cplx r : {r1, r2}) {
                    if (r.imag() < 0.0) r = std::conj(r);
                    groups.push_back({AnalogGroup::Shape::ConjugatePair, r, {}});
                }
            }
            if (has_real) {
                const double pl = -bw / 2.0;
                const double disc = pl * pl - w0 * w0;
                if (disc < 0.0) {
                    groups.push_back(
                        {AnalogGroup::Shape::ConjugatePair, cplx(pl, std::sqrt(-disc)), {}});
                } else {
                    groups.push_back({AnalogGroup::Shape::RealPair, cplx(pl + std::sqrt(disc), 0.0),
                                      cplx(pl - std::sqrt(disc), 0.0)});
                }
            }
            ref_omega = 2.0 * std::atan(w0 / fs2);
            break;
        }
        case FilterKind::Notch: break;
    }

    BiquadCascade cascade;
    for (const auto& g : groups) {
        Biquad s;
        switch (g.shape) {
            case AnalogGroup::Shape::ConjugatePair: {
                const cplx z = bilinear(g.p1, fs2);
                s.a1 = -2.0 * z.real();
                s.a2 = std::norm(z);
                break;
            }
            case AnalogGroup::Shape::RealPair: {
                const double z1 = bilinear(g.p1, fs2).real();
                const double z2 = bilinear(g.p2, fs2).real();
                s.a1 = -(z1 + z2);
                s.a2 = z1 * z2;
                break;
            }
            case AnalogGroup::Shape::Single: {
                s.a1 = -bilinear(g.p1, fs2).real();
                s.a2 = 0.0;
                break;
            }
        }
        const bool first_order = g.shape == AnalogGroup::Shape::Single;
        switch (spec.kind) {
            case FilterKind::LowPass:  // zeros at z = -1
                s.b0 = 1.0;
                s.b1 = first_order ? 1.0 : 2.0;
                s.b2 = first_order ? 0.0 : 1.0;
                break;
            case FilterKind::HighPass:  // zeros at z = +1
                s.b0 = 1.0;
                s.b1 = first_order ? -1.0 : -2.0;
                s.b2 = first_order ? 0.0 : 1.0;
                break;
            case FilterKind::BandPass:  // one zero at +1 and one at -1
                s.b0 = 1.0;
                s.b1 = 0.0;
                s.b2 = -1.0;
                break;
            case FilterKind::Notch: break;
        }
        cascade.sections.push_back(s);
    }

    std::stable_sort(cascade.sections.begin(), cascade.sections.end(),
                     [](const Biquad& a, const Biquad& b) {
                         const double ra = section_radius(a);
                         const double rb = section_radius(b);
                         if (ra != rb) return ra < rb;
                         return section_angle(a) < section_angle(b);
                     });

    cascade.overall_gain = 1.0;
    cascade.overall_gain = 1.0 / std::abs(response_at(cascade, ref_omega));
    return cascade;
}

BiquadCascade design_notch(const FilterSpec& spec) {
    if (spec.kind != FilterKind::Notch) throw InvalidParams("design_notch requires a Notch spec");
    if (!(spec.q > 0.0) || !std::isfinite(spec.q)) throw InvalidParams("notch Q must be > 0");
    check_cutoff(spec.cutoff_hz, spec.sample_rate_hz, "notch frequency");

    const double w0 = 2.0 * kPi * spec.cutoff_hz / spec.sample_rate_hz;
    const double bw = w0 / spec.q;
    const double gain = 1.0 / (1.0 + std::tan(bw / 2.0));
    const double c = std::cos(w0);

    Biquad s;
    s.b0 = 1.0;
    s.b1 = -2.0 * c;
    s.b2 = 1.0;
    s.a1 = -2.0 * gain * c;
    s.a2 = 2.0 * gain - 1.0;
    return BiquadCascade{{s}, gain};
}

BiquadCascade design(const FilterSpec& spec) {
    return spec.kind == FilterKind::Notch ? design_notch(spec) : design_butterworth(spec);
}

std::vector<double> filt(const BiquadCascade& cascade, std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (const auto& s : cascade.sections) {
        double z1 = 0.0;
        double z2 = 0.0;
        for (double& v : y) {
            const double in = v;
            const double out = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * out + z2;
            z2 = s.b2 * in - s.a2 * out;
            v = out;
        }
    }
    for (double& v : y) v *= cascade.overall_gain;
    return y;
}

TimeSeries filt(const BiquadCascade& cascade, const TimeSeries& series) {
    return series.with_samples(filt(cascade, series.samples()));
}

std::size_t filtfilt_padlen(const BiquadCascade& cascade) {
    return 3 * (static_cast<std::size_t>(cascade.order()) + 1);
}

TimeSeries filtfilt(const BiquadCascade& cascade, const TimeSeries& series) {
    const std::size_t pad = filtfilt_padlen(cascade);
    if (series.size() <= pad) throw SeriesTooShort(series.size(), pad + 1);

    std::vector<double> y = filt(cascade, odd_extend(series.samples(), pad));
    std::reverse(y.begin(), y.end());
    y = filt(cascade, y);
    std::reverse(y.begin(), y.end());
    return series.with_samples(std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(pad),
                                                   y.end() - static_cast<std::ptrdiff_t>(pad)));
}

std::complex<double> frequency_response(const BiquadCascade& cascade, double freq_hz,
                                        double sample_rate_hz) {
    return response_at(cascade, 2.0 * kPi * freq_hz / sample_rate_hz);
}

double magnitude_db(const BiquadCascade& cascade, double freq_hz, double sample_rate_hz) {
    return 20.0 * std::log10(std::abs(frequency_response(cascade, freq_hz, sample_rate_hz)));
}

double max_pole_radius(const BiquadCascade& cascade) {
    double r = 0.0;
    for (const auto& s : cascade.sections) r = std::max(r, section_radius(s));
    return r;
}

bool is_stable(const BiquadCascade& cascade) { return max_pole_radius(cascade) < 1.0; }

std::string to_json(const BiquadCascade& cascade) {
    std::string out = fmt::format("{{\"gain\":{:.17g},\"sections\":[", cascade.overall_gain);
    for (std::size_t i = 0; i < cascade.sections.size(); ++i) {
        const auto& s = cascade.sections[i];
        out += fmt::format("{}[{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}]", i ? "," : "", s.b0, s.b1,
                           s.b2, s.a1, s.a2);
    }
    out += "]}";
    return out;
}

}  // namespace gaitseg
