#include "gaitseg/recording.hpp"

#include "gaitseg/error.hpp"

namespace gaitseg {

const TimeSeries& Recording::kinematic(std::string_view column) const {
    if (column == "ax") return ax;
    if (column == "ay") return ay;
    if (column == "az") return az;
    if (column == "px") return px;
    if (column == "py") return py;
    if (column == "pz") return pz;
    throw InvalidParams("unknown kinematic column '" + std::string(column) + "'");
}

Recording synchronize(const Recording& native) {
    const std::size_t n = native.emg.length();
    const double fs = native.emg.sample_rate_hz();
    if (n < 2) throw SeriesTooShort(n, 2);
    auto resample = [&](const TimeSeries& s) {
        TimeSeries r = linear_interpolate(s, ResampleSpec{n});
        return TimeSeries(r.values(), fs, s.label());
    };
    Recording out;
    out.ax = resample(native.ax);
    out.ay = resample(native.ay);
    out.az = resample(native.az);
    out.px = resample(native.px);
    out.py = resample(native.py);
    out.pz = resample(native.pz);
    out.emg = native.emg;
    return out;
}

}  // namespace gaitseg
