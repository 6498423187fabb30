#include "gaitseg/error.hpp"
#include "gaitseg/filters.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <complex>
#include <numbers>

using namespace gaitseg;
using oracle::Vec;

namespace {

constexpr double kPi = std::numbers::pi;

// Effective (b, a) of a single-section cascade with the gain folded in.
struct BA {
    double b0, b1, b2, a1, a2;
};
BA folded(const BiquadCascade& c) {
    REQUIRE(c.sections.size() == 1);
    const auto& s = c.sections[0];
    const double g = c.overall_gain;
    return {g * s.b0, g * s.b1, g * s.b2, s.a1, s.a2};
}

double db(double mag) { return 20.0 * std::log10(mag); }

Vec odd_extend(const Vec& x, std::size_t pad) {
    Vec out;
    for (std::size_t k = pad; k >= 1; --k) out.push_back(2.0 * x.front() - x[k]);
    out.insert(out.end(), x.begin(), x.end());
    for (std::size_t k = 1; k <= pad; ++k) out.push_back(2.0 * x.back() - x[x.size() - 1 - k]);
    return out;
}

double band_power(const Vec& x, double fs, double f_lo, double f_hi) {
    const std::size_t n = x.size();
    double p = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double f = static_cast<double>(k) * fs / static_cast<double>(n);
        if (f < f_lo || f > f_hi) continue;
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            acc += x[i] * std::polar(1.0, -2.0 * kPi * static_cast<double>(k * i) /
                                              static_cast<double>(n));
        p += std::norm(acc);
    }
    return p;
}

}  // namespace

TEST_CASE("order-1 low-pass equals the pre-warped bilinear transform of wc/(s+wc)") {
    const double fs = 1000.0, fc = 100.0;
    // With K = tan(pi fc / fs): H(z) = K/(1+K) (1 + z^-1) / (1 + (K-1)/(K+1) z^-1)
    const double K = std::tan(kPi * fc / fs);
    const BA c = folded(design_butterworth(FilterSpec::lowpass(1, fc, fs)));
    CHECK(std::abs(c.b0 - K / (1 + K)) < 1e-9);
    CHECK(std::abs(c.b1 - K / (1 + K)) < 1e-9);
    CHECK(std::abs(c.b2) < 1e-12);
    CHECK(std::abs(c.a1 - (K - 1) / (K + 1)) < 1e-9);
    CHECK(std::abs(c.a2) < 1e-12);
    // scipy.signal.butter(1, 100, fs=1000)
    CHECK(c.b0 == doctest::Approx(0.24523727525278557).epsilon(1e-12));
    CHECK(c.a1 == doctest::Approx(-0.5095254494944288).epsilon(1e-12));
}

TEST_CASE("second-order designs match reference coefficients") {
    // scipy.signal.butter(2, 100, fs=1000), butter(2, 9, 'highpass', fs=1000),
    // iirnotch(60, 30, 1000)
    struct Case {
        FilterSpec spec;
        BA want;
    };
    const Case cases[] = {
        {FilterSpec::lowpass(2, 100, 1000),
         {0.0674552738890719, 0.1349105477781438, 0.0674552738890719, -1.1429805025399011,
          0.41280159809618877}},
        {FilterSpec::highpass(2, 9, 1000),
         {0.9608026442323344, -1.9216052884646688, 0.9608026442323344, -1.9200682651553282,
          0.923142311774009}},
        {FilterSpec::notch(60, 30, 1000),
         {0.9937559649536571, -1.8479418578501994, 0.9937559649536571, -1.8479418578501994,
          0.9875119299073143}},
    };
    for (const auto& c : cases) {
        const BA got = folded(design(c.spec));
        CHECK(std::abs(got.b0 - c.want.b0) < 1e-12);
        CHECK(std::abs(got.b1 - c.want.b1) < 1e-12);
        CHECK(std::abs(got.b2 - c.want.b2) < 1e-12);
        CHECK(std::abs(got.a1 - c.want.a1) < 1e-12);
        CHECK(std::abs(got.a2 - c.want.a2) < 1e-12);
    }
}

TEST_CASE("high-order magnitude responses match reference values") {
    const std::vector<double> freqs{1, 5, 6, 9, 10, 20, 60, 100, 150, 300};
    struct Case {
        FilterSpec spec;
        std::vector<double> mag;
    };
    // scipy.signal.sosfreqz of butter(4, [10, 150], 'bandpass'), butter(7, 9,
    // 'highpass') and butter(7, 6) at fs = 1000.
    const Case cases[] = {
        {FilterSpec::bandpass(4, 10, 150, 1000),
         {7.7609277202052486e-05, 5.1435851357861932e-02, 1.0915285500581648e-01,
          5.2948006756820010e-01, 7.0710678118656323e-01, 9.9966756321807371e-01,
          9.9999689516136792e-01, 9.9395231228778547e-01, 7.0710678118654735e-01,
          1.5059573463093768e-02}},
        {FilterSpec::highpass(7, 9, 1000),
         {2.0869025547802254e-07, 1.6310770282896958e-02, 5.8367349677497390e-02,
          7.0710678118651860e-01, 9.0219506589085452e-01, 9.9999312056539502e-01,
          9.9999999999876432e-01, 9.9999999999999900e-01, 9.9999999999999989e-01,
          9.9999999999999989e-01}},
        {FilterSpec::lowpass(7, 6, 1000),
         {9.9999999999355538e-01, 9.6321096803249884e-01, 7.0710678118656001e-01,
          5.8367349677493859e-02, 2.7941445135536397e-02, 2.1687255872863295e-04,
          9.2056301575379086e-08, 2.2132764960777467e-09, 9.4908864251996982e-11,
          9.0426396975946013e-14}},
    };
    for (const auto& c : cases) {
        const auto cascade = design(c.spec);
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            const double got = std::abs(frequency_response(cascade, freqs[i], 1000.0));
            CHECK(std::abs(got - c.mag[i]) <= 1e-9 * std::max(1.0, c.mag[i]) + 1e-6 * c.mag[i]);
            CHECK(oracle::magnitude(cascade, freqs[i], 1000.0) ==
                  doctest::Approx(got).epsilon(1e-9));
        }
    }
}

TEST_CASE("band-pass of prototype order n realizes 2n poles") {
    CHECK(design_butterworth(FilterSpec::bandpass(4, 10, 150, 1000)).order() == 8);
    CHECK(design_butterworth(FilterSpec::lowpass(7, 6, 1000)).order() == 7);
    CHECK(design_butterworth(FilterSpec::highpass(3, 20, 1000)).order() == 3);
}

TEST_CASE("Butterworth cutoffs sit at -3.01 dB") {
    const auto bp = design(FilterSpec::bandpass(4, 10, 150, 1000));
    CHECK(std::abs(magnitude_db(bp, 10, 1000) + 3.0103) < 0.01);
    CHECK(std::abs(magnitude_db(bp, 150, 1000) + 3.0103) < 0.01);
    oracle::Gen g(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int order = static_cast<int>(g.index(1, 8));
        const double fs = g.uniform(100, 5000);
        const double fc = g.uniform(0.01, 0.45) * fs;
        CHECK(std::abs(magnitude_db(design(FilterSpec::lowpass(order, fc, fs)), fc, fs) + 3.0103) < 1e-6);
        CHECK(std::abs(magnitude_db(design(FilterSpec::highpass(order, fc, fs)), fc, fs) + 3.0103) < 1e-6);
    }
}

TEST_CASE("low-pass designs: unity DC gain and monotone magnitude") {
    oracle::Gen g(22);
    for (int trial = 0; trial < 60; ++trial) {
        const int order = static_cast<int>(g.index(1, 8));
        const double fs = 1000.0;
        const double fc = g.uniform(1, 450);
        const auto lp = design(FilterSpec::lowpass(order, fc, fs));
        CHECK(std::abs(std::abs(frequency_response(lp, 0.0, fs)) - 1.0) < 1e-9);
        double prev = INFINITY;
        for (int k = 0; k <= 1024; ++k) {
            const double m = std::abs(frequency_response(lp, 0.5 * fs * k / 1024.0, fs));
            CHECK(m <= prev + 1e-12);
            prev = m;
        }
    }
}

TEST_CASE("every design over orders 1-8 and swept cutoffs is stable") {
    const double fs = 1000.0;
    for (int order = 1; order <= 8; ++order) {
        for (int k = 0; k < 50; ++k) {
            const double fc = (0.001 + (0.499 - 0.001) * k / 49.0) * fs;
            const double f = std::clamp(fc, 0.001 * fs, 0.4989 * fs);
            CHECK(is_stable(design(FilterSpec::lowpass(order, f, fs))));
            CHECK(is_stable(design(FilterSpec::highpass(order, f, fs))));
            if (f * 1.05 < 0.499 * fs)
                CHECK(is_stable(design(FilterSpec::bandpass(order, f, f * 1.05, fs))));
        }
    }
}

TEST_CASE("invalid cutoffs and parameters") {
    CHECK_THROWS_AS(design(FilterSpec::lowpass(2, 500, 1000)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::lowpass(2, 0, 1000)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::highpass(2, -3, 1000)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::bandpass(2, 150, 10, 1000)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::bandpass(2, 10, 600, 1000)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::notch(60, 30, 100)), InvalidCutoff);
    CHECK_THROWS_AS(design(FilterSpec::notch(60, 0, 1000)), InvalidParams);
    CHECK_THROWS_AS(design(FilterSpec::lowpass(0, 10, 1000)), InvalidParams);
}

TEST_CASE("notch response") {
    const auto n = design(FilterSpec::notch(60, 30, 1000));
    CHECK(n.sections.size() == 1);
    CHECK(std::abs(frequency_response(n, 60, 1000)) < 1e-12);
    CHECK(magnitude_db(n, 60.0, 1000) <= -30.0);
    CHECK(std::abs(magnitude_db(n, 0, 1000)) < 0.01);
    CHECK(std::abs(magnitude_db(n, 500, 1000)) < 0.01);
    // -3 dB bandwidth f0/Q = 2 Hz
    CHECK(std::abs(magnitude_db(n, 59.0, 1000) + 3.0) < 0.1);
    CHECK(std::abs(magnitude_db(n, 61.0, 1000) + 3.0) < 0.1);

    const Vec tone = oracle::sine(5000, 60, 1000);
    const Vec y = filt(n, std::span<const double>(tone));
    CHECK(oracle::rms(y, 500) < 0.03 * oracle::rms(tone, 500));
}

TEST_CASE("filt: identity, impulse oracle, linearity") {
    oracle::Gen g(23);
    const Vec x = g.vec(300);
    CHECK(filt(BiquadCascade::identity(), std::span<const double>(x)) == x);

    Vec impulse(400, 0.0);
    impulse[0] = 1.0;
    for (const auto& spec : {FilterSpec::lowpass(3, 40, 1000), FilterSpec::highpass(7, 9, 1000),
                             FilterSpec::bandpass(4, 10, 150, 1000), FilterSpec::notch(60, 30, 1000)}) {
        const auto c = design(spec);
        CHECK(oracle::max_abs_diff(filt(c, std::span<const double>(impulse)),
                                   oracle::difference_equation(c, impulse)) < 1e-12);
        const Vec a = g.vec(200), b = g.vec(200);
        const double p = g.uniform(-3, 3), q = g.uniform(-3, 3);
        Vec mix(200);
        for (std::size_t i = 0; i < 200; ++i) mix[i] = p * a[i] + q * b[i];
        const Vec fa = filt(c, std::span<const double>(a)), fb = filt(c, std::span<const double>(b));
        const Vec fm = filt(c, std::span<const double>(mix));
        for (std::size_t i = 0; i < 200; ++i) CHECK(std::abs(fm[i] - (p * fa[i] + q * fb[i])) < 1e-9);
    }
}

TEST_CASE("band-pass suppresses white noise outside the band by 20 dB") {
    oracle::Gen g(24);
    Vec x(2048);
    for (double& v : x) v = g.normal();
    const auto bp = design(FilterSpec::bandpass(4, 10, 150, 1000));
    const Vec y = filt(bp, std::span<const double>(x));
    // skip the start-up transient in the comparison
    const Vec xs(x.begin() + 1024, x.end()), ys(y.begin() + 1024, y.end());
    CHECK(db(std::sqrt(band_power(ys, 1000, 0, 5) / band_power(xs, 1000, 0, 5))) <= -20.0);
    CHECK(db(std::sqrt(band_power(ys, 1000, 300, 500) / band_power(xs, 1000, 300, 500))) <= -20.0);
}

TEST_CASE("filtfilt: identity, padding precondition, compositional oracle") {
    oracle::Gen g(25);
    const TimeSeries x(g.vec(100), 1000.0);
    CHECK(filtfilt(BiquadCascade::identity(), x).values() == x.values());

    const auto bp = design(FilterSpec::bandpass(4, 10, 150, 1000));
    const std::size_t pad = filtfilt_padlen(bp);
    CHECK(pad == 27);
    CHECK(filtfilt_padlen(design(FilterSpec::highpass(7, 9, 1000))) == 24);
    CHECK(filtfilt_padlen(design(FilterSpec::notch(60, 30, 1000))) == 9);
    CHECK_THROWS_AS(filtfilt(bp, TimeSeries(g.vec(pad), 1000.0)), SeriesTooShort);
    CHECK_NOTHROW(filtfilt(bp, TimeSeries(g.vec(pad + 1), 1000.0)));

    for (const auto& spec : {FilterSpec::lowpass(2, 50, 1000), FilterSpec::highpass(7, 9, 1000),
                             FilterSpec::bandpass(4, 10, 150, 1000)}) {
        const auto c = design(spec);
        const std::size_t p = filtfilt_padlen(c);
        const Vec v = g.vec(g.index(p + 1, 400));
        Vec y = filt(c, std::span<const double>(odd_extend(v, p)));
        std::reverse(y.begin(), y.end());
        y = filt(c, std::span<const double>(y));
        std::reverse(y.begin(), y.end());
        const Vec want(y.begin() + static_cast<long>(p), y.end() - static_cast<long>(p));
        CHECK(filtfilt(c, TimeSeries(v, 1000.0)).values() == want);
    }
}

TEST_CASE("filtfilt has zero lag for in-band sinusoids") {
    const auto bp = design(FilterSpec::bandpass(4, 10, 150, 1000));
    for (double f : {20.0, 50.0, 100.0}) {
        const Vec x = oracle::sine(2000, f, 1000);
        const Vec y = filtfilt(bp, TimeSeries(x, 1000.0)).values();
        const Vec xi(x.begin() + 500, x.end() - 500), yi(y.begin() + 500, y.end() - 500);
        CHECK(oracle::xcorr_peak_lag(xi, yi, 20) == 0);
    }
}

TEST_CASE("filtfilt commutes with time reversal away from the edges") {
    // The zero-state forward pass and backward pass see different edge
    // conditions, so the identity holds to rounding only where the start-up
    // transients of the padded passes have decayed.
    oracle::Gen g(26);
    for (const auto& spec : {FilterSpec::lowpass(2, 50, 1000), FilterSpec::bandpass(4, 10, 150, 1000)}) {
        const auto c = design(spec);
        const Vec x = g.vec(8000);
        Vec xr(x.rbegin(), x.rend());
        Vec a = filtfilt(c, TimeSeries(x, 1000.0)).values();
        const Vec b = filtfilt(c, TimeSeries(xr, 1000.0)).values();
        std::reverse(a.begin(), a.end());
        double worst = 0.0;
        for (std::size_t i = 2500; i + 2500 < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("cascade JSON has 17 significant digits") {
    const auto c = design(FilterSpec::lowpass(1, 100, 1000));
    const std::string j = to_json(c);
    CHECK(j.find("\"gain\":") != std::string::npos);
    CHECK(j.find("\"sections\":[[") != std::string::npos);
}
