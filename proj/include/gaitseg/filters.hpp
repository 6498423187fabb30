#pragma once

#include "gaitseg/signal_core.hpp"

#include <complex>
#include <string>
#include <vector>

namespace gaitseg {

enum class FilterKind { LowPass, HighPass, BandPass, Notch };

std::string to_string(FilterKind kind);

struct FilterSpec {
    FilterKind kind = FilterKind::LowPass;
    int order = 1;             ///< Butterworth prototype order (ignored for Notch)
    double q = 30.0;           ///< Notch quality factor (ignored otherwise)
    double cutoff_hz = 0.0;    ///< Low/High/Notch frequency, or lower band edge
    double cutoff_high_hz = 0.0;  ///< upper band edge, BandPass only
    double sample_rate_hz = 1.0;

    static FilterSpec lowpass(int order, double cutoff_hz, double fs);
    static FilterSpec highpass(int order, double cutoff_hz, double fs);
    static FilterSpec bandpass(int order, double low_hz, double high_hz, double fs);
    static FilterSpec notch(double f0_hz, double q, double fs);
};

/// One second-order section, a0 == 1:
///   y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2]
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
};

/// A designed IIR filter: sections applied in order, output scaled by
/// overall_gain.
struct BiquadCascade {
    std::vector<Biquad> sections;
    double overall_gain = 1.0;

    static BiquadCascade identity() { return BiquadCascade{{Biquad{}}, 1.0}; }
    /// Number of poles actually realized (first-order sections count once).
    int order() const;
};

/// Analog Butterworth prototype, pre-warped and mapped with the bilinear
/// transform, realized as second-order sections sorted by pole radius.
/// A BandPass of prototype order n yields a digital filter of order 2n.
BiquadCascade design_butterworth(const FilterSpec& spec);

/// Single-biquad notch with zeros on the unit circle at +-f0 and a -3 dB
/// bandwidth of f0/Q. Unity gain at DC and Nyquist.
BiquadCascade design_notch(const FilterSpec& spec);

/// Dispatches on spec.kind.
BiquadCascade design(const FilterSpec& spec);

/// Causal application, zero initial state (transposed direct form II).
TimeSeries filt(const BiquadCascade& cascade, const TimeSeries& series);
std::vector<double> filt(const BiquadCascade& cascade, std::span<const double> x);

/// Padding length used by filtfilt on each side: 3 * (filter order + 1).
std::size_t filtfilt_padlen(const BiquadCascade& cascade);

/// Zero-phase forward-backward filtering. The input is extended at each end
/// by an odd reflection about the endpoint value, filtered forward, reversed,
/// filtered again, reversed, and the padding is stripped.
TimeSeries filtfilt(const BiquadCascade& cascade, const TimeSeries& series);

std::complex<double> frequency_response(const BiquadCascade& cascade, double freq_hz,
                                        double sample_rate_hz);
double magnitude_db(const BiquadCascade& cascade, double freq_hz, double sample_rate_hz);

/// True iff every section has both poles strictly inside the unit circle.
bool is_stable(const BiquadCascade& cascade);
/// Largest pole radius over all sections.
double max_pole_radius(const BiquadCascade& cascade);

/// JSON text: {"gain":g,"sections":[[b0,b1,b2,a1,a2],...]} with 17
/// significant digits.
std::string to_json(const BiquadCascade& cascade);

}  // namespace gaitseg
