#pragma once

#include <functional>

#include "lambda2/core.hpp"

namespace lambda2 {

/// Complex envelope as a function of lab time at the medium entrance.
using Envelope = std::function<Complex(double)>;

/// Both signal envelopes at z = 0.
using SignalSource = std::function<SignalPair(double)>;

Envelope zero_envelope();

/// amplitude * exp(-((tau - center)/half_width)^2); half_width is the 1/e
/// half-width of the amplitude.
Envelope gaussian_pulse(Complex amplitude, double center, double half_width);

/// Flat top of total duration `width` (measured between the half-amplitude
/// points) with raised-cosine edges of duration `edge` each.
Envelope flat_top_pulse(Complex amplitude, double center, double width, double edge);

/// Constant amplitude switched on by a raised-cosine ramp from t_on to
/// t_on + rise.
Envelope cw_envelope(Complex amplitude, double t_on, double rise);

SignalSource make_source(Envelope beam1, Envelope beam2);

/// 0 -> 1 raised-cosine step for u in [0, 1], clamped outside.
double raised_cosine_step(double u);

} // namespace lambda2
