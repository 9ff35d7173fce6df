#include "lambda2/pulses.hpp"

#include <cmath>

namespace lambda2 {

double raised_cosine_step(double u)
{
    if (u <= 0.0)
        return 0.0;
    if (u >= 1.0)
        return 1.0;
    return 0.5 * (1.0 - std::cos(kPi * u));
}

Envelope zero_envelope()
{
    return [](double) { return Complex{}; };
}

Envelope gaussian_pulse(Complex amplitude, double center, double half_width)
{
    if (!(half_width > 0.0))
        throw Error(ErrorCode::InvalidArgument, "pulse half-width must be > 0");
    return [=](double tau) {
        const double x = (tau - center) / half_width;
        return amplitude * std::exp(-x * x);
    };
}

Envelope flat_top_pulse(Complex amplitude, double center, double width, double edge)
{
    if (!(width > 0.0) || !(edge >= 0.0) || edge > width)
        throw Error(ErrorCode::InvalidArgument, "flat-top pulse needs 0 <= edge <= width");
    const double half = 0.5 * width;
    return [=](double tau) {
        const double x = std::abs(tau - center);
        if (edge == 0.0)
            return x <= half ? amplitude : Complex{};
        // Half amplitude at |tau - center| = width/2.
        return amplitude * raised_cosine_step((half + 0.5 * edge - x) / edge);
    };
}

Envelope cw_envelope(Complex amplitude, double t_on, double rise)
{
    if (!(rise >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "rise time must be >= 0");
    return [=](double tau) {
        if (rise == 0.0)
            return tau >= t_on ? amplitude : Complex{};
        return amplitude * raised_cosine_step((tau - t_on) / rise);
    };
}

SignalSource make_source(Envelope beam1, Envelope beam2)
{
    return [b1 = std::move(beam1), b2 = std::move(beam2)](double tau) {
        return SignalPair{b1(tau), b2(tau)};
    };
}

} // namespace lambda2
