#include "lambda2/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "lambda2/jobs.hpp"
#include "lambda2/reduced.hpp"

namespace lambda2 {

double SweepSpec::xi_at(int k) const
{
    if (xi_steps == 1)
        return xi_min;
    if (k == xi_steps - 1)
        return xi_max;
    return xi_min + (xi_max - xi_min) * k / (xi_steps - 1);
}

void SweepSpec::validate() const
{
    if (!(xi_min >= 0.0) || !std::isfinite(xi_max) || !(xi_max >= xi_min))
        throw Error(ErrorCode::InvalidArgument, "need 0 <= xi_min <= xi_max");
    if (xi_steps < 1 || (xi_steps == 1 && xi_max != xi_min))
        throw Error(ErrorCode::InvalidArgument, "xi_steps must be >= 2 for a non-empty range");
    if (delta0s.empty())
        throw Error(ErrorCode::InvalidArgument, "delta0 list is empty");
    for (double d : delta0s)
        if (!std::isfinite(d))
            throw Error(ErrorCode::InvalidArgument, "delta0 values must be finite");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw Error(ErrorCode::NegativeParameter, "mu must be > 0");
}

std::vector<SweepRow> amplification_sweep(const SweepSpec& spec, unsigned jobs)
{
    spec.validate();
    std::vector<double> deltas = spec.delta0s;
    std::sort(deltas.begin(), deltas.end());

    const auto steps = static_cast<std::size_t>(spec.xi_steps);
    std::vector<SweepRow> rows(deltas.size() * steps);
    // One job per phase offset keeps the per-job work coarse.
    parallel_for(deltas.size(), jobs, [&](std::size_t d) {
        for (std::size_t k = 0; k < steps; ++k) {
            const double xi = spec.xi_at(static_cast<int>(k));
            const AmplificationRatio r = amplification_ratio(xi, spec.mu, deltas[d]);
            rows[d * steps + k] = {xi, deltas[d], r.r1, r.r2};
        }
    });
    return rows;
}

} // namespace lambda2
