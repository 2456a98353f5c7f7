#pragma once

#include "xva/ad/scalar.hpp"

#include <cstddef>
#include <span>

namespace xva::curves {

// Index i such that times[i] <= t < times[i+1]; requires times[0] <= t < times.back().
inline std::size_t segment_index(std::span<const double> times, double t) {
    std::size_t lo = 0, hi = times.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (times[mid] <= t)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Piecewise-linear interpolation of pillar values at a plain time, flat outside
// the pillar range. Values may be plain doubles or taped scalars.
template <class S>
S interp_pillars(std::span<const double> times, std::span<const S> values, double t) {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const std::size_t i = segment_index(times, t);
    const double w = (t - times[i]) / (times[i + 1] - times[i]);
    return values[i] + (values[i + 1] - values[i]) * w;
}

// Same with the time itself of scalar type S (taped default times); the
// bracket is chosen by current value, matching the plain evaluation exactly.
template <class S>
S interp_pillars_t(std::span<const double> times, std::span<const S> values, const S& t) {
    const double tv = ad::value_of(t);
    if (tv <= times.front()) return values.front();
    if (tv >= times.back()) return values.back();
    const std::size_t i = segment_index(times, tv);
    const auto w = (t - times[i]) / (times[i + 1] - times[i]);
    return values[i] + (values[i + 1] - values[i]) * w;
}

} // namespace xva::curves
