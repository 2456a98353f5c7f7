#pragma once

#include "xva/ad/scalar.hpp"

#include <span>
#include <string>
#include <vector>

namespace xva::curves {

namespace detail {

// Cumulative hazard through the knots (0,0), (T_j, lambda_j T_j), linear in
// between and linearly extrapolated with the last segment's slope. The pillar
// values may be taped scalars; the lookup time is always plain.
template <class S>
S cumulative_hazard(std::span<const double> times, std::span<const S> lambda_bars, double t) {
    const std::size_t n = times.size();
    if (t <= times[0]) return lambda_bars[0] * t;
    std::size_t i = 0;
    while (i + 1 < n && times[i + 1] <= t) ++i;
    if (i + 1 < n) { // t in (times[i], times[i+1]]
        const double w = (t - times[i]) / (times[i + 1] - times[i]);
        const auto hi = lambda_bars[i] * times[i];
        const auto hj = lambda_bars[i + 1] * times[i + 1];
        return hi + (hj - hi) * w;
    }
    // beyond the last pillar: carry the last hazard forward
    const auto hn = lambda_bars[n - 1] * times[n - 1];
    if (n == 1) return hn + lambda_bars[0] * (t - times[0]);
    const auto hp = lambda_bars[n - 2] * times[n - 2];
    const auto slope = (hn - hp) / (times[n - 1] - times[n - 2]);
    return hn + slope * (t - times[n - 1]);
}

// Right-continuous slope of the cumulative hazard.
template <class S>
S hazard_rate(std::span<const double> times, std::span<const S> lambda_bars, double t) {
    const std::size_t n = times.size();
    if (n == 1 || t < times[0]) return lambda_bars[0];
    std::size_t j = 0;
    while (j + 1 < n && times[j + 1] <= t) ++j;
    if (j + 1 == n) j = n - 2; // flat hazard beyond the last pillar
    const auto hi = lambda_bars[j] * times[j];
    const auto hj = lambda_bars[j + 1] * times[j + 1];
    return (hj - hi) / (times[j + 1] - times[j]);
}

} // namespace detail

// Piecewise-constant hazard rates parametrized by the zero intensities
// lambda_j = Lambda(T_j)/T_j at the pillar dates.
class HazardCurve {
  public:
    HazardCurve(std::vector<std::string> labels, std::vector<double> times,
                std::vector<double> zero_intensities);

    std::size_t size() const { return times_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::span<const double> times() const { return times_; }
    std::span<const double> zero_intensities() const { return lambda_bars_; }

    double cumulative(double t) const;
    double hazard(double t) const;
    double survival(double t) const;
    // Exact piecewise-linear inversion: Lambda(inverse_cumulative(e)) == e.
    double inverse_cumulative(double eps) const;

    HazardCurve with_bumped_pillar(std::size_t j, double dh) const;

  private:
    std::vector<std::string> labels_;
    std::vector<double> times_;
    std::vector<double> lambda_bars_;
    std::vector<double> cum_; // Lambda at the pillars
};

} // namespace xva::curves
