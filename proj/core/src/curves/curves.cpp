#include "xva/curves/hazard_curve.hpp"
#include "xva/curves/zero_curve.hpp"

#include "xva/common/require.hpp"

#include <cmath>

namespace xva::curves {

namespace {

void check_pillars(std::span<const double> times, std::size_t n_labels) {
    XVA_REQUIRE(!times.empty(), "curve: no pillars");
    XVA_REQUIRE(n_labels == times.size(), "curve: label/time count mismatch");
    XVA_REQUIRE(times[0] > 0.0, "curve: first pillar time " << times[0] << " not positive");
    for (std::size_t i = 1; i < times.size(); ++i)
        XVA_REQUIRE(times[i] > times[i - 1], "curve: pillar times not increasing at index " << i);
}

} // namespace

ZeroCurve::ZeroCurve(std::vector<std::string> labels, std::vector<double> times,
                     std::vector<double> zeros)
    : labels_(std::move(labels)), times_(std::move(times)), zeros_(std::move(zeros)) {
    check_pillars(times_, labels_.size());
    XVA_REQUIRE(zeros_.size() == times_.size(), "zero curve: time/zero count mismatch");
}

double ZeroCurve::log_discount(double t) const {
    XVA_REQUIRE(t >= 0.0, "discount: negative time " << t);
    return log_discount_at<double>(times_, zeros_, t);
}

double ZeroCurve::discount(double t) const { return std::exp(log_discount(t)); }

HazardCurve::HazardCurve(std::vector<std::string> labels, std::vector<double> times,
                         std::vector<double> zero_intensities)
    : labels_(std::move(labels)), times_(std::move(times)),
      lambda_bars_(std::move(zero_intensities)) {
    check_pillars(times_, labels_.size());
    XVA_REQUIRE(lambda_bars_.size() == times_.size(), "hazard curve: time/intensity count mismatch");
    cum_.resize(times_.size());
    double prev = 0.0, prev_t = 0.0;
    for (std::size_t j = 0; j < times_.size(); ++j) {
        XVA_REQUIRE(lambda_bars_[j] > 0.0,
                    "hazard curve: zero intensity " << lambda_bars_[j] << " at pillar " << j
                                                    << " not positive");
        cum_[j] = lambda_bars_[j] * times_[j];
        XVA_REQUIRE(cum_[j] > prev, "hazard curve: implied hazard not positive on segment ("
                                        << prev_t << ", " << times_[j] << "]");
        prev = cum_[j];
        prev_t = times_[j];
    }
}

double HazardCurve::cumulative(double t) const {
    XVA_REQUIRE(t >= 0.0, "cumulative hazard: negative time " << t);
    return detail::cumulative_hazard<double>(times_, lambda_bars_, t);
}

double HazardCurve::hazard(double t) const {
    XVA_REQUIRE(t >= 0.0, "hazard: negative time " << t);
    return detail::hazard_rate<double>(times_, lambda_bars_, t);
}

double HazardCurve::survival(double t) const { return std::exp(-cumulative(t)); }

double HazardCurve::inverse_cumulative(double eps) const {
    XVA_REQUIRE(eps >= 0.0, "inverse cumulative hazard: negative argument " << eps);
    const std::size_t n = times_.size();
    if (eps <= cum_[0]) return eps / lambda_bars_[0];
    std::size_t j = 0;
    while (j + 1 < n && cum_[j + 1] <= eps) ++j;
    if (j + 1 < n) {
        const double slope = (cum_[j + 1] - cum_[j]) / (times_[j + 1] - times_[j]);
        return times_[j] + (eps - cum_[j]) / slope;
    }
    const double tail = (n == 1) ? lambda_bars_[0]
                                 : (cum_[n - 1] - cum_[n - 2]) / (times_[n - 1] - times_[n - 2]);
    return times_[n - 1] + (eps - cum_[n - 1]) / tail;
}

HazardCurve HazardCurve::with_bumped_pillar(std::size_t j, double dh) const {
    XVA_REQUIRE(j < lambda_bars_.size(), "bump: pillar index " << j << " out of range");
    std::vector<double> bumped = lambda_bars_;
    bumped[j] += dh;
    return HazardCurve(labels_, times_, std::move(bumped));
}

} // namespace xva::curves
