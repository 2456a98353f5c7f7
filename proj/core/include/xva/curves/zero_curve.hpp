#pragma once

#include "xva/curves/interp.hpp"

#include <span>
#include <string>
#include <vector>

namespace xva::curves {

// Piecewise-linear continuously-compounded zero rate r(t) through the pillars
// (T_i, r_i), flat outside the pillar range; D(0,t) = exp(-r(t) t).
class ZeroCurve {
  public:
    ZeroCurve(std::vector<std::string> labels, std::vector<double> times,
              std::vector<double> zeros);

    std::size_t size() const { return times_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::span<const double> times() const { return times_; }
    std::span<const double> zeros() const { return zeros_; }

    double zero_rate(double t) const {
        return interp_pillars<double>(times_, zeros_, t);
    }
    double discount(double t) const;
    double log_discount(double t) const;

  private:
    std::vector<std::string> labels_;
    std::vector<double> times_;
    std::vector<double> zeros_;
};

// Taped evaluation over externally supplied pillar values.
template <class S>
S log_discount_at(std::span<const double> times, std::span<const S> zeros, double t) {
    return interp_pillars(times, zeros, t) * (-t);
}

template <class S>
S log_discount_at_t(std::span<const double> times, std::span<const S> zeros, const S& t) {
    return interp_pillars_t(times, zeros, t) * (-t);
}

} // namespace xva::curves
