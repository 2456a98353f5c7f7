#pragma once

#include "xva/curves/hazard_curve.hpp"

#include <span>
#include <string>
#include <vector>

namespace xva::curves {

// Continuous par CDS spreads c_j = lambda_j * lgd and the inverse perfect-fit
// bootstrap. The calibration residual is b_j(theta, c) = theta_j * lgd - c_j,
// so db/dtheta = lgd * Id, db/dc = -Id and all second derivatives vanish.

std::vector<double> spreads_from_hazard(const HazardCurve& curve, double lgd);

HazardCurve hazard_from_spreads(std::vector<std::string> labels, std::vector<double> times,
                                std::span<const double> spreads, double lgd);

std::vector<double> bootstrap_residual(std::span<const double> theta,
                                       std::span<const double> spreads, double lgd);

} // namespace xva::curves
