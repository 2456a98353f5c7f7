#pragma once

#include <string>
#include <vector>

namespace xva::curves {

struct CurveData {
    std::vector<std::string> labels;
    std::vector<double> times;
    std::vector<double> zeros;
};

// Reads a `pillar,time,zero` file; failures carry the offending row number.
CurveData load_curve_csv(const std::string& path);

} // namespace xva::curves
