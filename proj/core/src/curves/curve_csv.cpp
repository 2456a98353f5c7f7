#include "xva/curves/curve_csv.hpp"

#include "xva/common/require.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace xva::curves {

namespace {

double parse_number(const std::string& field, const std::string& what, std::size_t row) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        XVA_REQUIRE(pos == field.size(),
                    "curve csv row " << row << ": trailing characters in " << what << " '"
                                     << field << "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("curve csv row " + std::to_string(row) + ": unparsable " + what +
                                 " '" + field + "'");
    }
}

} // namespace

CurveData load_curve_csv(const std::string& path) {
    std::ifstream in(path);
    XVA_REQUIRE(in.good(), "curve csv: cannot open '" << path << "'");

    std::string line;
    XVA_REQUIRE(std::getline(in, line), "curve csv '" << path << "': empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    XVA_REQUIRE(line == "pillar,time,zero",
                "curve csv '" << path << "': expected header 'pillar,time,zero', got '" << line
                              << "'");

    CurveData data;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string label, time_s, zero_s;
        XVA_REQUIRE(std::getline(ss, label, ',') && std::getline(ss, time_s, ',') &&
                        std::getline(ss, zero_s, ','),
                    "curve csv row " << row << ": expected 3 comma-separated fields, got '" << line
                                     << "'");
        const double t = parse_number(time_s, "time", row);
        const double z = parse_number(zero_s, "zero", row);
        XVA_REQUIRE(t > 0.0, "curve csv row " << row << ": time " << t << " not positive");
        XVA_REQUIRE(data.times.empty() || t > data.times.back(),
                    "curve csv row " << row << ": time " << t << " not increasing");
        data.labels.push_back(label);
        data.times.push_back(t);
        data.zeros.push_back(z);
    }
    XVA_REQUIRE(!data.times.empty(), "curve csv '" << path << "': no pillars");
    return data;
}

} // namespace xva::curves
