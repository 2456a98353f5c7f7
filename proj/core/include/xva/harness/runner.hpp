#pragma once

#include "xva/greeks/cva_problem.hpp"
#include "xva/greeks/estimators.hpp"
#include "xva/harness/config.hpp"

#include <map>

namespace xva::harness {

// Builds the desk problem from the configured fixtures.
greeks::CvaProblem build_problem(const ExperimentConfig& cfg);

// Runs the selected estimators and writes one CSV per experiment plus the
// efficiency tables; returns the paths of the written files.
std::vector<std::string> run(const ExperimentConfig& cfg);

// Report writing (exposed for tests).
struct ReportRow {
    std::string coordinate;
    std::string pillar;
    double mean, variance, half_ci, wall_time, efficiency;
};

void write_report(const std::string& path, const std::vector<ReportRow>& rows);

std::vector<ReportRow> delta_rows(const greeks::McProblem& p, const greeks::EstimatorRun& run,
                                  bool timing_on);
std::vector<ReportRow> gamma_rows(const greeks::McProblem& p, const greeks::EstimatorRun& run,
                                  bool timing_on, std::size_t sel_credit, std::size_t sel_rate);

} // namespace xva::harness
