#pragma once

#include "xva/greeks/problem.hpp"
#include "xva/greeks/run.hpp"

namespace xva::greeks {

enum class FdKind { forward, central };
enum class BumpTarget { credit, rates };

// Coordinate layout of first-order runs: theta block, psi block, then the
// two parallel (summed) coordinates. FD runs over a single target keep just
// that block and its parallel.
struct DeltaLayout {
    std::size_t nt = 0, np = 0;
    std::size_t theta(std::size_t k) const { return k; }
    std::size_t psi(std::size_t i) const { return nt + i; }
    std::size_t theta_parallel() const { return nt + np; }
    std::size_t psi_parallel() const { return nt + np + 1; }
    std::size_t size() const { return nt + np + (nt ? 1 : 0) + (np ? 1 : 0); }
};

// Layout of second-order runs: the cross (theta x psi) and pure credit
// (theta x theta) blocks plus their aggregates; one run carries both blocks
// because every estimator here computes them in the same sweep.
struct GammaLayout {
    std::size_t nt = 0, np = 0;
    std::size_t cross(std::size_t k, std::size_t i) const { return k * np + i; }
    std::size_t credit(std::size_t k, std::size_t l) const { return nt * np + k * nt + l; }
    std::size_t cross_row(std::size_t k) const { return nt * np + nt * nt + k; }
    std::size_t cross_col(std::size_t i) const { return nt * np + nt * nt + nt + i; }
    std::size_t cross_total() const { return nt * np + nt * nt + nt + np; }
    std::size_t credit_row(std::size_t k) const { return cross_total() + 1 + k; }
    std::size_t credit_total() const { return cross_total() + 1 + nt; }
    std::size_t size() const { return credit_total() + 1; }

    void aggregate(std::span<double> out) const;
};

DeltaLayout delta_layout(const McProblem& p);
GammaLayout gamma_layout(const McProblem& p);
std::vector<std::string> delta_labels(const McProblem& p);
std::vector<std::string> gamma_labels(const McProblem& p);

// Plain price (no tapes).
EstimatorRun price(const McProblem& p, const RunConfig& cfg);

// First order by conditioning: per path df/dpsi and f dw/dtheta.
EstimatorRun delta_conditional(const McProblem& p, const RunConfig& cfg);

// First order by distributional differentiation (validation oracle).
EstimatorRun delta_distributional(const McProblem& p, const RunConfig& cfg);

// Second order: per path outer(dw, df) and f (d2w + outer(dw, dw)).
EstimatorRun gamma_ad2(const McProblem& p, const RunConfig& cfg);

// Finite-difference repricing under common random numbers.
EstimatorRun fd_delta(const McProblem& p, const RunConfig& cfg, FdKind kind, BumpTarget target,
                      double bump);

// Finite differences of the conditioning first-order results (FDAD / CDAD).
EstimatorRun fd_gamma_on_ad(const McProblem& p, const RunConfig& cfg, FdKind kind, double bump);

} // namespace xva::greeks
