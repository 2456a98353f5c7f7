#pragma once

#include <span>
#include <vector>

namespace xva::credit {

// Inclusion-exclusion split of a payoff given its restrictions f_I to each
// defaulted-set region, indexed by bitmask over up to 3 names. The addend for
// I is sum_{J subset I} (-1)^{|I\J|} f_J; summing addends over subsets of the
// realized region reproduces the payoff exactly.
std::vector<double> decompose_payoff(std::span<const double> f_by_subset, int n_names);

double reconstruct_on_region(std::span<const double> addends, unsigned region);

} // namespace xva::credit
