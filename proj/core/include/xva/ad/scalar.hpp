#pragma once

#include "xva/ad/tape.hpp"
#include "xva/math/normal.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

// Double counterparts of the taped primitives, so pricing code can be written
// once against a generic scalar type S (double for plain runs, Active when a
// tape is recording).

namespace xva::ad {

template <class S>
inline constexpr bool is_active_v = std::is_same_v<std::remove_cvref_t<S>, Active>;

inline double value_of(double x) { return x; }
inline double value_of(const Active& x) { return x.value(); }

inline double max0(double x) { return std::max(x, 0.0); }
inline double norm_cdf(double x) { return math::norm_cdf(x); }
inline double norm_pdf(double x) { return math::norm_pdf(x); }
inline double norm_quantile(double x) { return math::norm_quantile(x); }
inline double binorm_cdf(double x, double y, double rho) { return math::binorm_cdf(x, y, rho); }

} // namespace xva::ad
