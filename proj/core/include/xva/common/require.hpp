#pragma once

#include <sstream>
#include <stdexcept>

// QL-style checked precondition with stream message:
//   XVA_REQUIRE(t >= 0.0, "discount: negative time " << t);
#define XVA_REQUIRE(cond, msg)                    \
    do {                                          \
        if (!(cond)) {                            \
            std::ostringstream xva_oss_;          \
            xva_oss_ << msg;                      \
            throw std::runtime_error(xva_oss_.str()); \
        }                                         \
    } while (false)
