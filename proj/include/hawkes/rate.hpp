#pragma once

#include <optional>
#include <vector>

#include "hawkes/cgf.hpp"
#include "hawkes/process.hpp"

namespace hawkes {

// One point of the rate function. rate is +inf for x < 0 (counts and
// mark sums are non-negative); argmax_theta is absent when the supremum
// is not attained at an interior stationary point (x <= 0, or the
// near-critical boundary branch).
struct RatePoint {
    double x;
    double rate;
    std::optional<double> argmax_theta;
    Observable which;
};

RatePoint rate_n(const ProcessParams& params, double x);
RatePoint rate_l(const ProcessParams& params, double x);

std::vector<RatePoint> rate_curve(const ProcessParams& params,
                                  Observable which,
                                  const std::vector<double>& x_grid);

} // namespace hawkes
