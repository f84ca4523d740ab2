#include "hawkes/rate.hpp"

#include <cmath>
#include <limits>

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double slope_at(const ProcessParams& p, Observable which, double theta) {
    const CgfSolution sol =
        which == Observable::count ? gamma_n(p, theta) : gamma_l(p, theta);
    return sol.gamma_prime;
}

double gamma_at(const ProcessParams& p, Observable which, double theta) {
    const CgfSolution sol =
        which == Observable::count ? gamma_n(p, theta) : gamma_l(p, theta);
    return sol.gamma;
}

// Solve slope(theta) = x for theta in (theta_lo_unbounded, theta_hi];
// slope is continuous and strictly increasing.
double invert_slope(const ProcessParams& p, Observable which, double x,
                    double theta_hi) {
    double theta_lo = std::min(0.0, theta_hi) - 1.0;
    double step = 1.0;
    while (slope_at(p, which, theta_lo) >= x && theta_lo > -746.0) {
        theta_lo -= step;
        step *= 2.0;
    }
    double lo = theta_lo;
    double hi = theta_hi;
    for (int i = 0; i < 200; ++i) {
        if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(hi))) {
            break;
        }
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (slope_at(p, which, mid) < x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RatePoint transform(const ProcessParams& p, Observable which, double x) {
    RatePoint out{x, 0.0, std::nullopt, which};
    if (x < 0.0) {
        out.rate = kInf;
        return out;
    }
    if (x == 0.0) {
        // analytic limit theta -> -inf: the fixed point drifts to 0 and
        // -Gamma(theta) -> nu
        out.rate = p.nu;
        return out;
    }

    const double h = p.kernel.l1_norm();
    if (h == 0.0 && which == Observable::count) {
        // Poisson closed form
        const double theta = std::log(x / p.nu);
        out.rate = std::max(0.0, x * std::log(x / p.nu) - x + p.nu);
        out.argmax_theta = theta;
        return out;
    }

    double theta_hi;
    if (h == 0.0) {
        // compound Poisson: slope nu*M'(theta) sweeps (0, inf) over the
        // MGF domain of the marks
        const double s_sup = p.marks.mgf_domain_sup();
        if (std::isfinite(s_sup)) {
            theta_hi = s_sup * (1.0 - 1e-12);
        } else {
            theta_hi = 1.0;
            while (slope_at(p, which, theta_hi) < x && theta_hi < 700.0) {
                theta_hi *= 2.0;
            }
        }
    } else {
        const CriticalPoint cp = which == Observable::count
                                     ? critical_point_n(p)
                                     : critical_point_l(p);
        theta_hi = cp.theta_c -
                   1e-12 * std::max(1.0, std::fabs(cp.theta_c));
        if (slope_at(p, which, theta_hi) < x) {
            // steepness exhausted numerically: affine boundary branch
            out.rate = std::max(
                0.0, cp.theta_c * x - p.nu * (cp.x_c - 1.0));
            return out;
        }
    }

    const double theta_x = invert_slope(p, which, x, theta_hi);
    out.rate = std::max(0.0, theta_x * x - gamma_at(p, which, theta_x));
    out.argmax_theta = theta_x;
    return out;
}

} // namespace

RatePoint rate_n(const ProcessParams& params, double x) {
    return transform(params, Observable::count, x);
}

RatePoint rate_l(const ProcessParams& params, double x) {
    return transform(params, Observable::mark_sum, x);
}

std::vector<RatePoint> rate_curve(const ProcessParams& params,
                                  Observable which,
                                  const std::vector<double>& x_grid) {
    std::vector<RatePoint> points;
    points.reserve(x_grid.size());
    for (double x : x_grid) {
        points.push_back(transform(params, which, x));
    }
    return points;
}

} // namespace hawkes
