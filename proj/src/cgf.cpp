#include "hawkes/cgf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBisection = 200;

double domain_checked_arg(const MarkDistribution& marks, double arg,
                          const char* where) {
    if (!(arg < marks.mgf_domain_sup())) {
        throw TiltTooLarge(std::string(where) +
                           ": MGF argument " + std::to_string(arg) +
                           " left the mark-law domain");
    }
    return arg;
}

// Bisection on [lo, hi] with f(lo) and f(hi) of opposite (weak) sign;
// f(lo) > 0 is expected by callers here.
template <typename F>
double bisect_root(F&& f, double lo, double hi, int& iterations) {
    iterations = 0;
    while (iterations < kMaxBisection &&
           hi - lo > 1e-15 * std::max(1.0, std::fabs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        ++iterations;
        if (f(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Minimal root of x = e^theta * M(h(x-1)) on [0, hi]; the map is convex
// in x, positive at 0 and (weakly) below the diagonal at hi.
double solve_x_count(const ProcessParams& p, double theta, double hi,
                     int& iterations, double& residual) {
    const double h = p.kernel.l1_norm();
    const double et = std::exp(theta);
    auto gap = [&](double x) {
        return et * p.marks.mgf(h * (x - 1.0)) - x;
    };
    if (gap(hi) > 0.0) {
        // only reachable within the tolerance window around theta_c
        iterations = 0;
        residual = std::fabs(gap(hi));
        return hi;
    }
    const double x = bisect_root(gap, 0.0, hi, iterations);
    residual = std::fabs(gap(x));
    return x;
}

double solve_x_mark_sum(const ProcessParams& p, double theta, double hi,
                        int& iterations, double& residual) {
    const double h = p.kernel.l1_norm();
    auto gap = [&](double x) {
        return p.marks.mgf(theta + h * (x - 1.0)) - x;
    };
    if (gap(hi) > 0.0) {
        iterations = 0;
        residual = std::fabs(gap(hi));
        return hi;
    }
    const double x = bisect_root(gap, 0.0, hi, iterations);
    residual = std::fabs(gap(x));
    return x;
}

double count_slope(const ProcessParams& p, double x_star, double theta) {
    const double h = p.kernel.l1_norm();
    const double denom =
        1.0 - std::exp(theta) * h * p.marks.mgf_d1(h * (x_star - 1.0));
    if (denom <= 1e-14) {
        return kInf;
    }
    return p.nu * x_star / denom;
}

double mark_sum_slope(const ProcessParams& p, double x_star, double theta) {
    const double h = p.kernel.l1_norm();
    const double m1 = p.marks.mgf_d1(theta + h * (x_star - 1.0));
    const double denom = 1.0 - h * m1;
    if (denom <= 1e-14) {
        return kInf;
    }
    return p.nu * m1 / denom;
}

} // namespace

double finite_time_cgf_n(const ProcessParams& params, double theta, long t) {
    if (t < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    const auto& alpha = params.kernel.weights();
    const long K = static_cast<long>(alpha.size());

    // em1[s] = e^{f_s(theta)} - 1
    std::vector<double> em1(static_cast<std::size_t>(t));
    em1[0] = std::expm1(theta);
    double total = em1[0];
    for (long s = 1; s < t; ++s) {
        double arg = 0.0;
        const long lags = std::min<long>(s, K);
        for (long u = 1; u <= lags; ++u) {
            arg += em1[static_cast<std::size_t>(s - u)] *
                   alpha[static_cast<std::size_t>(u - 1)];
        }
        domain_checked_arg(params.marks, arg, "finite_time_cgf_n");
        const double f = theta + std::log(params.marks.mgf(arg));
        em1[static_cast<std::size_t>(s)] = std::expm1(f);
        if (!std::isfinite(em1[static_cast<std::size_t>(s)])) {
            throw TiltTooLarge("finite_time_cgf_n: recursion overflow at s=" +
                               std::to_string(s));
        }
        total += em1[static_cast<std::size_t>(s)];
    }
    return params.nu * total / static_cast<double>(t);
}

double finite_time_cgf_l(const ProcessParams& params, double theta, long t) {
    if (t < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    const auto& alpha = params.kernel.weights();
    const long K = static_cast<long>(alpha.size());

    // gm1[s] = g_s(theta) - 1
    std::vector<double> gm1(static_cast<std::size_t>(t));
    domain_checked_arg(params.marks, theta, "finite_time_cgf_l");
    gm1[0] = params.marks.mgf(theta) - 1.0;
    double total = gm1[0];
    for (long s = 1; s < t; ++s) {
        double arg = theta;
        const long lags = std::min<long>(s, K);
        for (long u = 1; u <= lags; ++u) {
            arg += gm1[static_cast<std::size_t>(s - u)] *
                   alpha[static_cast<std::size_t>(u - 1)];
        }
        domain_checked_arg(params.marks, arg, "finite_time_cgf_l");
        gm1[static_cast<std::size_t>(s)] = params.marks.mgf(arg) - 1.0;
        if (!std::isfinite(gm1[static_cast<std::size_t>(s)])) {
            throw TiltTooLarge("finite_time_cgf_l: recursion overflow at s=" +
                               std::to_string(s));
        }
        total += gm1[static_cast<std::size_t>(s)];
    }
    return params.nu * total / static_cast<double>(t);
}

CriticalPoint critical_point_n(const ProcessParams& params) {
    const double h = params.kernel.l1_norm();
    CriticalPoint cp{kInf, kInf, Observable::count, 0.0, 0.0, false, false};
    if (h == 0.0) {
        cp.degenerate = true;
        return cp;
    }
    const auto& marks = params.marks;
    const double s_sup = marks.mgf_domain_sup();
    const double x_edge =
        std::isfinite(s_sup) ? 1.0 + (s_sup / h) * (1.0 - 1e-12) : kInf;

    // phi < 0 at x = 1 under stability, -> +inf toward the domain edge
    auto phi = [&](double x) {
        const double s = h * (x - 1.0);
        return x * h * marks.mgf_d1(s) - marks.mgf(s);
    };

    double hi = 2.0;
    if (hi > x_edge) {
        hi = x_edge;
    }
    while (phi(hi) <= 0.0) {
        if (hi >= x_edge) {
            cp.domain_limited = true;
            break;
        }
        hi = std::min(1.0 + 2.0 * (hi - 1.0), x_edge);
        if (!std::isfinite(hi)) {
            throw ResourceError("critical_point_n: bracket expansion failed");
        }
    }

    double x_c;
    if (cp.domain_limited) {
        x_c = hi;
    } else {
        int iterations = 0;
        auto neg_phi = [&](double x) { return -phi(x); };
        x_c = bisect_root(neg_phi, 1.0, hi, iterations);
    }
    const double s = h * (x_c - 1.0);
    cp.x_c = x_c;
    cp.theta_c = -std::log(h * marks.mgf_d1(s));
    cp.residual_tangency = std::fabs(phi(x_c));
    cp.residual_fixed_point =
        std::fabs(std::exp(cp.theta_c) * marks.mgf(s) - x_c);
    return cp;
}

CriticalPoint critical_point_l(const ProcessParams& params) {
    const double h = params.kernel.l1_norm();
    CriticalPoint cp{kInf, kInf, Observable::mark_sum, 0.0, 0.0, false,
                     false};
    if (h == 0.0) {
        cp.degenerate = true;
        return cp;
    }
    const auto& marks = params.marks;
    const double s_sup = marks.mgf_domain_sup();
    const double u_edge =
        std::isfinite(s_sup) ? s_sup * (1.0 - 1e-12) : kInf;

    // Both tangency equations share the exponent u = theta + h(x-1):
    // h M'(u_c) = 1 pins u_c, then x_c = M(u_c), theta_c = u_c - h(x_c-1).
    auto psi = [&](double u) { return h * marks.mgf_d1(u) - 1.0; };

    double hi = std::min(1.0, u_edge);
    while (psi(hi) <= 0.0) {
        if (hi >= u_edge) {
            cp.domain_limited = true;
            break;
        }
        hi = std::min(2.0 * hi, u_edge);
        if (!std::isfinite(hi)) {
            throw ResourceError("critical_point_l: bracket expansion failed");
        }
    }

    double u_c;
    if (cp.domain_limited) {
        u_c = hi;
    } else {
        int iterations = 0;
        auto neg_psi = [&](double u) { return -psi(u); };
        u_c = bisect_root(neg_psi, 0.0, hi, iterations);
    }
    cp.x_c = marks.mgf(u_c);
    cp.theta_c = u_c - h * (cp.x_c - 1.0);
    cp.residual_tangency = std::fabs(psi(u_c));
    cp.residual_fixed_point =
        std::fabs(marks.mgf(cp.theta_c + h * (cp.x_c - 1.0)) - cp.x_c);
    return cp;
}

CgfSolution gamma_n(const ProcessParams& params, double theta) {
    const double h = params.kernel.l1_norm();
    if (h == 0.0) {
        const double x = std::exp(theta);
        return {theta, x, params.nu * (x - 1.0), params.nu * x, 0, 0.0};
    }
    double hi = 1.0;
    if (theta > 0.0) {
        const CriticalPoint cp = critical_point_n(params);
        if (theta > cp.theta_c + 1e-12) {
            throw ThetaAboveCritical(
                "gamma_n: theta=" + std::to_string(theta) +
                " exceeds theta_c=" + std::to_string(cp.theta_c));
        }
        hi = cp.x_c;
    }
    CgfSolution sol;
    sol.theta = theta;
    sol.x_star = solve_x_count(params, theta, hi, sol.iterations,
                               sol.residual);
    sol.gamma = params.nu * (sol.x_star - 1.0);
    sol.gamma_prime = count_slope(params, sol.x_star, theta);
    return sol;
}

CgfSolution gamma_l(const ProcessParams& params, double theta) {
    const double h = params.kernel.l1_norm();
    if (h == 0.0) {
        domain_checked_arg(params.marks, theta, "gamma_l");
        const double x = params.marks.mgf(theta);
        return {theta, x, params.nu * (x - 1.0),
                params.nu * params.marks.mgf_d1(theta), 0, 0.0};
    }
    double hi = 1.0;
    if (theta > 0.0) {
        const CriticalPoint cp = critical_point_l(params);
        if (theta > cp.theta_c + 1e-12) {
            throw ThetaAboveCritical(
                "gamma_l: theta=" + std::to_string(theta) +
                " exceeds theta_c=" + std::to_string(cp.theta_c));
        }
        hi = cp.x_c;
    }
    CgfSolution sol;
    sol.theta = theta;
    sol.x_star = solve_x_mark_sum(params, theta, hi, sol.iterations,
                                  sol.residual);
    sol.gamma = params.nu * (sol.x_star - 1.0);
    sol.gamma_prime = mark_sum_slope(params, sol.x_star, theta);
    return sol;
}

double gamma_prime_n(const ProcessParams& params, double theta) {
    const CgfSolution sol = gamma_n(params, theta);
    if (!std::isfinite(sol.gamma_prime)) {
        throw ThetaAtCritical(
            "gamma_prime_n: slope diverges at theta=" +
            std::to_string(theta));
    }
    return sol.gamma_prime;
}

double gamma_prime_l(const ProcessParams& params, double theta) {
    const CgfSolution sol = gamma_l(params, theta);
    if (!std::isfinite(sol.gamma_prime)) {
        throw ThetaAtCritical(
            "gamma_prime_l: slope diverges at theta=" +
            std::to_string(theta));
    }
    return sol.gamma_prime;
}

double fixed_point_x_n(const ProcessParams& params, double theta,
                       int max_iter, double tol) {
    const double h = params.kernel.l1_norm();
    double x = std::exp(theta);
    for (int i = 0; i < max_iter; ++i) {
        const double next =
            std::exp(theta) * params.marks.mgf(h * (x - 1.0));
        if (std::fabs(next - x) <= tol * std::max(1.0, std::fabs(next))) {
            return next;
        }
        x = next;
    }
    return x;
}

double fixed_point_x_l(const ProcessParams& params, double theta,
                       int max_iter, double tol) {
    const double h = params.kernel.l1_norm();
    domain_checked_arg(params.marks, theta, "fixed_point_x_l");
    double x = params.marks.mgf(theta);
    for (int i = 0; i < max_iter; ++i) {
        const double next = params.marks.mgf(theta + h * (x - 1.0));
        if (std::fabs(next - x) <= tol * std::max(1.0, std::fabs(next))) {
            return next;
        }
        x = next;
    }
    return x;
}

} // namespace hawkes
