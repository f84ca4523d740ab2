// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Criteria cover closed-form reductions, oracle agreement,
// convergence, statistical validation, and determinism.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hawkes/cgf.hpp"
#include "hawkes/cli_app.hpp"
#include "hawkes/mc.hpp"
#include "hawkes/moments.hpp"
#include "hawkes/process.hpp"
#include "hawkes/rate.hpp"

#include "brute_force.hpp"

using hawkes::ExcitationKernel;
using hawkes::MarkDistribution;
using hawkes::Observable;
using hawkes::ProcessParams;

namespace {

int failures = 0;

void report(int number, const std::string& title, bool ok,
            const std::string& detail) {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), detail.empty() ? "" : " -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++failures;
    }
}

void run_criterion(int number, const std::string& title,
                   const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(number, title, ok, detail);
}

ProcessParams standard_params() {
    return ProcessParams(1.0, ExcitationKernel::from_weights({0.5}),
                         MarkDistribution::constant(1.0));
}

bool poisson_reduction(std::string& detail) {
    const ProcessParams p(1.0, ExcitationKernel::from_weights({}),
                          MarkDistribution::constant(1.0));
    double worst = 0.0;
    for (double theta : {-1.0, -0.5, -0.1, 0.1, 0.5, 1.0}) {
        const double got = hawkes::gamma_n(p, theta).gamma;
        worst = std::max(worst, std::fabs(got - std::expm1(theta)));
    }
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
        const double expected = x * std::log(x) - x + 1.0;
        worst = std::max(worst,
                         std::fabs(hawkes::rate_n(p, x).rate - expected));
    }
    detail = "max abs error " + std::to_string(worst);
    return worst < 1e-8;
}

bool unmarked_critical_exponent(std::string& detail) {
    double worst = 0.0;
    for (double h : {0.3, 0.5, 0.8}) {
        const ProcessParams p(1.0, ExcitationKernel::from_weights({h}),
                              MarkDistribution::constant(1.0));
        const auto cp = hawkes::critical_point_n(p);
        worst = std::max(worst,
                         std::fabs(cp.theta_c - (h - 1.0 - std::log(h))));
        worst = std::max(worst, std::fabs(cp.x_c - 1.0 / h));
    }
    detail = "max abs error " + std::to_string(worst);
    return worst < 1e-8;
}

bool recursion_vs_brute_force(std::string& detail) {
    const double nu = 1.0;
    const std::vector<double> alpha = {0.4};
    const auto kernel = ExcitationKernel::from_weights(alpha);

    struct Law {
        MarkDistribution dist;
        brute::MarkLaw brute_law;
    };
    const Law laws[] = {
        {MarkDistribution::constant(1.0), {{1.0}, {1.0}}},
        {MarkDistribution::discrete({0.5, 1.5}, {0.6, 0.4}),
         {{0.5, 1.5}, {0.6, 0.4}}},
    };
    double worst = 0.0;
    for (const Law& law : laws) {
        const ProcessParams p(nu, kernel, law.dist);
        for (int t : {1, 2, 3}) {
            for (double theta : {-0.5, -0.1, 0.1}) {
                const double got_n = hawkes::finite_time_cgf_n(p, theta, t);
                const double ref_n =
                    brute::cgf(nu, alpha, law.brute_law, theta, t, false);
                worst = std::max(worst, std::fabs(got_n - ref_n));
                const double got_l = hawkes::finite_time_cgf_l(p, theta, t);
                const double ref_l =
                    brute::cgf(nu, alpha, law.brute_law, theta, t, true);
                worst = std::max(worst, std::fabs(got_l - ref_l));
            }
        }
    }
    detail = "max abs error " + std::to_string(worst);
    return worst < 1e-6;
}

bool recursion_vs_monte_carlo(std::string& detail) {
    const auto p = standard_params();
    const double theta = -0.2;
    const long t = 50;
    const auto est = hawkes::empirical_cgf(p, theta, t, 100000, 2024,
                                           Observable::count);
    const double exact = hawkes::finite_time_cgf_n(p, theta, t);
    const double z = (est.value - exact) / est.std_err;
    detail = "z = " + std::to_string(z);
    return std::fabs(z) <= 3.0;
}

bool limit_convergence(std::string& detail) {
    const auto p = standard_params();
    double worst_final = 0.0;
    for (double theta : {-0.5, 0.1}) {
        const double limit = hawkes::gamma_n(p, theta).gamma;
        double prev = 1e100;
        for (long t : {250L, 500L, 1000L, 2000L, 4000L}) {
            const double gap =
                std::fabs(hawkes::finite_time_cgf_n(p, theta, t) - limit);
            if (gap > prev) {
                detail = "gap not monotone at t=" + std::to_string(t);
                return false;
            }
            prev = gap;
        }
        worst_final = std::max(worst_final, prev);
    }
    detail = "gap at t=4000: " + std::to_string(worst_final);
    return worst_final < 5e-3;
}

bool lln_clt(std::string& detail) {
    const auto p = standard_params();
    const long t = 500;
    const auto summary = hawkes::estimate_limits(p, t, 10000, 4242);
    // the exact finite-horizon mean is 2 - 2/t; its gap to the limit
    // (0.004) exceeds 3 standard errors at this sample size, so the
    // z-test targets the exact value and a separate absolute band ties
    // the estimate to the limit constant
    const double step = 1e-5;
    const double mean_n_exact = (hawkes::finite_time_cgf_n(p, step, t) -
                                 hawkes::finite_time_cgf_n(p, -step, t)) /
                                (2.0 * step);
    const double mean_l_exact = (hawkes::finite_time_cgf_l(p, step, t) -
                                 hawkes::finite_time_cgf_l(p, -step, t)) /
                                (2.0 * step);
    const double z_n = (summary.mean_n_over_t.value - mean_n_exact) /
                       summary.mean_n_over_t.std_err;
    const double z_l = (summary.mean_l_over_t.value - mean_l_exact) /
                       summary.mean_l_over_t.std_err;
    const bool near_limit =
        std::fabs(summary.mean_n_over_t.value - 2.0) <= 0.01 &&
        std::fabs(summary.mean_l_over_t.value - 2.0) <= 0.01;
    const double rel_vn = std::fabs(summary.var_n_clt_scaled.value - 8.0) / 8.0;
    const double rel_vl = std::fabs(summary.var_l_clt_scaled.value - 8.0) / 8.0;
    std::ostringstream os;
    os << "z_mean_n=" << z_n << " z_mean_l=" << z_l
       << " var_n rel err=" << rel_vn << " var_l rel err=" << rel_vl;
    detail = os.str();
    return std::fabs(z_n) <= 3.0 && std::fabs(z_l) <= 3.0 && near_limit &&
           rel_vn < 0.10 && rel_vl < 0.10;
}

bool rate_function_properties(std::string& detail) {
    const std::vector<ProcessParams> sets = {
        standard_params(),
        ProcessParams(0.7, ExcitationKernel::from_weights({0.3, 0.1}),
                      MarkDistribution::exponential_rate(2.0)),
        ProcessParams(1.2, ExcitationKernel::from_weights({0.2}),
                      MarkDistribution::discrete({0.5, 1.5}, {0.6, 0.4})),
    };
    for (const auto& p : sets) {
        const double mean = hawkes::lln_mean_n(p);
        std::vector<double> grid;
        for (int i = 0; i <= 24; ++i) {
            grid.push_back(mean * (0.2 + 2.0 * i / 24.0));
        }
        const auto points = hawkes::rate_curve(p, Observable::count, grid);
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].rate < 0.0) {
                detail = "negative rate";
                return false;
            }
        }
        if (hawkes::rate_n(p, mean).rate > 1e-8) {
            detail = "rate at the mean exceeds 1e-8";
            return false;
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (std::fabs(grid[i] - mean) > 1e-4 * mean &&
                points[i].rate <= 1e-12) {
                detail = "zero away from the mean";
                return false;
            }
        }
        for (std::size_t i = 1; i + 1 < points.size(); ++i) {
            const double excess = 0.5 * (points[i - 1].rate +
                                         points[i + 1].rate) -
                                  points[i].rate;
            if (excess < -1e-8) {
                detail = "midpoint convexity violated";
                return false;
            }
        }
        const double theta_c = hawkes::critical_point_n(p).theta_c;
        for (int i = 0; i < 8; ++i) {
            const double theta = -0.8 + (0.9 * theta_c + 0.8) * i / 7.0;
            const auto sol = hawkes::gamma_n(p, theta);
            const double expected = theta * sol.gamma_prime - sol.gamma;
            if (std::fabs(hawkes::rate_n(p, sol.gamma_prime).rate -
                          expected) > 1e-8) {
                detail = "duality round-trip failed";
                return false;
            }
        }
    }
    detail = "3 parameter sets, 25-point grids";
    return true;
}

bool gradient_checks(std::string& detail) {
    const std::vector<ProcessParams> sets = {
        standard_params(),
        ProcessParams(0.7, ExcitationKernel::from_weights({0.3, 0.1}),
                      MarkDistribution::exponential_rate(2.0)),
        ProcessParams(1.2, ExcitationKernel::from_weights({0.2}),
                      MarkDistribution::discrete({0.5, 1.5}, {0.6, 0.4})),
    };
    const double step = 1e-6;
    double worst = 0.0;
    for (const auto& p : sets) {
        const double theta_c_n = hawkes::critical_point_n(p).theta_c;
        const double theta_c_l = hawkes::critical_point_l(p).theta_c;
        for (int i = 0; i < 20; ++i) {
            const double tn =
                -1.0 + (0.8 * theta_c_n + 1.0) * i / 19.0;
            const double fd_n = (hawkes::gamma_n(p, tn + step).gamma -
                                 hawkes::gamma_n(p, tn - step).gamma) /
                                (2.0 * step);
            const double got_n = hawkes::gamma_prime_n(p, tn);
            worst = std::max(worst, std::fabs(got_n - fd_n) /
                                        std::max(1.0, std::fabs(fd_n)));
            const double tl =
                -1.0 + (0.8 * theta_c_l + 1.0) * i / 19.0;
            const double fd_l = (hawkes::gamma_l(p, tl + step).gamma -
                                 hawkes::gamma_l(p, tl - step).gamma) /
                                (2.0 * step);
            const double got_l = hawkes::gamma_prime_l(p, tl);
            worst = std::max(worst, std::fabs(got_l - fd_l) /
                                        std::max(1.0, std::fabs(fd_l)));
        }
        const double h2 = 1e-4;
        const double curvature = (hawkes::gamma_prime_n(p, h2) -
                                  hawkes::gamma_prime_n(p, -h2)) /
                                 (2.0 * h2);
        const double rel =
            std::fabs(curvature - hawkes::clt_var_n(p)) / hawkes::clt_var_n(p);
        if (rel > 1e-4) {
            detail = "curvature vs CLT variance rel err " +
                     std::to_string(rel);
            return false;
        }
    }
    detail = "max slope rel err " + std::to_string(worst);
    return worst < 1e-5;
}

// Saddlepoint (lattice Bahadur-Rao) reference for P(N_t >= a t) from the
// exact finite-horizon CGF: at this horizon the prefactor and transient
// corrections are comparable to the limiting rate itself, so the sampled
// implied rate is benchmarked against this finite-t value; agreement with
// the limiting rate function holds only in order of magnitude.
double saddlepoint_implied_rate(const ProcessParams& p, double a, long t) {
    const auto big_k = [&](double theta) {
        return static_cast<double>(t) *
               hawkes::finite_time_cgf_n(p, theta, t);
    };
    const double step = 1e-6;
    const auto slope = [&](double theta) {
        return (big_k(theta + step) - big_k(theta - step)) / (2.0 * step);
    };
    const double m = a * static_cast<double>(t);
    double lo = 0.0;
    double hi = 0.05;
    while (slope(hi) < m) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) < m ? lo : hi) = mid;
    }
    const double theta_hat = 0.5 * (lo + hi);
    const double h2 = 1e-4;
    const double sigma2 = (big_k(theta_hat + h2) - 2.0 * big_k(theta_hat) +
                           big_k(theta_hat - h2)) /
                          (h2 * h2);
    const double log_p = big_k(theta_hat) - theta_hat * m -
                         std::log((1.0 - std::exp(-theta_hat)) *
                                  std::sqrt(2.0 * M_PI * sigma2));
    return -log_p / static_cast<double>(t);
}

bool ldp_tail_check(std::string& detail) {
    const auto p = standard_params();
    const double a = 2.6;
    const long t = 100;
    const auto tail =
        hawkes::tail_probability(p, a, t, 1000000, 777, Observable::count);
    if (tail.zero_hits) {
        detail = "no tail hits";
        return false;
    }
    const double analytic = hawkes::rate_n(p, a).rate;
    const double reference = saddlepoint_implied_rate(p, a, t);
    const double rel = std::fabs(tail.implied_rate - reference) / reference;
    std::ostringstream os;
    os << "implied " << tail.implied_rate << " vs finite-t reference "
       << reference << " (rel err " << rel << "; limiting rate " << analytic
       << ")";
    detail = os.str();
    return rel < 0.25 && tail.implied_rate > analytic;
}

bool determinism(std::string& detail) {
    // byte-identical `validate` output across worker counts
    const std::string cfg =
        std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
        "/acceptance_validate.cfg";
    {
        std::FILE* f = std::fopen(cfg.c_str(), "w");
        if (!f) {
            detail = "cannot write temp config";
            return false;
        }
        std::fputs("nu = 1.0\nkernel.kind = explicit\n"
                   "kernel.weights = 0.5\nmark.kind = constant\n"
                   "mark.c = 1.0\n",
                   f);
        std::fclose(f);
    }
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "2", "8"}) {
        setenv("HAWKES_LDP_THREADS", workers, 1);
        const std::string out = cfg + ".workers" + workers + ".csv";
        const int code = hawkes::run({"validate", cfg, "--paths", "4000",
                                      "--horizon", "80", "--seed", "11",
                                      "--levels", "2.6", "--out", out});
        if (code != 0) {
            detail = "validate exited with code " + std::to_string(code);
            unsetenv("HAWKES_LDP_THREADS");
            return false;
        }
        std::FILE* f = std::fopen(out.c_str(), "rb");
        std::string body;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) {
            body.append(buf, got);
        }
        std::fclose(f);
        outputs.push_back(body);
    }
    unsetenv("HAWKES_LDP_THREADS");
    if (outputs[0].empty() || outputs[0] != outputs[1] ||
        outputs[0] != outputs[2]) {
        detail = "outputs differ across worker counts";
        return false;
    }
    detail = "identical across workers {1,2,8}";
    return true;
}

} // namespace

int main() {
    run_criterion(1, "poisson reduction of the CGF and rate function",
                  poisson_reduction);
    run_criterion(2, "critical exponent for unit constant marks",
                  unmarked_critical_exponent);
    run_criterion(3, "finite-horizon recursion vs exhaustive enumeration",
                  recursion_vs_brute_force);
    run_criterion(4, "finite-horizon recursion vs Monte Carlo",
                  recursion_vs_monte_carlo);
    run_criterion(5, "finite-horizon CGF converges to the limit",
                  limit_convergence);
    run_criterion(6, "LLN mean and CLT variance at simulation scale",
                  lln_clt);
    run_criterion(7, "rate function properties and duality",
                  rate_function_properties);
    run_criterion(8, "analytic slopes vs finite differences",
                  gradient_checks);
    run_criterion(9, "tail probability implies the rate function",
                  ldp_tail_check);
    run_criterion(10, "validate output is worker-count invariant",
                  determinism);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
