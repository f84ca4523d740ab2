#pragma once

#include "hawkes/process.hpp"

namespace hawkes {

enum class Observable { count, mark_sum };

// Limiting CGF at one theta: gamma = nu * (x_star - 1) with x_star the
// minimal root of the fixed-point equation.
struct CgfSolution {
    double theta;
    double x_star;
    double gamma;
    double gamma_prime; // +inf when theta sits at the critical point
    int iterations;
    double residual;
};

// Tangency point (theta_c, x_c) past which the limiting CGF is +inf.
struct CriticalPoint {
    double theta_c;
    double x_c;
    Observable which;
    double residual_fixed_point;
    double residual_tangency;
    bool degenerate;     // no self-excitation: theta_c = +inf sentinel
    bool domain_limited; // mark MGF domain ended before a tangency
};

// (1/t) log E[e^{theta N_t}] via the exact finite-horizon recursion.
double finite_time_cgf_n(const ProcessParams& params, double theta, long t);

// (1/t) log E[e^{theta L_t}], same scheme for the mark sum.
double finite_time_cgf_l(const ProcessParams& params, double theta, long t);

CriticalPoint critical_point_n(const ProcessParams& params);
CriticalPoint critical_point_l(const ProcessParams& params);

// Limiting CGF values; theta may equal theta_c, where x_star = x_c and
// gamma_prime is reported as +inf.
CgfSolution gamma_n(const ProcessParams& params, double theta);
CgfSolution gamma_l(const ProcessParams& params, double theta);

// Slopes by implicit differentiation; require theta strictly below the
// critical point.
double gamma_prime_n(const ProcessParams& params, double theta);
double gamma_prime_l(const ProcessParams& params, double theta);

// Cross-check mode: plain fixed-point iteration from the natural start
// value, mirroring the finite-horizon recursion.
double fixed_point_x_n(const ProcessParams& params, double theta,
                       int max_iter = 200000, double tol = 1e-13);
double fixed_point_x_l(const ProcessParams& params, double theta,
                       int max_iter = 200000, double tol = 1e-13);

} // namespace hawkes
