#pragma once

#include "hawkes/process.hpp"

namespace hawkes {

// Limits of N_t/t and L_t/t.
double lln_mean_n(const ProcessParams& params);
double lln_mean_l(const ProcessParams& params);

// Limiting variances of (N_t - mu_N t)/sqrt(t) and (L_t - mu_L t)/sqrt(t).
double clt_var_n(const ProcessParams& params);
double clt_var_l(const ProcessParams& params);

} // namespace hawkes
