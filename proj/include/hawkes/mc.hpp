#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hawkes/cgf.hpp"
#include "hawkes/process.hpp"

namespace hawkes {

struct ValueWithError {
    double value;
    double std_err;
};

struct CgfEstimate {
    double theta;
    double estimate;
    double std_err;
};

struct TailEstimate {
    double level;
    double p_hat;
    double ci_low;  // Wilson 95%
    double ci_high;
    double implied_rate; // -(1/t) log p_hat; +inf when zero_hits
    bool zero_hits;
};

struct McSummary {
    long n_paths;
    long horizon;
    std::uint64_t master_seed;
    ValueWithError mean_n_over_t;
    ValueWithError mean_l_over_t;
    ValueWithError var_n_clt_scaled;
    ValueWithError var_l_clt_scaled;
    std::vector<CgfEstimate> empirical_cgf;
    std::vector<TailEstimate> tail_estimates;
};

// Terminal (N_t, L_t) for n_paths independent paths, path i drawn from
// substream (master_seed, i). Contents are independent of worker count.
struct EndpointSample {
    long n_paths;
    long horizon;
    std::uint64_t master_seed;
    std::vector<double> n_final;
    std::vector<double> l_final;
};

// workers <= 0 resolves from HAWKES_LDP_THREADS, then hardware.
EndpointSample sample_endpoints(const ProcessParams& params, long horizon,
                                long n_paths, std::uint64_t master_seed,
                                int workers = 0);

McSummary estimate_limits(const ProcessParams& params, long horizon,
                          long n_paths, std::uint64_t master_seed,
                          int workers = 0);

ValueWithError empirical_cgf(const ProcessParams& params, double theta,
                             long horizon, long n_paths,
                             std::uint64_t master_seed, Observable which,
                             int workers = 0);

TailEstimate tail_probability(const ProcessParams& params, double level,
                              long horizon, long n_paths,
                              std::uint64_t master_seed, Observable which,
                              int workers = 0);

// Variants over an already simulated batch (the CLI simulates once and
// derives every statistic from it).
ValueWithError empirical_cgf_from(const EndpointSample& sample, double theta,
                                  Observable which);
TailEstimate tail_probability_from(const EndpointSample& sample, double level,
                                   Observable which);

// Fixed-shape pairwise reduction; result depends only on the array, not
// on scheduling.
double pairwise_sum(std::span<const double> values);

int resolve_worker_count(int requested);

} // namespace hawkes
