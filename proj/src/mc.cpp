#include "hawkes/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hawkes/errors.hpp"
#include "hawkes/moments.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;

ValueWithError mean_with_error(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

// Sample variance with a normal-theory standard error.
ValueWithError variance_with_error(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {var, var * std::sqrt(2.0 / (n - 1.0))};
}

} // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 32) {
        double acc = 0.0;
        for (double v : values) {
            acc += v;
        }
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) +
           pairwise_sum(values.subspan(half));
}

int resolve_worker_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("HAWKES_LDP_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

EndpointSample sample_endpoints(const ProcessParams& params, long horizon,
                                long n_paths, std::uint64_t master_seed,
                                int workers) {
    if (n_paths < 1) {
        throw std::invalid_argument("n_paths must be >= 1");
    }
    EndpointSample sample;
    sample.n_paths = n_paths;
    sample.horizon = horizon;
    sample.master_seed = master_seed;
    sample.n_final.resize(static_cast<std::size_t>(n_paths));
    sample.l_final.resize(static_cast<std::size_t>(n_paths));

    const int nw = std::min<long>(resolve_worker_count(workers), n_paths);
    const long chunk = (n_paths + nw - 1) / nw;

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nw));
    for (int w = 0; w < nw; ++w) {
        const long begin = static_cast<long>(w) * chunk;
        const long end = std::min(begin + chunk, n_paths);
        pool.emplace_back([&, begin, end] {
            try {
                for (long i = begin; i < end; ++i) {
                    const PathEndpoint e = simulate_endpoint(
                        params, horizon, master_seed,
                        static_cast<std::uint64_t>(i));
                    sample.n_final[static_cast<std::size_t>(i)] = e.n_final;
                    sample.l_final[static_cast<std::size_t>(i)] = e.l_final;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return sample;
}

McSummary estimate_limits(const ProcessParams& params, long horizon,
                          long n_paths, std::uint64_t master_seed,
                          int workers) {
    if (n_paths < 2) {
        throw std::invalid_argument("estimate_limits needs n_paths >= 2");
    }
    const EndpointSample sample =
        sample_endpoints(params, horizon, n_paths, master_seed, workers);

    const double t = static_cast<double>(horizon);
    const double mu_n = lln_mean_n(params);
    const double mu_l = lln_mean_l(params);
    const std::size_t n = sample.n_final.size();

    std::vector<double> scratch(n);

    McSummary summary;
    summary.n_paths = n_paths;
    summary.horizon = horizon;
    summary.master_seed = master_seed;

    for (std::size_t i = 0; i < n; ++i) {
        scratch[i] = sample.n_final[i] / t;
    }
    summary.mean_n_over_t = mean_with_error(scratch);

    for (std::size_t i = 0; i < n; ++i) {
        scratch[i] = sample.l_final[i] / t;
    }
    summary.mean_l_over_t = mean_with_error(scratch);

    const double sqrt_t = std::sqrt(t);
    for (std::size_t i = 0; i < n; ++i) {
        scratch[i] = (sample.n_final[i] - mu_n * t) / sqrt_t;
    }
    summary.var_n_clt_scaled = variance_with_error(scratch);

    for (std::size_t i = 0; i < n; ++i) {
        scratch[i] = (sample.l_final[i] - mu_l * t) / sqrt_t;
    }
    summary.var_l_clt_scaled = variance_with_error(scratch);

    return summary;
}

ValueWithError empirical_cgf_from(const EndpointSample& sample, double theta,
                                  Observable which) {
    const std::vector<double>& totals = which == Observable::count
                                            ? sample.n_final
                                            : sample.l_final;
    const std::size_t n = totals.size();
    const double t = static_cast<double>(sample.horizon);

    double shift = -kInf;
    for (double v : totals) {
        shift = std::max(shift, theta * v);
    }
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
        weights[i] = std::exp(theta * totals[i] - shift);
    }
    const double mean_w = pairwise_sum(weights) / static_cast<double>(n);
    const double estimate = (shift + std::log(mean_w)) / t;
    if (!std::isfinite(estimate)) {
        throw EstimatorDegenerate(
            "empirical CGF underflowed at theta=" + std::to_string(theta));
    }

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = weights[i] - mean_w;
        sq[i] = d * d;
    }
    const double var_w =
        n > 1 ? pairwise_sum(sq) / static_cast<double>(n - 1) : 0.0;
    // delta method for (1/t) log of a sample mean
    const double std_err =
        std::sqrt(var_w / static_cast<double>(n)) / (mean_w * t);
    return {estimate, std_err};
}

ValueWithError empirical_cgf(const ProcessParams& params, double theta,
                             long horizon, long n_paths,
                             std::uint64_t master_seed, Observable which,
                             int workers) {
    const EndpointSample sample =
        sample_endpoints(params, horizon, n_paths, master_seed, workers);
    return empirical_cgf_from(sample, theta, which);
}

TailEstimate tail_probability_from(const EndpointSample& sample, double level,
                                   Observable which) {
    const std::vector<double>& totals = which == Observable::count
                                            ? sample.n_final
                                            : sample.l_final;
    const double t = static_cast<double>(sample.horizon);
    const double n = static_cast<double>(totals.size());

    long hits = 0;
    for (double v : totals) {
        if (v / t >= level) {
            ++hits;
        }
    }
    const double p = static_cast<double>(hits) / n;

    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;

    TailEstimate tail;
    tail.level = level;
    tail.p_hat = p;
    tail.ci_low = std::max(0.0, center - half);
    tail.ci_high = std::min(1.0, center + half);
    tail.zero_hits = hits == 0;
    tail.implied_rate = tail.zero_hits ? kInf : -std::log(p) / t;
    return tail;
}

TailEstimate tail_probability(const ProcessParams& params, double level,
                              long horizon, long n_paths,
                              std::uint64_t master_seed, Observable which,
                              int workers) {
    const EndpointSample sample =
        sample_endpoints(params, horizon, n_paths, master_seed, workers);
    return tail_probability_from(sample, level, which);
}

} // namespace hawkes
